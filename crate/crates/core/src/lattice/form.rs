use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::hnf::Sublattice;
use super::snf::smith_normal_form;
use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

/// A free abelian group with a symmetric integer bilinear form, given by its
/// Gram matrix in a chosen basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntLattice {
    gram: IntMatrix,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Signature {
    pub b_plus: usize,
    pub b_minus: usize,
    pub b_zero: usize,
}

impl Signature {
    pub fn sigma(&self) -> i64 {
        self.b_plus as i64 - self.b_minus as i64
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl std::fmt::Display for Parity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

impl IntLattice {
    pub fn new(gram: IntMatrix) -> Result<Self> {
        if !gram.is_square() || gram.transpose() != gram {
            return Err(Error::InvalidMatrix("Gram matrix must be square and symmetric".into()));
        }
        Ok(IntLattice { gram })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self> {
        Self::new(IntMatrix::from_i64_rows(rows))
    }

    /// Diagonal form `<d_1> ⊕ ... ⊕ <d_n>`.
    pub fn diagonal(ds: &[i64]) -> Self {
        let mut g = IntMatrix::zeros(ds.len(), ds.len());
        for (i, &d) in ds.iter().enumerate() {
            g[(i, i)] = BigInt::from(d);
        }
        IntLattice { gram: g }
    }

    /// The hyperbolic plane `U`.
    pub fn hyperbolic() -> Self {
        IntLattice { gram: IntMatrix::from_i64_rows(&[&[0, 1], &[1, 0]]) }
    }

    pub fn direct_sum(&self, other: &IntLattice) -> IntLattice {
        let (n, m) = (self.rank(), other.rank());
        let mut g = IntMatrix::zeros(n + m, n + m);
        for i in 0..n {
            for j in 0..n {
                g[(i, j)] = self.gram[(i, j)].clone();
            }
        }
        for i in 0..m {
            for j in 0..m {
                g[(n + i, n + j)] = other.gram[(i, j)].clone();
            }
        }
        IntLattice { gram: g }
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn det(&self) -> BigInt {
        self.gram.det()
    }

    pub fn is_unimodular(&self) -> bool {
        self.det().abs().is_one()
    }

    pub fn pair(&self, x: &[BigInt], y: &[BigInt]) -> BigInt {
        x.iter().zip(self.gram.mul_vec(y)).map(|(a, b)| a * b).sum()
    }

    /// Inertia of the form over `Q`, by symmetric Gaussian elimination.
    #[allow(clippy::needless_range_loop)]
    pub fn signature(&self) -> Signature {
        let n = self.rank();
        let mut a: Vec<Vec<BigRational>> = (0..n)
            .map(|i| (0..n).map(|j| BigRational::from_integer(self.gram[(i, j)].clone())).collect())
            .collect();
        let mut sig = Signature { b_plus: 0, b_minus: 0, b_zero: 0 };
        let mut k = 0;
        while k < n {
            let diag = (k..n).find(|&i| !a[i][i].is_zero());
            let p = match diag {
                Some(p) => p,
                None => {
                    let off = (k..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).find(|&(i, j)| !a[i][j].is_zero());
                    let Some((i, j)) = off else {
                        sig.b_zero += n - k;
                        break;
                    };
                    // e_i -> e_i + e_j makes the diagonal entry 2 a_ij
                    for l in 0..n {
                        let t = a[j][l].clone();
                        a[i][l] += t;
                    }
                    for l in 0..n {
                        let t = a[l][j].clone();
                        a[l][i] += t;
                    }
                    i
                }
            };
            a.swap(k, p);
            for row in a.iter_mut() {
                row.swap(k, p);
            }
            let piv = a[k][k].clone();
            if piv.is_positive() {
                sig.b_plus += 1;
            } else {
                sig.b_minus += 1;
            }
            for i in k + 1..n {
                if a[i][k].is_zero() {
                    continue;
                }
                let f = &a[i][k] / &piv;
                for j in k..n {
                    let t = &f * &a[k][j];
                    a[i][j] -= t;
                }
            }
            for i in k + 1..n {
                a[k][i] = BigRational::zero();
                a[i][k] = BigRational::zero();
            }
            k += 1;
        }
        sig
    }

    /// Even iff every diagonal Gram entry is even. Evenness does not depend
    /// on the basis since `Q(x + y) = Q(x) + Q(y) + 2 x.y`.
    pub fn parity(&self) -> Parity {
        let two = BigInt::from(2);
        if (0..self.rank()).all(|i| (&self.gram[(i, i)] % &two).is_zero()) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// Gram matrix of the given vectors.
    pub fn restrict(&self, vectors: &[Vec<BigInt>]) -> IntLattice {
        let k = vectors.len();
        let mut g = IntMatrix::zeros(k, k);
        for i in 0..k {
            for j in 0..k {
                g[(i, j)] = self.pair(&vectors[i], &vectors[j]);
            }
        }
        IntLattice { gram: g }
    }
}

/// Orthogonal complement of a unimodular span, with its induced form.
///
/// Because the span is unimodular the ambient lattice splits as
/// `span ⊕ complement`; rank and determinant are cross-checked against that.
pub fn orthogonal_complement(l: &IntLattice, classes: &[Vec<BigInt>]) -> Result<(Sublattice, IntLattice)> {
    let n = l.rank();
    if let Some(c) = classes.iter().find(|c| c.len() != n) {
        return Err(Error::DimensionMismatch { expected: n, got: c.len() });
    }
    let span = l.restrict(classes);
    let span_det = span.det();
    if !span_det.abs().is_one() {
        return Err(Error::NotUnimodular { det: span_det.to_string() });
    }
    let k = classes.len();
    let mut cg = IntMatrix::zeros(k, n);
    for (i, c) in classes.iter().enumerate() {
        let row = l.gram.transpose().mul_vec(c);
        for (j, x) in row.into_iter().enumerate() {
            cg[(i, j)] = x;
        }
    }
    let snf = smith_normal_form(&cg);
    let r = snf.rank();
    let kernel = (r..n).map(|j| snf.v.column(j));
    let basis = Sublattice::from_vectors(n, kernel)?;
    let comp = l.restrict(basis.basis());
    if basis.rank() + k != n {
        return Err(Error::InvalidMatrix(format!("complement rank {} + {k} != {n}", basis.rank())));
    }
    if span_det * comp.det() != l.det() {
        return Err(Error::InvalidMatrix("determinant bookkeeping failed for the orthogonal splitting".into()));
    }
    Ok((basis, comp))
}

/// All tuples `(x_1..x_k)` with coordinates in `[-bound, bound]` and
/// `x_i . x_j = pattern[i][j]`, in lexicographic order.
pub fn enumerate_pattern(l: &IntLattice, pattern: &IntMatrix, bound: i64) -> Result<Vec<Vec<Vec<BigInt>>>> {
    if bound < 1 {
        return Err(Error::Precondition("enumeration bound must be at least 1".into()));
    }
    if !pattern.is_square() || pattern.transpose() != *pattern {
        return Err(Error::InvalidMatrix("pattern must be a symmetric matrix".into()));
    }
    let to_i64 = |x: &BigInt| x.to_i64().ok_or_else(|| Error::Precondition("entry exceeds 64 bits".into()));
    let n = l.rank();
    let k = pattern.rows();
    let gram: Vec<Vec<i64>> = (0..n).map(|i| l.gram.row(i).iter().map(to_i64).collect()).collect::<Result<_>>()?;
    let pat: Vec<Vec<i64>> = (0..k).map(|i| pattern.row(i).iter().map(to_i64).collect()).collect::<Result<_>>()?;

    let pair = |x: &[i64], y: &[i64]| -> i64 {
        let mut s = 0i64;
        for i in 0..n {
            if x[i] == 0 {
                continue;
            }
            for j in 0..n {
                s += x[i] * gram[i][j] * y[j];
            }
        }
        s
    };

    let side = (2 * bound + 1) as usize;
    let total = side.checked_pow(n as u32).ok_or_else(|| Error::Precondition("search box too large".into()))?;
    let box_vec = |mut idx: usize| -> Vec<i64> {
        let mut v = vec![0i64; n];
        for slot in v.iter_mut().rev() {
            *slot = (idx % side) as i64 - bound;
            idx /= side;
        }
        v
    };
    let candidates: Vec<Vec<Vec<i64>>> = (0..k)
        .map(|i| {
            (0..total)
                .into_par_iter()
                .map(box_vec)
                .filter(|v| pair(v, v) == pat[i][i])
                .collect()
        })
        .collect();

    fn extend(
        depth: usize,
        acc: &mut Vec<Vec<i64>>,
        cands: &[Vec<Vec<i64>>],
        pat: &[Vec<i64>],
        pair: &dyn Fn(&[i64], &[i64]) -> i64,
        out: &mut Vec<Vec<Vec<i64>>>,
    ) {
        if depth == cands.len() {
            out.push(acc.clone());
            return;
        }
        for c in &cands[depth] {
            if (0..depth).all(|i| pair(&acc[i], c) == pat[i][depth]) {
                acc.push(c.clone());
                extend(depth + 1, acc, cands, pat, pair, out);
                acc.pop();
            }
        }
    }

    if k == 0 {
        return Ok(vec![Vec::new()]);
    }
    let tuples: Vec<Vec<Vec<i64>>> = candidates[0]
        .par_iter()
        .flat_map_iter(|first| {
            let mut out = Vec::new();
            let mut acc = vec![first.clone()];
            extend(1, &mut acc, &candidates, &pat, &pair, &mut out);
            out
        })
        .collect();
    Ok(tuples
        .into_iter()
        .map(|t| t.into_iter().map(|v| v.into_iter().map(BigInt::from).collect()).collect())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn signatures() {
        let u = IntLattice::hyperbolic();
        assert_eq!(u.signature(), Signature { b_plus: 1, b_minus: 1, b_zero: 0 });
        let d = IntLattice::diagonal(&[-1, -1, -1, -1]);
        assert_eq!(d.signature(), Signature { b_plus: 0, b_minus: 4, b_zero: 0 });
        let x = u.direct_sum(&d);
        assert_eq!(x.signature(), Signature { b_plus: 1, b_minus: 5, b_zero: 0 });
        assert_eq!(x.signature().sigma(), -4);
        let degenerate = IntLattice::from_i64_rows(&[&[1, 1], &[1, 1]]).unwrap();
        assert_eq!(degenerate.signature(), Signature { b_plus: 1, b_minus: 0, b_zero: 1 });
    }

    #[test]
    fn parities() {
        assert_eq!(IntLattice::hyperbolic().parity(), Parity::Even);
        assert_eq!(IntLattice::diagonal(&[-1]).parity(), Parity::Odd);
    }

    #[test]
    fn complement_of_exceptional_class() {
        let l = IntLattice::diagonal(&[1, -1]);
        let (basis, comp) = orthogonal_complement(&l, &[v(&[0, 1])]).unwrap();
        assert_eq!(basis.basis(), &[v(&[1, 0])]);
        assert_eq!(comp, IntLattice::diagonal(&[1]));
    }

    #[test]
    fn complement_rejects_non_unimodular_span() {
        let l = IntLattice::diagonal(&[1, -1]);
        assert!(matches!(orthogonal_complement(&l, &[v(&[0, 2])]), Err(Error::NotUnimodular { .. })));
    }

    #[test]
    fn even_lattice_has_no_odd_vectors() {
        let u = IntLattice::hyperbolic();
        let pat = IntMatrix::from_i64_rows(&[&[1]]);
        assert!(enumerate_pattern(&u, &pat, 4).unwrap().is_empty());
        assert!(enumerate_pattern(&u, &pat, 0).is_err());
    }
}
