use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A subgroup of `Z^dim` stored by its row-style Hermite normal form:
/// rows sorted by pivot column, pivots positive, and every entry above a
/// pivot reduced into `[0, pivot)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Sublattice {
    dim: usize,
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

fn leading(v: &[BigInt]) -> Option<usize> {
    v.iter().position(|x| !x.is_zero())
}

fn axpy(dst: &mut [BigInt], q: &BigInt, src: &[BigInt], from: usize) {
    for j in from..dst.len() {
        if !src[j].is_zero() {
            dst[j] -= q * &src[j];
        }
    }
}

impl Sublattice {
    pub fn zero(dim: usize) -> Self {
        Sublattice { dim, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(dim: usize) -> Self {
        let rows = (0..dim)
            .map(|i| {
                let mut r = vec![BigInt::zero(); dim];
                r[i] = BigInt::one();
                r
            })
            .collect();
        Sublattice { dim, rows, pivots: (0..dim).collect() }
    }

    pub fn from_vectors<I>(dim: usize, vectors: I) -> Result<Self>
    where
        I: IntoIterator<Item = Vec<BigInt>>,
    {
        let mut l = Self::zero(dim);
        for v in vectors {
            if v.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: v.len() });
            }
            l.insert_unreduced(v);
        }
        l.normalize();
        Ok(l)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    /// Remainder of `v` after reduction by the basis; zero iff `v` is in the lattice.
    pub fn reduce(&self, v: &[BigInt]) -> Vec<BigInt> {
        let mut r = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if r[p].is_zero() {
                continue;
            }
            let q = r[p].div_floor(&row[p]);
            if !q.is_zero() {
                axpy(&mut r, &q, row, p);
            }
        }
        r
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        v.len() == self.dim && self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Adds `v` to the lattice; returns whether the lattice grew.
    pub fn insert(&mut self, v: &[BigInt]) -> bool {
        let grew = self.insert_unreduced(v.to_vec());
        if grew {
            self.normalize();
        }
        grew
    }

    /// Echelon insertion without the final above-pivot reduction.
    pub(crate) fn insert_unreduced(&mut self, v: Vec<BigInt>) -> bool {
        let mut v = self.reduce(&v);
        let mut grew = false;
        loop {
            let Some(c) = leading(&v) else {
                return grew;
            };
            grew = true;
            match self.pivots.binary_search(&c) {
                Err(pos) => {
                    if v[c].is_negative() {
                        v.iter_mut().for_each(|x| *x = -&*x);
                    }
                    self.rows.insert(pos, v);
                    self.pivots.insert(pos, c);
                    return true;
                }
                Ok(k) => {
                    let row = std::mem::take(&mut self.rows[k]);
                    let (a, b) = (&row[c], &v[c]);
                    let e = a.extended_gcd(b);
                    let (g, s, t) = (e.gcd, e.x, e.y);
                    let (ag, bg) = (a / &g, b / &g);
                    let mut new_row = vec![BigInt::zero(); self.dim];
                    let mut rest = vec![BigInt::zero(); self.dim];
                    for j in c..self.dim {
                        new_row[j] = &s * &row[j] + &t * &v[j];
                        rest[j] = &bg * &row[j] - &ag * &v[j];
                    }
                    if new_row[c].is_negative() {
                        new_row.iter_mut().for_each(|x| *x = -&*x);
                    }
                    self.rows[k] = new_row;
                    v = self.reduce(&rest);
                }
            }
        }
    }

    /// Reduces every above-pivot entry into `[0, pivot)`.
    pub(crate) fn normalize(&mut self) {
        let n = self.rows.len();
        for i in (0..n).rev() {
            for j in i + 1..n {
                let p = self.pivots[j];
                let q = self.rows[i][p].div_floor(&self.rows[j][p]);
                if !q.is_zero() {
                    let (head, tail) = self.rows.split_at_mut(j);
                    axpy(&mut head[i], &q, &tail[0], p);
                }
            }
        }
    }

    /// gcd of all basis entries; 0 for the zero lattice.
    pub fn content(&self) -> BigInt {
        content(&self.rows)
    }

    pub fn scale(&self, k: &BigInt) -> Sublattice {
        if k.is_zero() {
            return Sublattice::zero(self.dim);
        }
        Sublattice::from_vectors(self.dim, self.rows.iter().map(|r| r.iter().map(|x| x * k).collect())).expect("same dim")
    }

    /// Product of the pivots when the lattice has full rank, else 0.
    pub fn index(&self) -> BigInt {
        if self.rank() < self.dim {
            return BigInt::zero();
        }
        self.rows.iter().zip(&self.pivots).map(|(r, &p)| r[p].clone()).product()
    }

    /// Coefficients expressing `v` in the basis, when `v` lies in the lattice.
    pub fn coefficients(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        let mut r = v.to_vec();
        let mut out = Vec::with_capacity(self.rows.len());
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if r[..p].iter().any(|x| !x.is_zero()) {
                return None;
            }
            let (q, rem) = r[p].div_rem(&row[p]);
            if !rem.is_zero() {
                return None;
            }
            axpy(&mut r, &q, row, p);
            out.push(q);
        }
        r.iter().all(Zero::is_zero).then_some(out)
    }
}

/// gcd of all entries of the given vectors.
pub fn content(vectors: &[Vec<BigInt>]) -> BigInt {
    let mut g = BigInt::zero();
    for v in vectors {
        for x in v {
            if !x.is_zero() {
                g = g.gcd(x);
                if g.is_one() {
                    return g;
                }
            }
        }
    }
    g
}

#[derive(Serialize, Deserialize)]
struct RawSublattice {
    dim: usize,
    #[serde(with = "crate::serde_int::mat")]
    basis: Vec<Vec<BigInt>>,
}

impl Serialize for Sublattice {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RawSublattice { dim: self.dim, basis: self.rows.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Sublattice {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawSublattice::deserialize(d)?;
        Sublattice::from_vectors(raw.dim, raw.basis).map_err(serde::de::Error::custom)
    }
}
