//! `H_1(Σ_G; Z)` with its intersection form and the transvection action of
//! Dehn twists.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

/// Genus of the reference surface. `H_1` has rank `2 * genus`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Genus(pub usize);

impl Genus {
    pub fn rank(self) -> usize {
        2 * self.0
    }
}

impl fmt::Display for Genus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An integer homology class in the basis `a_1..a_G, b_1..b_G`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawClass")]
pub struct HomologyClass {
    genus: usize,
    #[serde(with = "crate::serde_int::vec")]
    coords: Vec<BigInt>,
}

#[derive(Deserialize)]
struct RawClass {
    genus: usize,
    #[serde(with = "crate::serde_int::vec")]
    coords: Vec<BigInt>,
}

impl TryFrom<RawClass> for HomologyClass {
    type Error = Error;
    fn try_from(r: RawClass) -> Result<Self> {
        HomologyClass::from_coords(Genus(r.genus), r.coords)
    }
}

impl HomologyClass {
    pub fn zero(g: Genus) -> Self {
        HomologyClass { genus: g.0, coords: vec![BigInt::zero(); g.rank()] }
    }

    fn basis(g: Genus, idx: usize) -> Self {
        let mut c = Self::zero(g);
        c.coords[idx] = BigInt::one();
        c
    }

    /// The class `a_i`, `1 <= i <= G`.
    pub fn a(g: Genus, i: usize) -> Self {
        assert!((1..=g.0).contains(&i), "a_{i} out of range for genus {g}");
        Self::basis(g, i - 1)
    }

    /// The class `b_i`, `1 <= i <= G`.
    pub fn b(g: Genus, i: usize) -> Self {
        assert!((1..=g.0).contains(&i), "b_{i} out of range for genus {g}");
        Self::basis(g, g.0 + i - 1)
    }

    /// The `k`-th vector of the ordered basis `a_1..a_G, b_1..b_G` (0-based).
    pub fn unit(g: Genus, k: usize) -> Self {
        Self::basis(g, k)
    }

    pub fn from_coords(g: Genus, coords: Vec<BigInt>) -> Result<Self> {
        if coords.len() != g.rank() {
            return Err(Error::DimensionMismatch { expected: g.rank(), got: coords.len() });
        }
        Ok(HomologyClass { genus: g.0, coords })
    }

    pub fn from_i64(g: Genus, coords: &[i64]) -> Result<Self> {
        Self::from_coords(g, coords.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn genus(&self) -> Genus {
        Genus(self.genus)
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<BigInt> {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// gcd of the coordinates (0 for the zero class).
    pub fn content(&self) -> BigInt {
        self.coords.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        HomologyClass { genus: self.genus, coords: self.coords.iter().map(|x| x * k).collect() }
    }

    fn check_genus(&self, other: &Self) -> Result<()> {
        if self.genus != other.genus {
            return Err(Error::GenusMismatch { left: self.genus, right: other.genus });
        }
        Ok(())
    }
}

impl fmt::Debug for HomologyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Prints as a sum of basis names, e.g. `a1 + 2b3 - b4`.
impl fmt::Display for HomologyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = self.genus;
        let mut first = true;
        for (k, x) in self.coords.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let name = if k < g { format!("a{}", k + 1) } else { format!("b{}", k - g + 1) };
            let mag = x.abs();
            let sign = if x.is_negative() { "-" } else { "+" };
            if first {
                if x.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if mag.is_one() {
                write!(f, "{name}")?;
            } else {
                write!(f, "{mag}{name}")?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $op:tt) => {
        impl $tr<&HomologyClass> for &HomologyClass {
            type Output = HomologyClass;
            fn $m(self, rhs: &HomologyClass) -> HomologyClass {
                assert_eq!(self.genus, rhs.genus, "genus mismatch in class arithmetic");
                HomologyClass {
                    genus: self.genus,
                    coords: self.coords.iter().zip(&rhs.coords).map(|(x, y)| x $op y).collect(),
                }
            }
        }
        impl $tr for HomologyClass {
            type Output = HomologyClass;
            fn $m(self, rhs: HomologyClass) -> HomologyClass {
                &self $op &rhs
            }
        }
        impl $tr<&HomologyClass> for HomologyClass {
            type Output = HomologyClass;
            fn $m(self, rhs: &HomologyClass) -> HomologyClass {
                &self $op rhs
            }
        }
    };
}

binop!(Add, add, +);
binop!(Sub, sub, -);

impl Neg for &HomologyClass {
    type Output = HomologyClass;
    fn neg(self) -> HomologyClass {
        HomologyClass { genus: self.genus, coords: self.coords.iter().map(|x| -x).collect() }
    }
}

impl Neg for HomologyClass {
    type Output = HomologyClass;
    fn neg(self) -> HomologyClass {
        -&self
    }
}

/// Algebraic intersection number, `<a_i, b_i> = 1`.
pub fn intersection(u: &HomologyClass, v: &HomologyClass) -> Result<BigInt> {
    u.check_genus(v)?;
    Ok(pairing(u.coords(), v.coords()))
}

pub(crate) fn pairing(u: &[BigInt], v: &[BigInt]) -> BigInt {
    let g = u.len() / 2;
    let mut s = BigInt::zero();
    for i in 0..g {
        if !u[i].is_zero() && !v[g + i].is_zero() {
            s += &u[i] * &v[g + i];
        }
        if !u[g + i].is_zero() && !v[i].is_zero() {
            s -= &u[g + i] * &v[i];
        }
    }
    s
}

/// Exponent of a twist letter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Power {
    Pos,
    Neg,
}

impl Power {
    pub fn sign(self) -> i64 {
        match self {
            Power::Pos => 1,
            Power::Neg => -1,
        }
    }

    pub fn inverse(self) -> Power {
        match self {
            Power::Pos => Power::Neg,
            Power::Neg => Power::Pos,
        }
    }

    pub fn from_sign(s: i64) -> Result<Power> {
        match s {
            1 => Ok(Power::Pos),
            -1 => Ok(Power::Neg),
            _ => Err(Error::InvalidLetter(format!("power must be 1 or -1, got {s}"))),
        }
    }
}

impl Serialize for Power {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_i64(self.sign())
    }
}

impl<'de> Deserialize<'de> for Power {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = i64::deserialize(d)?;
        Power::from_sign(s).map_err(serde::de::Error::custom)
    }
}

/// `T_c^{±1}(x) = x ± <c, x> c`.
pub fn transvection(c: &HomologyClass, power: Power, x: &HomologyClass) -> Result<HomologyClass> {
    c.check_genus(x)?;
    let k = pairing(c.coords(), x.coords());
    if k.is_zero() {
        return Ok(x.clone());
    }
    let k = k * power.sign();
    Ok(x + &c.scale(&k))
}

/// The standard symplectic Gram matrix `J` with `u^T J v = <u, v>`.
pub fn j_matrix(g: Genus) -> IntMatrix {
    let n = g.0;
    let mut j = IntMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        j[(i, n + i)] = BigInt::one();
        j[(n + i, i)] = -BigInt::one();
    }
    j
}

/// An integral symplectic matrix acting on coordinate columns.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SpMap {
    genus: usize,
    matrix: IntMatrix,
}

impl SpMap {
    pub fn identity(g: Genus) -> Self {
        SpMap { genus: g.0, matrix: IntMatrix::identity(g.rank()) }
    }

    /// Validates shape and `M^T J M = J`.
    pub fn from_matrix(g: Genus, matrix: IntMatrix) -> Result<Self> {
        if matrix.rows() != g.rank() || matrix.cols() != g.rank() {
            return Err(Error::InvalidMatrix(format!(
                "expected {0}x{0}, got {1}x{2}",
                g.rank(),
                matrix.rows(),
                matrix.cols()
            )));
        }
        let m = SpMap { genus: g.0, matrix };
        if !m.is_symplectic() {
            return Err(Error::InvalidMatrix("matrix is not symplectic".into()));
        }
        Ok(m)
    }

    pub(crate) fn from_matrix_unchecked(g: Genus, matrix: IntMatrix) -> Self {
        SpMap { genus: g.0, matrix }
    }

    pub fn genus(&self) -> Genus {
        Genus(self.genus)
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &SpMap) -> Result<SpMap> {
        if self.genus != other.genus {
            return Err(Error::GenusMismatch { left: self.genus, right: other.genus });
        }
        Ok(SpMap { genus: self.genus, matrix: &self.matrix * &other.matrix })
    }

    pub fn apply(&self, x: &HomologyClass) -> Result<HomologyClass> {
        if x.genus != self.genus {
            return Err(Error::GenusMismatch { left: self.genus, right: x.genus });
        }
        Ok(HomologyClass { genus: self.genus, coords: self.matrix.mul_vec(x.coords()) })
    }

    /// Inverse computed as `-J M^T J`.
    pub fn inverse(&self) -> SpMap {
        let j = j_matrix(self.genus());
        let inv = (&(&j * &self.matrix.transpose()) * &j).neg();
        SpMap { genus: self.genus, matrix: inv }
    }

    pub fn is_symplectic(&self) -> bool {
        let j = j_matrix(self.genus());
        &(&self.matrix.transpose() * &j) * &self.matrix == j
    }

    pub fn is_identity(&self) -> bool {
        self.matrix.is_identity()
    }

    pub fn det(&self) -> BigInt {
        self.matrix.det()
    }

    pub fn commutes_with(&self, other: &SpMap) -> bool {
        self.genus == other.genus && &self.matrix * &other.matrix == &other.matrix * &self.matrix
    }

    /// Reduction mod `m` (entries in `[0, m)`), row-major.
    pub fn reduce_mod(&self, m: u64) -> Vec<u64> {
        let mb = BigInt::from(m);
        let n = self.genus * 2;
        let mut out = Vec::with_capacity(n * n);
        for i in 0..n {
            for x in self.matrix.row(i) {
                let r = x.mod_floor(&mb);
                out.push(u64::try_from(r).expect("residue fits"));
            }
        }
        out
    }
}

impl fmt::Debug for SpMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SpMap(genus {})\n{}", self.genus, self.matrix)
    }
}

#[derive(Serialize, Deserialize)]
struct RawSpMap {
    genus: usize,
    #[serde(with = "crate::serde_int::mat")]
    matrix: Vec<Vec<BigInt>>,
}

impl Serialize for SpMap {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RawSpMap { genus: self.genus, matrix: self.matrix.to_rows() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for SpMap {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawSpMap::deserialize(d)?;
        let m = IntMatrix::from_rows(raw.matrix).map_err(serde::de::Error::custom)?;
        SpMap::from_matrix(Genus(raw.genus), m).map_err(serde::de::Error::custom)
    }
}

/// Matrix of `T_c^{±1}`. The zero class gives the identity.
pub fn twist_matrix(c: &HomologyClass, power: Power) -> SpMap {
    let g = c.genus;
    let n = 2 * g;
    let mut m = IntMatrix::identity(n);
    // <c, e_j>: -c_{b_k} for e_j = a_k, c_{a_k} for e_j = b_k.
    let pair_with: Vec<BigInt> =
        (0..n).map(|j| if j < g { -&c.coords[g + j] } else { c.coords[j - g].clone() }).collect();
    for i in 0..n {
        if c.coords[i].is_zero() {
            continue;
        }
        for (j, p) in pair_with.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            let v = &c.coords[i] * p;
            match power {
                Power::Pos => m[(i, j)] += v,
                Power::Neg => m[(i, j)] -= v,
            }
        }
    }
    SpMap { genus: g, matrix: m }
}

/// True iff the gcd of the coordinates is 1.
pub fn is_primitive(v: &HomologyClass) -> Result<bool> {
    if v.is_zero() {
        return Err(Error::ZeroClass);
    }
    Ok(v.content().is_one())
}

/// Rational dimension of `ker(M - I)`.
pub fn fixed_subspace_dim(m: &SpMap) -> usize {
    let n = m.genus * 2;
    n - m.matrix.sub(&IntMatrix::identity(n)).rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g2() -> Genus {
        Genus(2)
    }

    #[test]
    fn basis_pairings() {
        let g = g2();
        let one = BigInt::one();
        assert_eq!(intersection(&HomologyClass::a(g, 1), &HomologyClass::b(g, 1)).unwrap(), one);
        assert!(intersection(&HomologyClass::a(g, 1), &HomologyClass::a(g, 2)).unwrap().is_zero());
        assert_eq!(intersection(&HomologyClass::b(g, 2), &HomologyClass::a(g, 2)).unwrap(), -one);
        assert!(matches!(
            intersection(&HomologyClass::a(g, 1), &HomologyClass::a(Genus(3), 1)),
            Err(Error::GenusMismatch { .. })
        ));
    }

    #[test]
    fn inverse_twist_on_b1() {
        let g = Genus(4);
        let b0 = (1..=4).fold(HomologyClass::zero(g), |s, i| s + HomologyClass::a(g, i));
        let b1 = HomologyClass::b(g, 1);
        assert_eq!(intersection(&b0, &b1).unwrap(), BigInt::one());
        assert_eq!(transvection(&b0, Power::Neg, &b1).unwrap(), &b1 - &b0);
    }

    #[test]
    fn twist_fixes_own_class_and_orthogonal_classes() {
        let g = g2();
        let c = HomologyClass::from_i64(g, &[1, 2, -1, 3]).unwrap();
        assert_eq!(transvection(&c, Power::Pos, &c).unwrap(), c);
        let u = HomologyClass::from_i64(g, &[3, 0, 0, 1]).unwrap();
        let w = HomologyClass::from_i64(g, &[-2, 3, 0, 0]).unwrap();
        // <c, w>u - <c, u>w pairs to zero with c
        let fixed = u.scale(&intersection(&c, &w).unwrap()) - w.scale(&intersection(&c, &u).unwrap());
        assert!(!fixed.is_zero());
        assert!(intersection(&c, &fixed).unwrap().is_zero());
        assert_eq!(transvection(&c, Power::Pos, &fixed).unwrap(), fixed);
    }

    #[test]
    fn zero_twist_is_identity() {
        for p in [Power::Pos, Power::Neg] {
            assert!(twist_matrix(&HomologyClass::zero(g2()), p).is_identity());
        }
    }

    #[test]
    fn twist_pair_cancels() {
        let c = HomologyClass::from_i64(g2(), &[1, -2, 0, 5]).unwrap();
        let m = twist_matrix(&c, Power::Pos).compose(&twist_matrix(&c, Power::Neg)).unwrap();
        assert!(m.is_identity());
    }

    #[test]
    fn twist_matrix_columns_match_transvection() {
        let g = g2();
        let c = HomologyClass::from_i64(g, &[2, -1, 1, 3]).unwrap();
        for p in [Power::Pos, Power::Neg] {
            let m = twist_matrix(&c, p);
            for k in 0..4 {
                let e = HomologyClass::unit(g, k);
                let col = HomologyClass::from_coords(g, m.matrix().column(k)).unwrap();
                assert_eq!(col, transvection(&c, p, &e).unwrap());
            }
        }
    }

    #[test]
    fn primitivity() {
        let g = Genus(3);
        assert!(is_primitive(&HomologyClass::a(g, 1)).unwrap());
        let v = HomologyClass::a(g, 1).scale(&BigInt::from(2)) + HomologyClass::b(g, 3).scale(&BigInt::from(2));
        assert!(!is_primitive(&v).unwrap());
        let w = HomologyClass::a(g, 1).scale(&BigInt::from(3)) + HomologyClass::b(g, 1).scale(&BigInt::from(5));
        assert!(is_primitive(&w).unwrap());
        assert_eq!(is_primitive(&HomologyClass::zero(g)), Err(Error::ZeroClass));
    }

    #[test]
    fn fixed_dims() {
        let g = Genus(4);
        assert_eq!(fixed_subspace_dim(&SpMap::identity(g)), 8);
        let minus = SpMap::from_matrix(g, IntMatrix::identity(8).neg()).unwrap();
        assert_eq!(fixed_subspace_dim(&minus), 0);
    }

    #[test]
    fn inverse_is_symplectic_inverse() {
        let c = HomologyClass::from_i64(g2(), &[1, 1, 0, -1]).unwrap();
        let d = HomologyClass::from_i64(g2(), &[0, 1, 2, 1]).unwrap();
        let m = twist_matrix(&c, Power::Pos).compose(&twist_matrix(&d, Power::Neg)).unwrap();
        assert!(m.compose(&m.inverse()).unwrap().is_identity());
        assert_eq!(m.det(), BigInt::one());
    }

    #[test]
    fn json_round_trip() {
        let c = HomologyClass::from_i64(g2(), &[1, -2, 0, 7]).unwrap();
        let s = serde_json::to_string(&c).unwrap();
        assert_eq!(s, r#"{"genus":2,"coords":[1,-2,0,7]}"#);
        assert_eq!(serde_json::from_str::<HomologyClass>(&s).unwrap(), c);
        assert!(serde_json::from_str::<HomologyClass>(r#"{"genus":2,"coords":[1]}"#).is_err());
        let m = twist_matrix(&c, Power::Pos);
        let back: SpMap = serde_json::from_str(&serde_json::to_string(&m).unwrap()).unwrap();
        assert_eq!(back, m);
    }
}
