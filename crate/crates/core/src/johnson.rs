//! Third exterior power of `H`, the Johnson target `(∧³H)/H`, and the
//! Johnson homomorphism on words of bounding-pair maps.
//!
//! `∧³H` uses the interleaved basis `γ_{2i-1} = a_i`, `γ_{2i} = b_i`; triples
//! `i < j < k` are ordered lexicographically. The quotient by
//! `ω ∧ H` (`ω = Σ γ_{2i-1} ∧ γ_{2i}`) is coordinatized by the triples that
//! remain after dropping `(i, 2G-1, 2G)`, `(1, 2, 2G-1)` and `(1, 2, 2G)`;
//! those retained triples form a Z-basis of the quotient.

use std::collections::{HashMap, VecDeque};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::homology::{intersection, is_primitive, Genus, HomologyClass, Power, SpMap};
use crate::lattice::Sublattice;
use crate::word::{TwistLetter, Word};

/// Index tables for one genus.
#[derive(Debug)]
pub struct WedgeTables {
    genus: usize,
    triples: Vec<[usize; 3]>,
    index: Vec<usize>,
    /// Position in the quotient basis, or `None` for a dropped triple.
    quotient_pos: Vec<Option<usize>>,
    retained: Vec<usize>,
    /// Expansion of each dropped triple in the quotient basis.
    rules: Vec<Vec<(usize, i64)>>,
}

const NONE: usize = usize::MAX;

impl WedgeTables {
    fn build(genus: usize) -> Self {
        let n = 2 * genus;
        let mut triples = Vec::new();
        let mut index = vec![NONE; n * n * n];
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    index[(i * n + j) * n + k] = triples.len();
                    triples.push([i, j, k]);
                }
            }
        }
        let dropped = |t: &[usize; 3]| -> bool {
            n >= 2 && ((t[1] == n - 2 && t[2] == n - 1) || (t[0] == 0 && t[1] == 1 && (t[2] == n - 2 || t[2] == n - 1)))
        };
        let mut quotient_pos = vec![None; triples.len()];
        let mut retained = Vec::new();
        for (idx, t) in triples.iter().enumerate() {
            if !dropped(t) {
                quotient_pos[idx] = Some(retained.len());
                retained.push(idx);
            }
        }
        let mut tables = WedgeTables { genus, triples, index, quotient_pos, retained, rules: Vec::new() };
        let rules = (0..tables.triples.len())
            .map(|idx| if tables.quotient_pos[idx].is_some() { Vec::new() } else { tables.rule_for(idx) })
            .collect();
        tables.rules = rules;
        tables
    }

    /// Dropped triple rewritten using `ω ∧ γ_i ≡ 0`.
    fn rule_for(&self, idx: usize) -> Vec<(usize, i64)> {
        let n = 2 * self.genus;
        let g = self.genus;
        let [i, j, k] = self.triples[idx];
        let mut acc: HashMap<usize, i64> = HashMap::new();
        let mut push = |a: usize, b: usize, c: usize, coeff: i64| {
            if let Some((t, s)) = self.sorted(a, b, c) {
                let pos = self.quotient_pos[t].expect("rule terms are retained triples");
                *acc.entry(pos).or_insert(0) += s * coeff;
            }
        };
        if j == n - 2 && k == n - 1 {
            // (i, 2G-1, 2G) = -Σ_{l<G} γ_{2l-1} γ_{2l} γ_i
            for l in 0..g - 1 {
                push(2 * l, 2 * l + 1, i, -1);
            }
        } else {
            // (1, 2, x) = -Σ_{2<=l<G} γ_{2l-1} γ_{2l} γ_x, x ∈ {2G-1, 2G}
            for l in 1..g - 1 {
                push(2 * l, 2 * l + 1, k, -1);
            }
        }
        let mut v: Vec<(usize, i64)> = acc.into_iter().filter(|&(_, c)| c != 0).collect();
        v.sort_unstable();
        v
    }

    /// Sorted triple index and permutation sign; `None` if indices repeat.
    fn sorted(&self, a: usize, b: usize, c: usize) -> Option<(usize, i64)> {
        if a == b || b == c || a == c {
            return None;
        }
        let mut t = [a, b, c];
        let mut sign = 1;
        for p in 0..3 {
            for q in 0..2 - p {
                if t[q] > t[q + 1] {
                    t.swap(q, q + 1);
                    sign = -sign;
                }
            }
        }
        let n = 2 * self.genus;
        Some((self.index[(t[0] * n + t[1]) * n + t[2]], sign))
    }

    pub fn genus(&self) -> Genus {
        Genus(self.genus)
    }

    pub fn wedge_dim(&self) -> usize {
        self.triples.len()
    }

    pub fn quotient_dim(&self) -> usize {
        self.retained.len()
    }

    /// 1-based `γ` indices of each `∧³` coordinate.
    pub fn triples(&self) -> Vec<[usize; 3]> {
        self.triples.iter().map(|t| [t[0] + 1, t[1] + 1, t[2] + 1]).collect()
    }

    /// 1-based `γ` indices of each quotient coordinate.
    pub fn quotient_triples(&self) -> Vec<[usize; 3]> {
        self.retained.iter().map(|&i| {
            let t = self.triples[i];
            [t[0] + 1, t[1] + 1, t[2] + 1]
        })
        .collect()
    }
}

/// Shared tables for genus `g`.
pub fn tables(g: Genus) -> Arc<WedgeTables> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<WedgeTables>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut map = cache.lock().expect("tables cache poisoned");
    map.entry(g.0).or_insert_with(|| Arc::new(WedgeTables::build(g.0))).clone()
}

/// Position of a homology basis vector in the interleaved `γ` basis.
fn gamma_of_ab(genus: usize, ab: usize) -> usize {
    if ab < genus {
        2 * ab
    } else {
        2 * (ab - genus) + 1
    }
}

fn ab_of_gamma(genus: usize, gamma: usize) -> usize {
    if gamma.is_multiple_of(2) {
        gamma / 2
    } else {
        genus + gamma / 2
    }
}

/// Sparse `γ`-coordinates of a class.
fn gamma_sparse(c: &HomologyClass) -> Vec<(usize, BigInt)> {
    let g = c.genus().0;
    let mut v: Vec<(usize, BigInt)> = c
        .coords()
        .iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(k, x)| (gamma_of_ab(g, k), x.clone()))
        .collect();
    v.sort_by_key(|p| p.0);
    v
}

/// An element of `∧³H`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Wedge3 {
    pub genus: Genus,
    #[serde(with = "crate::serde_int::vec")]
    pub coords: Vec<BigInt>,
}

/// An element of `(∧³H)/H` in the retained-triple basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QuotientClass {
    pub genus: Genus,
    #[serde(with = "crate::serde_int::vec")]
    pub coords: Vec<BigInt>,
}

macro_rules! linear_ops {
    ($t:ident) => {
        impl $t {
            pub fn is_zero(&self) -> bool {
                self.coords.iter().all(Zero::is_zero)
            }

            pub fn scale(&self, k: &BigInt) -> Self {
                $t { genus: self.genus, coords: self.coords.iter().map(|x| x * k).collect() }
            }

            pub fn add(&self, other: &Self) -> Self {
                assert_eq!(self.genus, other.genus, "genus mismatch");
                $t { genus: self.genus, coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect() }
            }

            pub fn sub(&self, other: &Self) -> Self {
                assert_eq!(self.genus, other.genus, "genus mismatch");
                $t { genus: self.genus, coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect() }
            }

            /// gcd of the coordinates.
            pub fn content(&self) -> BigInt {
                self.coords.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
            }
        }
    };
}

linear_ops!(Wedge3);
linear_ops!(QuotientClass);

impl Wedge3 {
    pub fn zero(g: Genus) -> Self {
        Wedge3 { genus: g, coords: vec![BigInt::zero(); tables(g).wedge_dim()] }
    }

    /// `x ∧ y ∧ z`.
    pub fn wedge(x: &HomologyClass, y: &HomologyClass, z: &HomologyClass) -> Result<Self> {
        let g = x.genus();
        for c in [y, z] {
            if c.genus() != g {
                return Err(Error::GenusMismatch { left: g.0, right: c.genus().0 });
            }
        }
        let t = tables(g);
        let mut coords = vec![BigInt::zero(); t.wedge_dim()];
        wedge_sparse_into(&t, &gamma_sparse(x), &gamma_sparse(y), &gamma_sparse(z), &BigInt::one(), &mut coords);
        Ok(Wedge3 { genus: g, coords })
    }

    /// The coordinate vector of `γ_i ∧ γ_j ∧ γ_k` (1-based, any order).
    pub fn basis_triple(g: Genus, i: usize, j: usize, k: usize) -> Self {
        let t = tables(g);
        let mut w = Wedge3::zero(g);
        if let Some((idx, s)) = t.sorted(i - 1, j - 1, k - 1) {
            w.coords[idx] = BigInt::from(s);
        }
        w
    }
}

impl QuotientClass {
    pub fn zero(g: Genus) -> Self {
        QuotientClass { genus: g, coords: vec![BigInt::zero(); tables(g).quotient_dim()] }
    }

    pub fn from_coords(g: Genus, coords: Vec<BigInt>) -> Result<Self> {
        let d = tables(g).quotient_dim();
        if coords.len() != d {
            return Err(Error::DimensionMismatch { expected: d, got: coords.len() });
        }
        Ok(QuotientClass { genus: g, coords })
    }

    /// The representative in `∧³H` supported on retained triples.
    pub fn lift(&self) -> Wedge3 {
        let t = tables(self.genus);
        let mut w = Wedge3::zero(self.genus);
        for (pos, &idx) in t.retained.iter().enumerate() {
            w.coords[idx] = self.coords[pos].clone();
        }
        w
    }
}

fn wedge_sparse_into(
    t: &WedgeTables,
    x: &[(usize, BigInt)],
    y: &[(usize, BigInt)],
    z: &[(usize, BigInt)],
    scale: &BigInt,
    out: &mut [BigInt],
) {
    for (p, xp) in x {
        for (q, yq) in y {
            if p == q {
                continue;
            }
            let xy = xp * yq;
            for (r, zr) in z {
                if let Some((idx, s)) = t.sorted(*p, *q, *r) {
                    let v = &xy * zr * scale;
                    if s > 0 {
                        out[idx] += v;
                    } else {
                        out[idx] -= v;
                    }
                }
            }
        }
    }
}

/// `c ↦ ω ∧ c`.
pub fn embed_h(c: &HomologyClass) -> Wedge3 {
    let g = c.genus();
    let t = tables(g);
    let mut coords = vec![BigInt::zero(); t.wedge_dim()];
    let cs = gamma_sparse(c);
    let one = BigInt::one();
    for l in 0..g.0 {
        let a = [(2 * l, one.clone())];
        let b = [(2 * l + 1, one.clone())];
        wedge_sparse_into(&t, &a, &b, &cs, &one, &mut coords);
    }
    Wedge3 { genus: g, coords }
}

/// Projection `∧³H → (∧³H)/H` in the retained-triple basis.
pub fn reduce_to_quotient(w: &Wedge3) -> QuotientClass {
    let t = tables(w.genus);
    let mut q = vec![BigInt::zero(); t.quotient_dim()];
    for (idx, x) in w.coords.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        match t.quotient_pos[idx] {
            Some(p) => q[p] += x,
            None => {
                for &(p, c) in &t.rules[idx] {
                    q[p] += x * c;
                }
            }
        }
    }
    QuotientClass { genus: w.genus, coords: q }
}

/// Images of the `γ` basis vectors under `M`, in sparse `γ`-coordinates.
fn gamma_images(m: &SpMap) -> Vec<Vec<(usize, BigInt)>> {
    let g = m.genus().0;
    (0..2 * g)
        .map(|gamma| {
            let col = m.matrix().column(ab_of_gamma(g, gamma));
            let mut v: Vec<(usize, BigInt)> =
                col.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(k, x)| (gamma_of_ab(g, k), x)).collect();
            v.sort_by_key(|p| p.0);
            v
        })
        .collect()
}

/// Action of `M` on `∧³H`.
pub fn sp_action_wedge(m: &SpMap, w: &Wedge3) -> Result<Wedge3> {
    if m.genus() != w.genus {
        return Err(Error::GenusMismatch { left: m.genus().0, right: w.genus.0 });
    }
    let t = tables(w.genus);
    let img = gamma_images(m);
    let mut out = vec![BigInt::zero(); t.wedge_dim()];
    for (idx, x) in w.coords.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        let [i, j, k] = t.triples[idx];
        wedge_sparse_into(&t, &img[i], &img[j], &img[k], x, &mut out);
    }
    Ok(Wedge3 { genus: w.genus, coords: out })
}

/// The action of one `SpMap` on `(∧³H)/H`, precomputed column by column.
#[derive(Clone, Debug)]
pub struct QuotientAction {
    genus: Genus,
    columns: Vec<Vec<(usize, BigInt)>>,
}

impl QuotientAction {
    pub fn new(m: &SpMap) -> Self {
        let g = m.genus();
        let t = tables(g);
        let img = gamma_images(m);
        let columns = t
            .retained
            .iter()
            .map(|&idx| {
                let [i, j, k] = t.triples[idx];
                let mut w = vec![BigInt::zero(); t.wedge_dim()];
                wedge_sparse_into(&t, &img[i], &img[j], &img[k], &BigInt::one(), &mut w);
                let q = reduce_to_quotient(&Wedge3 { genus: g, coords: w });
                q.coords.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).collect()
            })
            .collect();
        QuotientAction { genus: g, columns }
    }

    pub fn apply_coords(&self, q: &[BigInt]) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); q.len()];
        for (x, col) in q.iter().zip(&self.columns) {
            if x.is_zero() {
                continue;
            }
            for (p, c) in col {
                out[*p] += x * c;
            }
        }
        out
    }

    pub fn apply(&self, q: &QuotientClass) -> Result<QuotientClass> {
        if q.genus != self.genus {
            return Err(Error::GenusMismatch { left: self.genus.0, right: q.genus.0 });
        }
        Ok(QuotientClass { genus: self.genus, coords: self.apply_coords(&q.coords) })
    }
}

/// Action of `M` on `(∧³H)/H`; well defined because `M` fixes `ω`.
pub fn sp_action_quotient(m: &SpMap, q: &QuotientClass) -> Result<QuotientClass> {
    if m.genus() != q.genus {
        return Err(Error::GenusMismatch { left: m.genus().0, right: q.genus.0 });
    }
    let w = sp_action_wedge(m, &q.lift())?;
    Ok(reduce_to_quotient(&w))
}

/// A bounding pair map `T_x T_y^{-1}`: `x` and `y` share the class `cls`, and
/// `side` is a symplectic basis of the subsurface they cut off.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BoundingPairGen {
    pub cls: HomologyClass,
    pub side: Vec<(HomologyClass, HomologyClass)>,
}

impl BoundingPairGen {
    pub fn new(cls: HomologyClass, side: Vec<(HomologyClass, HomologyClass)>) -> Result<Self> {
        let g = BoundingPairGen { cls, side };
        g.validate()?;
        Ok(g)
    }

    pub fn genus(&self) -> Genus {
        self.cls.genus()
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidBoundingPair(m));
        if self.cls.is_zero() || !is_primitive(&self.cls)? {
            return bad(format!("class {} is not primitive", self.cls));
        }
        if self.side.is_empty() {
            return bad("side basis is empty".into());
        }
        let mut all = Vec::new();
        for (a, b) in &self.side {
            all.push(a);
            all.push(b);
        }
        for (i, x) in all.iter().enumerate() {
            if !intersection(x, &self.cls)?.is_zero() {
                return bad(format!("side class {x} meets {}", self.cls));
            }
            for (j, y) in all.iter().enumerate() {
                let want = if i % 2 == 0 && j == i + 1 {
                    BigInt::one()
                } else if j % 2 == 0 && i == j + 1 {
                    -BigInt::one()
                } else {
                    BigInt::zero()
                };
                if intersection(x, y)? != want {
                    return bad(format!("side classes {x}, {y} do not pair as a symplectic basis"));
                }
            }
        }
        Ok(())
    }

    /// The mapping class `h (T_x T_y^{-1}) h^{-1}` for `h = sp_image(word)`, at homology level.
    pub fn conjugate_by(&self, m: &SpMap) -> Result<Self> {
        let side = self.side.iter().map(|(a, b)| Ok((m.apply(a)?, m.apply(b)?))).collect::<Result<Vec<_>>>()?;
        Ok(BoundingPairGen { cls: m.apply(&self.cls)?, side })
    }
}

/// `τ(T_x T_y^{-1}) = (Σ α_j ∧ β_j) ∧ cls` in the quotient.
pub fn tau_bounding_pair(g: &BoundingPairGen) -> Result<QuotientClass> {
    g.validate()?;
    let genus = g.genus();
    let mut w = Wedge3::zero(genus);
    for (a, b) in &g.side {
        w = w.add(&Wedge3::wedge(a, b, &g.cls)?);
    }
    Ok(reduce_to_quotient(&w))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TorelliFactor {
    pub conjugator: Word,
    pub generator: BoundingPairGen,
    pub exp: i64,
}

/// A product of conjugated powers of bounding pair maps, in written order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TorelliWord {
    genus: Genus,
    factors: Vec<TorelliFactor>,
}

impl TorelliWord {
    pub fn new(genus: Genus, factors: Vec<TorelliFactor>) -> Result<Self> {
        for f in &factors {
            if f.conjugator.genus() != genus || f.generator.genus() != genus {
                return Err(Error::GenusMismatch { left: genus.0, right: f.generator.genus().0 });
            }
            f.generator.validate()?;
        }
        Ok(TorelliWord { genus, factors })
    }

    pub fn empty(genus: Genus) -> Self {
        TorelliWord { genus, factors: Vec::new() }
    }

    pub fn genus(&self) -> Genus {
        self.genus
    }

    pub fn factors(&self) -> &[TorelliFactor] {
        &self.factors
    }

    pub fn inverse(&self) -> TorelliWord {
        let factors = self.factors.iter().rev().map(|f| TorelliFactor { exp: -f.exp, ..f.clone() }).collect();
        TorelliWord { genus: self.genus, factors }
    }

    /// `self^n`.
    pub fn pow(&self, n: i64) -> TorelliWord {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut factors = Vec::new();
        for _ in 0..n.unsigned_abs() {
            factors.extend(base.factors.iter().cloned());
        }
        TorelliWord { genus: self.genus, factors }
    }

    /// `self · other`.
    pub fn concat(&self, other: &TorelliWord) -> Result<TorelliWord> {
        if self.genus != other.genus {
            return Err(Error::GenusMismatch { left: self.genus.0, right: other.genus.0 });
        }
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().cloned());
        Ok(TorelliWord { genus: self.genus, factors })
    }

    /// `x · self · x^{-1}`.
    pub fn conjugate(&self, x: &Word) -> Result<TorelliWord> {
        let factors = self
            .factors
            .iter()
            .map(|f| Ok(TorelliFactor { conjugator: x.concat(&f.conjugator)?, ..f.clone() }))
            .collect::<Result<Vec<_>>>()?;
        Ok(TorelliWord { genus: self.genus, factors })
    }

    /// The commutator `[x, self^n] = x self^n x^{-1} self^{-n}` as a Torelli word.
    pub fn commutator(&self, x: &Word, n: i64) -> Result<TorelliWord> {
        self.pow(n).conjugate(x)?.concat(&self.pow(-n))
    }

    /// The twist word `Π conj (T_x T_y^{-1})^exp conj^{-1}`.
    pub fn literal_word(&self) -> Word {
        let mut letters: Vec<TwistLetter> = Vec::new();
        for f in &self.factors {
            let x = TwistLetter::nonseparating(f.generator.cls.clone(), Power::Pos).expect("validated class");
            let y_inv = x.inverse();
            let pair = if f.exp >= 0 { [x, y_inv] } else { [x.inverse(), x.clone()] };
            letters.extend(f.conjugator.letters().iter().cloned());
            for _ in 0..f.exp.unsigned_abs() {
                letters.extend(pair.iter().cloned());
            }
            letters.extend(f.conjugator.inverse().letters().iter().cloned());
        }
        Word::new(self.genus, letters).expect("factors share the genus")
    }
}

/// `Σ exp · conj_* τ(generator)`.
pub fn tau_word(tw: &TorelliWord) -> Result<QuotientClass> {
    let mut acc = QuotientClass::zero(tw.genus);
    for f in &tw.factors {
        let base = tau_bounding_pair(&f.generator)?;
        let moved = if f.conjugator.is_empty() { base } else { sp_action_quotient(&f.conjugator.sp_image(), &base)? };
        acc = acc.add(&moved.scale(&BigInt::from(f.exp)));
    }
    Ok(acc)
}

/// `τ([x, f^n]) = n (x_* τ(f) - τ(f))`.
pub fn commutator_tau(x: &Word, tw: &TorelliWord, n: i64) -> Result<QuotientClass> {
    if x.genus() != tw.genus {
        return Err(Error::GenusMismatch { left: x.genus().0, right: tw.genus.0 });
    }
    let t = tau_word(tw)?;
    let moved = sp_action_quotient(&x.sp_image(), &t)?;
    Ok(moved.sub(&t).scale(&BigInt::from(n)))
}

pub fn is_primitive_quotient(q: &QuotientClass) -> Result<bool> {
    if q.is_zero() {
        return Err(Error::ZeroClass);
    }
    Ok(q.content().is_one())
}

/// Round cap used by [`saturate`].
pub const DEFAULT_ROUND_CAP: usize = 1_000_000;

/// Smallest subgroup containing `seeds` and stable under each generator and
/// its inverse, returned in Hermite normal form.
pub fn saturate(seeds: &[QuotientClass], action_gens: &[SpMap]) -> Result<Sublattice> {
    saturate_with_cap(seeds, action_gens, DEFAULT_ROUND_CAP)
}

/// [`saturate`] with an explicit cap on the number of processed vectors.
pub fn saturate_with_cap(seeds: &[QuotientClass], action_gens: &[SpMap], cap: usize) -> Result<Sublattice> {
    let Some(first) = seeds.first() else {
        return Err(Error::Precondition("saturation needs at least one seed".into()));
    };
    let g = first.genus;
    if let Some(s) = seeds.iter().find(|s| s.genus != g) {
        return Err(Error::GenusMismatch { left: g.0, right: s.genus.0 });
    }
    if let Some(m) = action_gens.iter().find(|m| m.genus() != g) {
        return Err(Error::GenusMismatch { left: g.0, right: m.genus().0 });
    }
    let actions: Vec<QuotientAction> = action_gens
        .par_iter()
        .flat_map_iter(|m| [QuotientAction::new(m), QuotientAction::new(&m.inverse())])
        .collect();
    let dim = tables(g).quotient_dim();
    let mut lattice = Sublattice::zero(dim);
    let mut queue: VecDeque<Vec<BigInt>> = VecDeque::new();
    for s in seeds {
        if lattice.insert_unreduced(s.coords.clone()) {
            queue.push_back(s.coords.clone());
        }
    }
    let mut processed = 0usize;
    while let Some(v) = queue.pop_front() {
        processed += 1;
        if processed > cap {
            return Err(Error::SaturationCap { rounds: cap });
        }
        let images: Vec<Vec<BigInt>> = actions.par_iter().map(|a| a.apply_coords(&v)).collect();
        for img in images {
            if lattice.insert_unreduced(img.clone()) {
                queue.push_back(img);
            }
        }
    }
    lattice.normalize();
    Ok(lattice)
}

/// gcd of the basis entries of a sublattice.
pub fn content(l: &Sublattice) -> BigInt {
    l.content()
}
