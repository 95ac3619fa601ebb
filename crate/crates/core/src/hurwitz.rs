//! Orbit search over elementary transformations in `Sp(2G, Z/m)`.
//!
//! Everything here is exploratory. A closed orbit or a failed meeting of two
//! searches says something about mod-`m` letter lists only; it is never a
//! statement about the factorizations in the mapping class group.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::homology::{Genus, Power};
use crate::word::{Direction, Word};

/// Largest modulus; residues then fit `u32` and products fit `u64`.
pub const MAX_MODULUS: u64 = 1 << 31;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct QuotientConfig {
    pub modulus: u64,
    pub genus: Genus,
}

impl QuotientConfig {
    pub fn new(modulus: u64, genus: Genus) -> Result<Self> {
        if !(2..MAX_MODULUS).contains(&modulus) {
            return Err(Error::Precondition(format!("modulus must lie in [2, 2^31), got {modulus}")));
        }
        Ok(QuotientConfig { modulus, genus })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModLetter {
    /// Residues in `[0, m)`, sign-normalized: the lexicographically smaller of `c` and `-c`.
    pub residues: Vec<u64>,
    pub power: Power,
    pub split: Option<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModFactorization {
    cfg: QuotientConfig,
    letters: Vec<ModLetter>,
}

fn normalize_sign(v: &mut [u64], m: u64) {
    let neg: Vec<u64> = v.iter().map(|&x| (m - x) % m).collect();
    if neg.as_slice() < &*v {
        v.copy_from_slice(&neg);
    }
}

fn pairing_mod(u: &[u64], v: &[u64], m: u64) -> u64 {
    let g = u.len() / 2;
    let mut s = 0u64;
    for i in 0..g {
        s = (s + u[i] * v[g + i]) % m;
        s = (s + (m - u[g + i] * v[i] % m)) % m;
    }
    s
}

/// `x ↦ x + e<c, x> c` modulo `m`, with `e = ±1`.
fn transvect_mod(c: &[u64], power: Power, x: &[u64], m: u64) -> Vec<u64> {
    let mut k = pairing_mod(c, x, m);
    if power == Power::Neg {
        k = (m - k) % m;
    }
    x.iter().zip(c).map(|(&xi, &ci)| (xi + k * ci) % m).collect()
}

impl ModFactorization {
    pub fn from_word(w: &Word, cfg: QuotientConfig) -> Result<Self> {
        if w.genus() != cfg.genus {
            return Err(Error::GenusMismatch { left: cfg.genus.0, right: w.genus().0 });
        }
        let m = BigInt::from(cfg.modulus);
        let letters = w
            .letters()
            .iter()
            .map(|l| {
                let mut residues: Vec<u64> =
                    l.curve().coords().iter().map(|x| x.mod_floor(&m).to_u64().expect("below modulus")).collect();
                normalize_sign(&mut residues, cfg.modulus);
                ModLetter { residues, power: l.power(), split: l.split() }
            })
            .collect();
        Ok(ModFactorization { cfg, letters })
    }

    pub fn config(&self) -> QuotientConfig {
        self.cfg
    }

    pub fn letters(&self) -> &[ModLetter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Product matrix mod `m`, row-major, computed on basis columns.
    pub fn product(&self) -> Vec<u64> {
        let n = self.cfg.genus.rank();
        let m = self.cfg.modulus;
        let mut out = vec![0u64; n * n];
        for j in 0..n {
            let mut x = vec![0u64; n];
            x[j] = 1;
            for l in self.letters.iter().rev() {
                if l.split.is_none() {
                    x = transvect_mod(&l.residues, l.power, &x, m);
                }
            }
            for i in 0..n {
                out[i * n + j] = x[i];
            }
        }
        out
    }

    /// Elementary transformation at index `i` (1-based from the right), as in
    /// [`crate::word::elementary_transformation`].
    pub fn apply_move(&self, mv: Move) -> Result<ModFactorization> {
        let r = self.letters.len();
        if mv.index == 0 || mv.index >= r {
            return Err(Error::IndexOutOfRange { index: mv.index, max: r.saturating_sub(1) });
        }
        let m = self.cfg.modulus;
        let p = r - mv.index - 1;
        let (hi, lo) = (self.letters[p].clone(), self.letters[p + 1].clone());
        let mut letters = self.letters.clone();
        let moved = |by: &ModLetter, power: Power, target: &ModLetter| {
            let mut residues = if by.split.is_some() || target.split.is_some() {
                target.residues.clone()
            } else {
                transvect_mod(&by.residues, power, &target.residues, m)
            };
            normalize_sign(&mut residues, m);
            ModLetter { residues, ..target.clone() }
        };
        match mv.dir {
            Direction::Right => {
                letters[p] = moved(&hi, hi.power, &lo);
                letters[p + 1] = hi;
            }
            Direction::Left => {
                letters[p + 1] = moved(&lo, lo.power.inverse(), &hi);
                letters[p] = lo;
            }
        }
        Ok(ModFactorization { cfg: self.cfg, letters })
    }

    pub fn replay(&self, moves: &[Move]) -> Result<ModFactorization> {
        moves.iter().try_fold(self.clone(), |f, &mv| f.apply_move(mv))
    }

    fn neighbours(&self) -> Vec<(Move, ModFactorization)> {
        let mut out = Vec::with_capacity(2 * self.len());
        for index in 1..self.len() {
            for dir in [Direction::Right, Direction::Left] {
                let mv = Move { index, dir };
                out.push((mv, self.apply_move(mv).expect("index in range")));
            }
        }
        out
    }

    /// Counts of nonseparating letters and of separating letters per split.
    fn letter_multiset(&self) -> (usize, Vec<(usize, usize)>) {
        let mut seps: Vec<(usize, usize)> =
            self.letters.iter().filter_map(|l| l.split.map(|(a, b)| (a.min(b), a.max(b)))).collect();
        seps.sort_unstable();
        (self.letters.len() - seps.len(), seps)
    }
}

/// Serialized letter list: genus (u32 LE), modulus (u64 LE), letter count
/// (u32 LE), then per letter a separating flag byte, a power byte
/// (0 for +1, 1 for -1), the split as two u32 LE, and the residues as u32 LE.
pub fn canonical_form(f: &ModFactorization) -> Vec<u8> {
    let n = f.cfg.genus.rank();
    let mut out = Vec::with_capacity(16 + f.letters.len() * (10 + 4 * n));
    out.extend_from_slice(&(f.cfg.genus.0 as u32).to_le_bytes());
    out.extend_from_slice(&f.cfg.modulus.to_le_bytes());
    out.extend_from_slice(&(f.letters.len() as u32).to_le_bytes());
    for l in &f.letters {
        out.push(l.split.is_some() as u8);
        out.push((l.power == Power::Neg) as u8);
        let (h1, h2) = l.split.unwrap_or((0, 0));
        out.extend_from_slice(&(h1 as u32).to_le_bytes());
        out.extend_from_slice(&(h2 as u32).to_le_bytes());
        for &x in &l.residues {
            out.extend_from_slice(&(x as u32).to_le_bytes());
        }
    }
    out
}

/// Inverse of [`canonical_form`].
pub fn from_canonical(bytes: &[u8]) -> Result<ModFactorization> {
    let bad = || Error::Schema("malformed canonical form".into());
    let mut pos = 0usize;
    let mut take = |k: usize| -> Result<&[u8]> {
        let s = bytes.get(pos..pos + k).ok_or_else(bad)?;
        pos += k;
        Ok(s)
    };
    let u32_at = |s: &[u8]| u32::from_le_bytes(s.try_into().expect("4 bytes")) as u64;
    let genus = u32_at(take(4)?) as usize;
    let modulus = u64::from_le_bytes(take(8)?.try_into().expect("8 bytes"));
    let cfg = QuotientConfig::new(modulus, Genus(genus))?;
    let count = u32_at(take(4)?) as usize;
    let mut letters = Vec::with_capacity(count);
    for _ in 0..count {
        let flag = take(1)?[0];
        let power = match take(1)?[0] {
            0 => Power::Pos,
            1 => Power::Neg,
            _ => return Err(bad()),
        };
        let h1 = u32_at(take(4)?) as usize;
        let h2 = u32_at(take(4)?) as usize;
        let residues = (0..2 * genus).map(|_| take(4).map(u32_at)).collect::<Result<Vec<_>>>()?;
        if residues.iter().any(|&x| x >= modulus) {
            return Err(bad());
        }
        let split = match flag {
            0 => None,
            1 => Some((h1, h2)),
            _ => return Err(bad()),
        };
        letters.push(ModLetter { residues, power, split });
    }
    if pos != bytes.len() {
        return Err(bad());
    }
    Ok(ModFactorization { cfg, letters })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Move {
    pub index: usize,
    pub dir: Direction,
}

impl Move {
    pub fn inverse(self) -> Move {
        Move { index: self.index, dir: self.dir.inverse() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    SameOrbit,
    DistinctInBudget,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitCertificate {
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<Move>>,
    pub explored: usize,
    pub budget: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub note: &'static str,
}

/// Attached to every orbit report.
pub const ORBIT_NOTE: &str =
    "mod-m letter lists only; a separation here is not a proof that the factorizations differ in the mapping class group";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ExploreVerdict {
    /// Every elementary transformation of every state stays inside the set.
    Closed,
    /// The budget ran out first.
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExploreReport {
    pub verdict: ExploreVerdict,
    pub explored: usize,
    pub budget: usize,
    pub levels: usize,
    pub modulus: u64,
    pub letters: usize,
    /// SHA-256 over the sorted canonical forms, each prefixed by its length.
    pub digest: String,
    pub note: &'static str,
}

/// Explored states sorted by canonical form, plus the summary report.
pub struct Orbit {
    pub states: Vec<Vec<u8>>,
    pub report: ExploreReport,
}

struct Search {
    index: HashMap<Vec<u8>, usize>,
    states: Vec<ModFactorization>,
    parent: Vec<Option<(usize, Move)>>,
    frontier: Vec<usize>,
    product: Vec<u64>,
}

enum Step {
    Closed,
    Truncated,
    Grew,
    Met { here: usize, there: usize },
}

impl Search {
    fn new(root: &ModFactorization) -> Self {
        let bytes = canonical_form(root);
        Search {
            index: HashMap::from([(bytes, 0)]),
            states: vec![root.clone()],
            parent: vec![None],
            frontier: vec![0],
            product: root.product(),
        }
    }

    /// Expands one BFS level. `total` counts states across all searches
    /// sharing the budget; `other` is the opposite search of a meeting.
    fn step(&mut self, total: &mut usize, budget: usize, other: Option<&Search>) -> Step {
        if self.frontier.is_empty() {
            return Step::Closed;
        }
        let expanded: Vec<Vec<(Move, ModFactorization, Vec<u8>)>> = self
            .frontier
            .par_iter()
            .map(|&s| {
                self.states[s]
                    .neighbours()
                    .into_iter()
                    .map(|(mv, f)| {
                        let b = canonical_form(&f);
                        (mv, f, b)
                    })
                    .collect()
            })
            .collect();
        let mut next = Vec::new();
        for (&src, nbrs) in self.frontier.iter().zip(expanded) {
            for (mv, f, bytes) in nbrs {
                if self.index.contains_key(&bytes) {
                    continue;
                }
                if *total >= budget {
                    return Step::Truncated;
                }
                *total += 1;
                let id = self.states.len();
                if let Some(&there) = other.and_then(|o| o.index.get(&bytes)) {
                    assert_sound(&f, &self.product);
                    self.index.insert(bytes, id);
                    self.states.push(f);
                    self.parent.push(Some((src, mv)));
                    return Step::Met { here: id, there };
                }
                self.index.insert(bytes, id);
                self.states.push(f);
                self.parent.push(Some((src, mv)));
                next.push(id);
            }
        }
        next.par_iter().for_each(|&id| assert_sound(&self.states[id], &self.product));
        next.sort_by_cached_key(|&id| canonical_form(&self.states[id]));
        self.frontier = next;
        if self.frontier.is_empty() {
            Step::Closed
        } else {
            Step::Grew
        }
    }

    fn path_to(&self, mut id: usize) -> Vec<Move> {
        let mut out = Vec::new();
        while let Some((p, mv)) = self.parent[id] {
            out.push(mv);
            id = p;
        }
        out.reverse();
        out
    }
}

/// Every newly admitted state is checked once.
fn assert_sound(f: &ModFactorization, product: &[u64]) {
    assert_eq!(f.product(), product, "elementary transformation changed the product");
}

fn digest(states: &[Vec<u8>]) -> String {
    let mut h = Sha256::new();
    for s in states {
        h.update((s.len() as u64).to_le_bytes());
        h.update(s);
    }
    format!("{:x}", h.finalize())
}

/// Breadth-first closure under elementary transformations in both
/// directions, stopping once `budget` distinct states have been seen.
pub fn orbit_explore(f: &ModFactorization, budget: usize) -> Result<Orbit> {
    if budget == 0 {
        return Err(Error::Precondition("budget must be at least 1".into()));
    }
    let mut search = Search::new(f);
    let mut total = 1usize;
    let mut levels = 0usize;
    let verdict = loop {
        match search.step(&mut total, budget, None) {
            Step::Closed => break ExploreVerdict::Closed,
            Step::Truncated => break ExploreVerdict::Unknown,
            Step::Grew => levels += 1,
            Step::Met { .. } => unreachable!("no opposite search"),
        }
    };
    let mut states: Vec<Vec<u8>> = search.index.into_keys().collect();
    states.sort_unstable();
    let report = ExploreReport {
        verdict,
        explored: states.len(),
        budget,
        levels,
        modulus: f.cfg.modulus,
        letters: f.len(),
        digest: digest(&states),
        note: ORBIT_NOTE,
    };
    Ok(Orbit { states, report })
}

/// [`orbit_explore`] on a dedicated pool of `jobs` threads.
pub fn orbit_explore_with_jobs(f: &ModFactorization, budget: usize, jobs: usize) -> Result<Orbit> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::Precondition(format!("thread pool: {e}")))?;
    pool.install(|| orbit_explore(f, budget))
}

/// Bidirectional search for a chain of elementary transformations from `f1` to `f2`.
pub fn same_orbit(f1: &ModFactorization, f2: &ModFactorization, budget: usize) -> Result<OrbitCertificate> {
    if budget == 0 {
        return Err(Error::Precondition("budget must be at least 1".into()));
    }
    if f1.cfg != f2.cfg {
        return Err(Error::Precondition("both factorizations must use the same genus and modulus".into()));
    }
    let cert = |verdict, witness, explored, reason: Option<String>| OrbitCertificate {
        verdict,
        witness,
        explored,
        budget,
        reason,
        note: ORBIT_NOTE,
    };
    if f1.len() != f2.len() {
        return Ok(cert(
            Verdict::DistinctInBudget,
            None,
            0,
            Some(format!("letter counts differ: {} vs {}", f1.len(), f2.len())),
        ));
    }
    if f1.letter_multiset() != f2.letter_multiset() {
        return Ok(cert(Verdict::DistinctInBudget, None, 0, Some("separating letter types differ".into())));
    }
    if f1.product() != f2.product() {
        return Ok(cert(Verdict::DistinctInBudget, None, 0, Some("products mod m differ".into())));
    }
    if canonical_form(f1) == canonical_form(f2) {
        return Ok(cert(Verdict::SameOrbit, Some(Vec::new()), 1, None));
    }
    let mut fwd = Search::new(f1);
    let mut bwd = Search::new(f2);
    let mut total = 2usize;
    loop {
        let (step, forward) = if fwd.states.len() <= bwd.states.len() {
            (fwd.step(&mut total, budget, Some(&bwd)), true)
        } else {
            (bwd.step(&mut total, budget, Some(&fwd)), false)
        };
        match step {
            Step::Grew => {}
            Step::Met { here, there } => {
                let (a, a_id, b, b_id) = if forward { (&fwd, here, &bwd, there) } else { (&fwd, there, &bwd, here) };
                let mut witness = a.path_to(a_id);
                witness.extend(b.path_to(b_id).into_iter().rev().map(Move::inverse));
                return Ok(cert(Verdict::SameOrbit, Some(witness), total, None));
            }
            Step::Closed => {
                return Ok(cert(
                    Verdict::DistinctInBudget,
                    None,
                    total,
                    Some("one orbit closed without meeting the other".into()),
                ))
            }
            Step::Truncated => return Ok(cert(Verdict::Unknown, None, total, Some("budget exhausted".into()))),
        }
    }
}
