//! Invariants of the total space of a Lefschetz fibration read off from its
//! factorization data.

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::homology::{Genus, Power};
use crate::lattice::{orthogonal_complement, IntLattice, Parity};
use crate::matrix::IntMatrix;
use crate::word::{TwistLetter, Word};

/// Fiber genus, vanishing cycles, sections and caller-attested symmetry data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FibrationSpec {
    fiber_genus: Genus,
    cycles: Vec<TwistLetter>,
    sections: Vec<i64>,
    /// The cycles commute with a hyperelliptic involution.
    pub hyperelliptic: bool,
    /// The factorization is a partial conjugate of a hyperelliptic one, so
    /// the signature agrees with the hyperelliptic factorization's by
    /// Novikov additivity.
    pub glued_from_hyperelliptic: bool,
}

impl FibrationSpec {
    pub fn new(fiber_genus: Genus, cycles: Vec<TwistLetter>, sections: Vec<i64>, hyperelliptic: bool) -> Result<Self> {
        for (k, c) in cycles.iter().enumerate() {
            if c.genus() != fiber_genus {
                return Err(Error::GenusMismatch { left: fiber_genus.0, right: c.genus().0 });
            }
            if c.power() != Power::Pos {
                return Err(Error::NotPositive { position: cycles.len() - k });
            }
        }
        Ok(FibrationSpec { fiber_genus, cycles, sections, hyperelliptic, glued_from_hyperelliptic: false })
    }

    pub fn with_glued(mut self, glued: bool) -> Self {
        self.glued_from_hyperelliptic = glued;
        self
    }

    pub fn fiber_genus(&self) -> Genus {
        self.fiber_genus
    }

    pub fn cycles(&self) -> &[TwistLetter] {
        &self.cycles
    }

    pub fn sections(&self) -> &[i64] {
        &self.sections
    }

    pub fn word(&self) -> Word {
        Word::new(self.fiber_genus, self.cycles.clone()).expect("validated genus")
    }
}

/// `χ = 4 - 4h + #cycles`.
pub fn euler_characteristic(s: &FibrationSpec) -> i64 {
    4 - 4 * s.fiber_genus.0 as i64 + s.cycles.len() as i64
}

/// Endo's local signature formula for hyperelliptic fibrations:
/// `σ = -(h+1)/(2h+1) s_0 + Σ_j (4j(h-j)/(2h+1) - 1) s_j`.
pub fn endo_signature(s: &FibrationSpec) -> Result<i64> {
    if !(s.hyperelliptic || s.glued_from_hyperelliptic) {
        return Err(Error::NotHyperelliptic);
    }
    let h = s.fiber_genus.0 as i64;
    let counts = s.word().counts();
    let mut num = -(h + 1) * counts.nonseparating as i64;
    for (&j, &sj) in &counts.separating {
        let j = j as i64;
        num += (4 * j * (h - j) - (2 * h + 1)) * sj as i64;
    }
    let den = 2 * h + 1;
    if num % den != 0 {
        return Err(Error::NonIntegral(format!("signature numerator {num} is not divisible by {den}")));
    }
    Ok(num / den)
}

/// `b_1 = 2h - rank(span of cycle classes)`; needs a section.
pub fn b1_homological(s: &FibrationSpec) -> Result<usize> {
    if s.sections.is_empty() {
        return Err(Error::NoSection);
    }
    let n = s.fiber_genus.rank();
    let rows: Vec<Vec<BigInt>> = s.cycles.iter().map(|c| c.curve().coords().to_vec()).collect();
    let rank = if rows.is_empty() { 0 } else { IntMatrix::from_rows(rows)?.rank() };
    Ok(n - rank)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantReport {
    pub chi: i64,
    pub sigma: i64,
    pub b1: i64,
    pub b2: i64,
    pub b2_plus: i64,
    pub b2_minus: i64,
    pub signature_argument: String,
    pub parity_notes: String,
    pub certification: &'static str,
}

pub const HOMOLOGY_LEVEL: &str = "homology-level";

pub fn full_report(s: &FibrationSpec) -> Result<InvariantReport> {
    let chi = euler_characteristic(s);
    let sigma = endo_signature(s)?;
    let b1 = b1_homological(s)? as i64;
    let b2 = chi - 2 + 2 * b1;
    if (b2 + sigma) % 2 != 0 || b2 < sigma.abs() {
        return Err(Error::NonIntegral(format!("b2 = {b2} and sigma = {sigma} give no integral b2±")));
    }
    let signature_argument = if s.hyperelliptic {
        "Endo's local signature formula on a hyperelliptic factorization".to_string()
    } else {
        "Endo's formula on the hyperelliptic factorization this one is partially conjugated from; \
         Novikov additivity transfers the value"
            .to_string()
    };
    let parity_notes = "parity is not determined by chi, sigma, b1 alone; see the blowdown report".to_string();
    Ok(InvariantReport {
        chi,
        sigma,
        b1,
        b2,
        b2_plus: (b2 + sigma) / 2,
        b2_minus: (b2 - sigma) / 2,
        signature_argument,
        parity_notes,
        certification: HOMOLOGY_LEVEL,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BlowdownParity {
    Even,
    Odd,
    Undetermined,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlowdownReport {
    pub parity: BlowdownParity,
    /// Gram matrix of the orthogonal complement of the sections inside the
    /// span of the fiber components and sections.
    pub complement_gram: Vec<Vec<i64>>,
    pub complement_unimodular: bool,
    pub expected_rank: i64,
    pub reason: String,
}

/// Parity of the lattice left after blowing down the (−1)-sections.
///
/// `incidence[r][s]` is the intersection number of fiber component `r` with
/// section `s`. One row means an irreducible fiber (`F^2 = 0`); two rows are
/// the components of a reducible fiber (`F_i^2 = -1`, `F_1.F_2 = 1`).
pub fn blowdown_parity_report(s: &FibrationSpec, incidence: &IntMatrix) -> Result<BlowdownReport> {
    if s.sections.is_empty() || s.sections.iter().any(|&x| x != -1) {
        return Err(Error::Precondition("blowdown needs sections of self-intersection -1".into()));
    }
    let ns = s.sections.len();
    let nf = incidence.rows();
    if incidence.cols() != ns {
        return Err(Error::DimensionMismatch { expected: ns, got: incidence.cols() });
    }
    let comp_gram: Vec<Vec<i64>> = match nf {
        1 => vec![vec![0]],
        2 => vec![vec![-1, 1], vec![1, -1]],
        _ => return Err(Error::Precondition("incidence must have one or two fiber components".into())),
    };
    let n = nf + ns;
    let mut gram = IntMatrix::zeros(n, n);
    for i in 0..nf {
        for j in 0..nf {
            gram[(i, j)] = BigInt::from(comp_gram[i][j]);
        }
        for k in 0..ns {
            gram[(i, nf + k)] = incidence[(i, k)].clone();
            gram[(nf + k, i)] = incidence[(i, k)].clone();
        }
    }
    for k in 0..ns {
        gram[(nf + k, nf + k)] = BigInt::from(-1);
    }
    let ambient = IntLattice::new(gram)?;
    let sections: Vec<Vec<BigInt>> = (0..ns)
        .map(|k| (0..n).map(|j| BigInt::from((j == nf + k) as i64)).collect())
        .collect();
    let (_, comp) = orthogonal_complement(&ambient, &sections)?;
    let complement_gram: Vec<Vec<i64>> = (0..comp.rank())
        .map(|i| comp.gram().row(i).iter().map(|x| i64::try_from(x).expect("small Gram entries")).collect())
        .collect();
    let unimodular = comp.rank() > 0 && comp.is_unimodular();
    let expected_rank = match full_report(s) {
        Ok(r) => r.b2 - ns as i64,
        Err(_) => -1,
    };
    let (parity, reason) = if comp.parity() == Parity::Odd {
        (BlowdownParity::Odd, "the complement contains a class of odd square".to_string())
    } else if unimodular && comp.rank() as i64 == expected_rank {
        (
            BlowdownParity::Even,
            "the complement is an even unimodular lattice of full rank, so it is the whole blowdown lattice".to_string(),
        )
    } else {
        (BlowdownParity::Undetermined, "the even complement found is not known to be the whole lattice".to_string())
    };
    Ok(BlowdownReport { parity, complement_gram, complement_unimodular: unimodular, expected_rank, reason })
}
