//! Concrete factorizations: the MCK fibrations and their twisted family,
//! the chain-relation family, the Torelli element `f`, and the classes `v`
//! and `w` used by the distinguishing certificates.
//!
//! MCK classes live on the fiber of genus `2g`; chain classes on genus `g`.
//! Curve tables are shipped as JSON under `data/` (overridable through
//! `MONOLAB_DATA`) and are validated against the stated constraints before
//! every use.

use std::collections::BTreeMap;
use std::collections::HashMap;
use std::path::PathBuf;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::homology::{fixed_subspace_dim, intersection, Genus, HomologyClass, Power, SpMap};
use crate::invariants::FibrationSpec;
use crate::johnson::{commutator_tau, is_primitive_quotient, reduce_to_quotient, saturate, BoundingPairGen, QuotientClass, TorelliFactor, TorelliWord, Wedge3};
use crate::lattice::{smith_normal_form, Sublattice};
use crate::matrix::IntMatrix;
use crate::word::{partial_conjugation, verify_factorization, PositiveFactorization, TwistLetter, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Context {
    Mck,
    Chain,
}

impl Context {
    pub fn name(self) -> &'static str {
        match self {
            Context::Mck => "mck",
            Context::Chain => "chain",
        }
    }

    pub fn min_genus(self) -> usize {
        match self {
            Context::Mck => 2,
            Context::Chain => 3,
        }
    }

    /// Genus of the fiber for parameter `g`.
    pub fn fiber_genus(self, g: usize) -> Genus {
        match self {
            Context::Mck => Genus(2 * g),
            Context::Chain => Genus(g),
        }
    }
}

impl std::str::FromStr for Context {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mck" => Ok(Context::Mck),
            "chain" => Ok(Context::Chain),
            _ => Err(Error::Schema(format!("unknown context {s:?} (expected mck or chain)"))),
        }
    }
}

fn check_genus(ctx: Context, g: usize) -> Result<()> {
    if g < ctx.min_genus() {
        return Err(Error::Precondition(format!("{} scenarios need g >= {}, got {g}", ctx.name(), ctx.min_genus())));
    }
    Ok(())
}

/// Named homology classes for one scenario.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveTable {
    pub schema_version: u32,
    pub context: Context,
    pub g: usize,
    pub fiber_genus: usize,
    pub classes: BTreeMap<String, HomologyClass>,
    /// Separating curves and the genera of their two sides.
    #[serde(default)]
    pub separating: BTreeMap<String, (usize, usize)>,
}

/// `c_i := b_{i+1} - b_i`.
pub fn c_class(g: Genus, i: usize) -> HomologyClass {
    HomologyClass::b(g, i + 1) - HomologyClass::b(g, i)
}

/// Chain classes `c_1 .. c_{2g+1}` on the genus-`g` surface.
fn chain_classes(g: Genus) -> Vec<HomologyClass> {
    let n = g.0;
    let mut out = vec![HomologyClass::b(g, 1)];
    for i in 1..=n {
        out.push(HomologyClass::a(g, i));
        if i < n {
            out.push(c_class(g, i));
        }
    }
    out.push(-HomologyClass::b(g, n));
    out
}

impl CurveTable {
    /// The transcription as formulas.
    ///
    /// MCK: `B_0 = a_1 + ... + a_{2g}`, and `B_j` (`1 <= j <= 2g`) is the partial
    /// chain sum `c'_1 + ... + c'_j` on a genus-`g` model surface pushed into
    /// the (−1)-eigenspace of `η` via `a'_i ↦ a_i + a_{2g+1-i}`,
    /// `b'_i ↦ b_i + b_{2g+1-i}`. `C` is separating with split `(g, g)`.
    pub fn builtin(ctx: Context, g: usize) -> Result<Self> {
        check_genus(ctx, g)?;
        let fg = ctx.fiber_genus(g);
        let mut classes = BTreeMap::new();
        let mut separating = BTreeMap::new();
        match ctx {
            Context::Mck => {
                let model = Genus(g);
                let lift = |x: &HomologyClass| -> HomologyClass {
                    let mut coords = vec![BigInt::zero(); fg.rank()];
                    for i in 0..g {
                        for (src, dst) in [(i, i), (g + i, 2 * g + i)] {
                            let k = &x.coords()[src];
                            coords[dst] += k;
                            let mirror = if dst < 2 * g { 2 * g - 1 - dst } else { 6 * g - 1 - dst };
                            coords[mirror] += k;
                        }
                    }
                    HomologyClass::from_coords(fg, coords).expect("rank 4g")
                };
                let chain = chain_classes(model);
                let mut partial = HomologyClass::zero(model);
                for (j, c) in chain.iter().enumerate().take(2 * g) {
                    partial = partial + c;
                    classes.insert(format!("B{}", j + 1), lift(&partial));
                }
                let b0 = (1..=2 * g).fold(HomologyClass::zero(fg), |s, i| s + HomologyClass::a(fg, i));
                classes.insert("B0".into(), b0);
                classes.insert("C".into(), HomologyClass::zero(fg));
                separating.insert("C".into(), (g, g));
                let x = HomologyClass::b(fg, 2);
                let hx = -HomologyClass::b(fg, 2 * g - 1);
                classes.insert("x".into(), x.clone());
                classes.insert("y".into(), x);
                classes.insert("hx".into(), hx.clone());
                classes.insert("hy".into(), hx);
            }
            Context::Chain => {
                for (i, c) in chain_classes(fg).into_iter().enumerate() {
                    classes.insert(format!("c{}", i + 1), c);
                }
                classes.insert("x".into(), HomologyClass::b(fg, 2));
                classes.insert("y".into(), HomologyClass::b(fg, 2));
            }
        }
        Ok(CurveTable { schema_version: crate::schema::SCHEMA_VERSION, context: ctx, g, fiber_genus: fg.0, classes, separating })
    }

    /// Loads `<dir>/<ctx>_g<g>.json` from `MONOLAB_DATA` or the shipped data
    /// directory, falling back to the formulas when no file exists.
    pub fn load(ctx: Context, g: usize) -> Result<Self> {
        check_genus(ctx, g)?;
        let path = data_dir().join(format!("{}_g{g}.json", ctx.name()));
        match std::fs::read_to_string(&path) {
            Ok(text) => {
                let t: CurveTable = serde_json::from_str(&text)
                    .map_err(|e| Error::Schema(format!("{}: {e}", path.display())))?;
                if t.context != ctx || t.g != g || t.fiber_genus != ctx.fiber_genus(g).0 {
                    return Err(Error::Schema(format!("{}: header does not match {} g={g}", path.display(), ctx.name())));
                }
                Ok(t)
            }
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Self::builtin(ctx, g),
            Err(e) => Err(Error::Schema(format!("{}: {e}", path.display()))),
        }
    }

    /// Loads and validates; a failed constraint is an error naming it.
    pub fn load_validated(ctx: Context, g: usize) -> Result<Self> {
        let t = Self::load(ctx, g)?;
        t.ensure_valid()?;
        Ok(t)
    }

    pub fn genus(&self) -> Genus {
        Genus(self.fiber_genus)
    }

    pub fn get(&self, name: &str) -> Result<&HomologyClass> {
        self.classes.get(name).ok_or_else(|| Error::Transcription(format!("curve table has no class {name:?}")))
    }

    fn letter(&self, name: &str) -> Result<TwistLetter> {
        match self.separating.get(name) {
            Some(&(h1, h2)) => {
                if !self.get(name)?.is_zero() {
                    return Err(Error::Transcription(format!("separating curve {name} has a nonzero class")));
                }
                TwistLetter::separating(self.genus(), h1, h2, Power::Pos)
            }
            None => TwistLetter::nonseparating(self.get(name)?.clone(), Power::Pos),
        }
    }

    /// `[B_0, ..., B_{2g}, C]`, i.e. the word `T_{B_0} ... T_{B_{2g}} T_C`.
    pub fn half_word(&self) -> Result<Word> {
        let mut names: Vec<String> = (0..=2 * self.g).map(|j| format!("B{j}")).collect();
        names.push("C".into());
        let letters = names.iter().map(|n| self.letter(n)).collect::<Result<Vec<_>>>()?;
        Word::new(self.genus(), letters)
    }

    /// `T_{c_1} ... T_{c_{2g}}`.
    pub fn chain_word(&self) -> Result<Word> {
        let letters = (1..=2 * self.g).map(|i| self.letter(&format!("c{i}"))).collect::<Result<Vec<_>>>()?;
        Word::new(self.genus(), letters)
    }

    pub fn validate(&self) -> ValidationReport {
        let mut checks = Vec::new();
        let mut add = |constraint: &str, result: Result<bool>| {
            let (passed, detail) = match result {
                Ok(p) => (p, None),
                Err(e) => (false, Some(e.to_string())),
            };
            checks.push(Check { constraint: constraint.to_string(), passed, detail });
        };
        match self.context {
            Context::Mck => self.validate_mck(&mut add),
            Context::Chain => self.validate_chain(&mut add),
        }
        ValidationReport { context: self.context, g: self.g, checks }
    }

    fn validate_mck(&self, add: &mut dyn FnMut(&str, Result<bool>)) {
        let fg = self.genus();
        let g = self.g;
        let two_g = 2 * g;
        add("[C] = 0 with split (g, g)", (|| {
            Ok(self.get("C")?.is_zero() && self.separating.get("C") == Some(&(g, g)))
        })());
        add("span{[B_0], ..., [B_2g], [C]} has rank 2g", (|| {
            let rows = (0..=two_g)
                .map(|j| Ok(self.get(&format!("B{j}"))?.coords().to_vec()))
                .chain(std::iter::once(Ok(self.get("C")?.coords().to_vec())))
                .collect::<Result<Vec<_>>>()?;
            Ok(IntMatrix::from_rows(rows)?.rank() == two_g)
        })());
        add("sp_image(T_B0 ... T_B2g T_C) = eta", (|| Ok(self.half_word()?.sp_image() == eta_matrix(g)))());
        let b0 = self.get("B0").cloned();
        let pairs = |x: HomologyClass, want: i64| -> Result<bool> {
            Ok(intersection(b0.as_ref().map_err(Clone::clone)?, &x)? == BigInt::from(want))
        };
        add("<B_0, b_1> = 1", pairs(HomologyClass::b(fg, 1), 1));
        add("<B_0, b_2g> = 1", pairs(HomologyClass::b(fg, two_g), 1));
        add("<B_0, a_1> = 0", pairs(HomologyClass::a(fg, 1), 0));
        add("<B_0, a_2g> = 0", pairs(HomologyClass::a(fg, two_g), 0));
        add("<B_0, c_1> = 0", pairs(c_class(fg, 1), 0));
        add("<B_0, c_2g-1> = 0", pairs(c_class(fg, two_g - 1), 0));
        add("(-a_1, c_1, a_2g, c_2g-1, B_0) extends to a symplectic basis", (|| {
            let tuple = vec![
                -HomologyClass::a(fg, 1),
                c_class(fg, 1),
                HomologyClass::a(fg, two_g),
                c_class(fg, two_g - 1),
                b0.clone()?,
            ];
            extends_to_symplectic_basis(&tuple)
        })());
        add("x and y share the class b_2; hx, hy are their images under eta", (|| {
            let eta = eta_matrix(g);
            let x = self.get("x")?;
            Ok(x == &HomologyClass::b(fg, 2)
                && self.get("y")? == x
                && self.get("hx")? == &eta.apply(x)?
                && self.get("hy")? == &eta.apply(self.get("y")?)?)
        })());
    }

    fn validate_chain(&self, add: &mut dyn FnMut(&str, Result<bool>)) {
        let fg = self.genus();
        let g = self.g;
        add("[c_1] = b_1", (|| Ok(self.get("c1")? == &HomologyClass::b(fg, 1)))());
        add("[c_2i] = a_i", (|| {
            for i in 1..=g {
                if self.get(&format!("c{}", 2 * i))? != &HomologyClass::a(fg, i) {
                    return Ok(false);
                }
            }
            Ok(true)
        })());
        add("[c_2i+1] = b_i+1 - b_i", (|| {
            for i in 1..g {
                if self.get(&format!("c{}", 2 * i + 1))? != &c_class(fg, i) {
                    return Ok(false);
                }
            }
            Ok(true)
        })());
        add("consecutive chain curves meet once, others are disjoint", (|| {
            let cs = (1..=2 * g + 1).map(|i| self.get(&format!("c{i}")).cloned()).collect::<Result<Vec<_>>>()?;
            for i in 0..cs.len() {
                for j in i + 1..cs.len() {
                    let p = intersection(&cs[i], &cs[j])?;
                    let want = if j == i + 1 { BigInt::from(-1) } else { BigInt::zero() };
                    if p != want {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        })());
        add("(T_c1 ... T_c2g)^(4g+2) = 1 at Sp level", (|| Ok(self.chain_word()?.power(4 * g + 2).sp_image().is_identity()))());
        add("x and y share the class b_2", (|| {
            Ok(self.get("x")? == &HomologyClass::b(fg, 2) && self.get("y")? == &HomologyClass::b(fg, 2))
        })());
    }

    pub fn ensure_valid(&self) -> Result<()> {
        let report = self.validate();
        match report.checks.iter().find(|c| !c.passed) {
            None => Ok(()),
            Some(c) => Err(Error::Transcription(format!(
                "{} g={}: constraint violated: {}{}",
                self.context.name(),
                self.g,
                c.constraint,
                c.detail.as_ref().map(|d| format!(" ({d})")).unwrap_or_default()
            ))),
        }
    }
}

/// Pairings are those of a partial symplectic basis `(α_1, β_1, α_2, β_2, ...)`
/// with a possible trailing unpaired vector, and the span is primitive.
pub fn extends_to_symplectic_basis(tuple: &[HomologyClass]) -> Result<bool> {
    let k = tuple.len();
    for i in 0..k {
        for j in 0..k {
            let want = if i % 2 == 0 && j == i + 1 {
                1
            } else if j % 2 == 0 && i == j + 1 {
                -1
            } else {
                0
            };
            if intersection(&tuple[i], &tuple[j])? != BigInt::from(want) {
                return Ok(false);
            }
        }
    }
    let rows: Vec<Vec<BigInt>> = tuple.iter().map(|c| c.coords().to_vec()).collect();
    let snf = smith_normal_form(&IntMatrix::from_rows(rows)?);
    let d = snf.diagonal();
    Ok(d.len() == k && d.iter().all(One::is_one))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub constraint: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub context: Context,
    pub g: usize,
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Scenario data directory: `MONOLAB_DATA` if set, else the shipped `data/`.
pub fn data_dir() -> PathBuf {
    match std::env::var_os("MONOLAB_DATA") {
        Some(d) => PathBuf::from(d),
        None => PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/data")),
    }
}

/// `a_i ↦ -a_{2g+1-i}`, `b_i ↦ -b_{2g+1-i}` on the genus-`2g` surface.
pub fn eta_matrix(g: usize) -> SpMap {
    let fg = Genus(2 * g);
    let n = 2 * g;
    let mut m = IntMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        let j = n - 1 - i;
        m[(j, i)] = BigInt::from(-1);
        m[(n + j, n + i)] = BigInt::from(-1);
    }
    SpMap::from_matrix_unchecked(fg, m)
}

/// A family `n ↦ X_n` obtained by partially conjugating a base factorization by `f^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilySpec {
    pub kind: Context,
    pub g: usize,
    pub base: PositiveFactorization,
    pub f: TorelliWord,
    /// Number of trailing letters conjugated by `f^n`.
    pub k: usize,
    pub sections: Vec<i64>,
}

impl FamilySpec {
    pub fn new(kind: Context, g: usize) -> Result<Self> {
        let table = CurveTable::load_validated(kind, g)?;
        let f = torelli_f_from(&table)?;
        let (word, k, sections) = match kind {
            Context::Mck => {
                let h = table.half_word()?;
                (h.power(2), 2 * g + 2, vec![-1; 4])
            }
            Context::Chain => {
                let c = table.chain_word()?;
                (c.power(3 * (4 * g + 2)), 2 * g * (4 * g + 2), vec![-3])
            }
        };
        let base = PositiveFactorization::of_identity(word)?;
        let spec = FamilySpec { kind, g, base, f, k, sections };
        if !spec.f.literal_word().sp_image().commutes_with(&spec.prefix().sp_image()) {
            return Err(Error::Precondition("f does not commute with the prefix product at Sp level".into()));
        }
        Ok(spec)
    }

    pub fn genus(&self) -> Genus {
        self.base.genus()
    }

    /// The conjugated part `l_k ... l_1` of the base word.
    pub fn prefix(&self) -> Word {
        let r = self.base.len();
        Word::new(self.genus(), self.base.letters()[r - self.k..].to_vec()).expect("same genus")
    }

    /// Partial conjugation of the base factorization by `f^n`.
    pub fn factorization(&self, n: u64) -> Result<PositiveFactorization> {
        if n == 0 {
            return Ok(self.base.clone());
        }
        let fw = self.f.pow(n as i64).literal_word();
        partial_conjugation(&self.base, self.k, &fw)
    }

    pub fn fibration(&self, n: u64) -> Result<FibrationSpec> {
        let fact = self.factorization(n)?;
        let spec = FibrationSpec::new(self.genus(), fact.letters().to_vec(), self.sections.clone(), n == 0)?;
        Ok(spec.with_glued(n > 0))
    }

    /// Distinct letters of the conjugated prefix, in order of appearance.
    pub fn prefix_letters(&self) -> Vec<TwistLetter> {
        let mut out: Vec<TwistLetter> = Vec::new();
        for l in self.prefix().letters() {
            if !out.contains(l) {
                out.push(l.clone());
            }
        }
        out
    }

    /// `τ([T_c^{-1}, f^n])` over the distinct prefix letters `c`.
    pub fn seeds(&self, n: i64) -> Result<Vec<QuotientClass>> {
        self.prefix_letters().iter().map(|l| commutator_tau(&Word::single(l.inverse()), &self.f, n)).collect()
    }

    /// Sp images of the distinct letters of the untwisted factorization.
    pub fn action_gens(&self) -> Vec<SpMap> {
        let mut out: Vec<SpMap> = Vec::new();
        for l in self.base.letters() {
            let m = l.matrix();
            if !m.is_identity() && !out.contains(&m) {
                out.push(m);
            }
        }
        out
    }

    /// The primitive class whose multiples witness the certificates.
    pub fn witness_class(&self) -> Result<QuotientClass> {
        match self.kind {
            Context::Mck => v_class(self.g),
            Context::Chain => w_class(self.g),
        }
    }
}

fn bp(cls: HomologyClass, a: HomologyClass, b: HomologyClass) -> Result<BoundingPairGen> {
    BoundingPairGen::new(cls, vec![(a, b)])
}

fn torelli_f_from(table: &CurveTable) -> Result<TorelliWord> {
    let fg = table.genus();
    let gen = bp(table.get("x")?.clone(), HomologyClass::a(fg, 1), HomologyClass::b(fg, 1))?;
    let mut factors = vec![TorelliFactor { conjugator: Word::empty(fg), generator: gen.clone(), exp: 1 }];
    if table.context == Context::Mck {
        factors.push(TorelliFactor { conjugator: table.half_word()?, generator: gen, exp: 1 });
    }
    TorelliWord::new(fg, factors)
}

/// The Torelli element `f`: in the MCK context the product of the genus-1
/// bounding pair map `T_x T_y^{-1}` (side `(a_1, b_1)`, class `b_2`) and its
/// conjugate by the half-word; in the chain context the bounding pair map alone.
pub fn torelli_f(g: usize, ctx: Context) -> Result<TorelliWord> {
    torelli_f_from(&CurveTable::load_validated(ctx, g)?)
}

/// Untwisted MCK fibration on the genus-`2g` fiber.
pub fn mck(g: usize) -> Result<FibrationSpec> {
    FamilySpec::new(Context::Mck, g)?.fibration(0)
}

pub fn twisted_mck(g: usize, n: u64) -> Result<FibrationSpec> {
    FamilySpec::new(Context::Mck, g)?.fibration(n)
}

pub fn chain_family(g: usize, n: u64) -> Result<FibrationSpec> {
    FamilySpec::new(Context::Chain, g)?.fibration(n)
}

/// `v = τ([T_{B_0}^{-1}, f])` computed through the commutator pipeline.
pub fn v_class(g: usize) -> Result<QuotientClass> {
    let table = CurveTable::load_validated(Context::Mck, g)?;
    let f = torelli_f_from(&table)?;
    let b0 = TwistLetter::nonseparating(table.get("B0")?.clone(), Power::Neg)?;
    commutator_tau(&Word::single(b0), &f, 1)
}

/// `(a_1 ∧ c_1 + a_{2g} ∧ c_{2g-1}) ∧ B_0`, reduced.
pub fn v_closed_form(g: usize) -> Result<QuotientClass> {
    check_genus(Context::Mck, g)?;
    let fg = Genus(2 * g);
    let b0 = (1..=2 * g).fold(HomologyClass::zero(fg), |s, i| s + HomologyClass::a(fg, i));
    let w = Wedge3::wedge(&HomologyClass::a(fg, 1), &c_class(fg, 1), &b0)?
        .add(&Wedge3::wedge(&HomologyClass::a(fg, 2 * g), &c_class(fg, 2 * g - 1), &b0)?);
    Ok(reduce_to_quotient(&w))
}

/// `w = a_1 ∧ a_2 ∧ b_1`, reduced, on the genus-`g` fiber.
pub fn w_class(g: usize) -> Result<QuotientClass> {
    check_genus(Context::Chain, g)?;
    let fg = Genus(g);
    Ok(reduce_to_quotient(&Wedge3::wedge(&HomologyClass::a(fg, 1), &HomologyClass::a(fg, 2), &HomologyClass::b(fg, 1))?))
}

/// The twist `T_{c_4}^{-1}` of the chain context as a one-letter word.
pub fn chain_letter_inverse(g: usize, i: usize) -> Result<Word> {
    let table = CurveTable::load_validated(Context::Chain, g)?;
    Ok(Word::single(TwistLetter::nonseparating(table.get(&format!("c{i}"))?.clone(), Power::Neg)?))
}

/// Sp-level verification of every MCK ingredient for one `g`.
pub fn mck_identity_checks(g: usize) -> Result<(bool, bool, bool, usize)> {
    let fam = FamilySpec::new(Context::Mck, g)?;
    let full = verify_factorization(&fam.base).passed;
    let table = CurveTable::load_validated(Context::Mck, g)?;
    let eta = eta_matrix(g);
    let half = table.half_word()?.sp_image() == eta;
    let order_two = eta.compose(&eta)?.is_identity();
    Ok((full, half, order_two, fixed_subspace_dim(&eta)))
}

/// Fiber/section incidence of the reducible fiber for the two blowdown
/// choices: rows `F_1, F_2`, columns the four sections.
///
/// Case 1: `F_1` meets `σ_4` and `F_2` meets `σ_1, σ_2, σ_3`.
/// Case 2: `F_1` meets no section and `F_2` meets all four.
pub fn blowdown_incidence(case: u8) -> Result<IntMatrix> {
    match case {
        1 => Ok(IntMatrix::from_i64_rows(&[&[0, 0, 0, 1], &[1, 1, 1, 0]])),
        2 => Ok(IntMatrix::from_i64_rows(&[&[0, 0, 0, 0], &[1, 1, 1, 1]])),
        _ => Err(Error::Precondition(format!("blowdown case must be 1 or 2, got {case}"))),
    }
}

/// Saturated τ-lattices `L_n` of one family, computed on demand and cached.
pub struct FamilyLattices {
    spec: FamilySpec,
    gens: Vec<SpMap>,
    cache: Mutex<HashMap<u64, Arc<Sublattice>>>,
}

impl FamilyLattices {
    pub fn new(spec: FamilySpec) -> Self {
        let gens = spec.action_gens();
        FamilyLattices { spec, gens, cache: Mutex::new(HashMap::new()) }
    }

    pub fn spec(&self) -> &FamilySpec {
        &self.spec
    }

    /// Smallest lattice containing the seeds of `X_n` and closed under the
    /// Sp action of the untwisted factorization's letters.
    pub fn lattice(&self, n: u64) -> Result<Arc<Sublattice>> {
        if let Some(l) = self.cache.lock().expect("cache lock").get(&n) {
            return Ok(l.clone());
        }
        let seeds = self.spec.seeds(n as i64)?;
        let l = Arc::new(saturate(&seeds, &self.gens)?);
        self.cache.lock().expect("cache lock").insert(n, l.clone());
        Ok(l)
    }
}

/// Machine-checkable record that `L_n` and `L_m` cannot be carried onto each other.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub family: Context,
    pub g: usize,
    pub n: u64,
    pub m: u64,
    pub v: QuotientClass,
    pub v_primitive: bool,
    #[serde(with = "crate::serde_int::scalar")]
    pub d_n: BigInt,
    #[serde(with = "crate::serde_int::scalar")]
    pub d_m: BigInt,
    /// `n·v ∈ L_n`.
    pub n_v_in_lattice_n: bool,
    /// `m·v ∈ L_m`.
    pub m_v_in_lattice_m: bool,
    pub contradiction: String,
    pub lattice_n: Sublattice,
    pub lattice_m: Sublattice,
    pub certification: &'static str,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum DistinguishOutcome {
    Certificate(Box<Certificate>),
    NoCertificate { family: Context, g: usize, n: u64, m: u64, reason: String },
}

impl DistinguishOutcome {
    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            DistinguishOutcome::Certificate(c) => Some(c),
            DistinguishOutcome::NoCertificate { .. } => None,
        }
    }
}

/// `a | b` with `0 | b` only for `b = 0`.
pub fn divides(a: &BigInt, b: &BigInt) -> bool {
    if a.is_zero() {
        b.is_zero()
    } else {
        (b % a).is_zero()
    }
}

/// Compares the contents of the saturated τ-lattices of `X_n` and `X_m`.
///
/// A mapping class carrying one factorization's Torelli subgroup onto the
/// other's would carry `L_n` onto `L_m`, forcing `d_n | m` and `d_m | n`
/// once `n·v ∈ L_n` and `m·v ∈ L_m` with `v` primitive. Equal parameters
/// give no certificate and no claim either way.
pub fn distinguish(n: u64, m: u64, fam: &FamilyLattices) -> Result<DistinguishOutcome> {
    let spec = fam.spec();
    if n == m {
        return Ok(DistinguishOutcome::NoCertificate {
            family: spec.kind,
            g: spec.g,
            n,
            m,
            reason: "equal parameters; nothing is claimed".into(),
        });
    }
    let v = spec.witness_class()?;
    let v_primitive = is_primitive_quotient(&v)?;
    let (ln, lm) = (fam.lattice(n)?, fam.lattice(m)?);
    let (bn, bm) = (BigInt::from(n), BigInt::from(m));
    let (d_n, d_m) = (ln.content(), lm.content());
    let n_v_in_lattice_n = ln.contains(&v.scale(&bn).coords);
    let m_v_in_lattice_m = lm.contains(&v.scale(&bm).coords);
    let holds = v_primitive && n_v_in_lattice_n && m_v_in_lattice_m && !(divides(&d_n, &bm) && divides(&d_m, &bn));
    if !holds {
        return Ok(DistinguishOutcome::NoCertificate {
            family: spec.kind,
            g: spec.g,
            n,
            m,
            reason: format!("contents d_n = {d_n}, d_m = {d_m} give no divisibility contradiction"),
        });
    }
    let contradiction = if !divides(&d_n, &bm) {
        format!("d_n = {d_n} does not divide m = {m}")
    } else {
        format!("d_m = {d_m} does not divide n = {n}")
    };
    Ok(DistinguishOutcome::Certificate(Box::new(Certificate {
        family: spec.kind,
        g: spec.g,
        n,
        m,
        v,
        v_primitive,
        d_n,
        d_m,
        n_v_in_lattice_n,
        m_v_in_lattice_m,
        contradiction: format!(
            "{contradiction}; the τ-lattices of the two Torelli subgroups are not related by any symplectic automorphism"
        ),
        lattice_n: (*ln).clone(),
        lattice_m: (*lm).clone(),
        certification: crate::invariants::HOMOLOGY_LEVEL,
    })))
}
