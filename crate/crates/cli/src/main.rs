//! `monolab`: command-line front end for the homology-level computations.

mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use monolab::hurwitz::{orbit_explore_with_jobs, same_orbit, ModFactorization, QuotientConfig};
use monolab::invariants::{blowdown_parity_report, full_report, FibrationSpec};
use monolab::johnson::{is_primitive_quotient, tau_word};
use monolab::lattice::{enumerate_pattern, orthogonal_complement};
use monolab::scenarios::{
    blowdown_incidence, chain_family, distinguish, twisted_mck, v_class, w_class, Context, CurveTable, FamilyLattices,
    FamilySpec,
};
use monolab::schema::{
    emit, parse, FactorizationDoc, FibrationSpecDoc, LatticeDoc, TorelliWordDoc, WordDoc,
};
use monolab::word::{global_conjugation, partial_conjugation, verify_factorization, PositiveFactorization};
use monolab::{Error, IntMatrix};
use num_bigint::BigInt;
use rayon::prelude::*;
use serde_json::{json, Value};

use report::{Format, Report};

const EXIT_SCHEMA: u8 = 2;
const EXIT_PRECONDITION: u8 = 3;
const EXIT_USAGE: u8 = 64;
const EXIT_NO_INPUT: u8 = 66;

#[derive(Parser)]
#[command(name = "monolab", version, about = "Exact homology-level computations with Lefschetz fibration factorizations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    format: FormatFlags,
}

#[derive(Args)]
struct FormatFlags {
    /// Emit JSON.
    #[arg(long, global = true, conflicts_with_all = ["table", "csv"])]
    json: bool,
    /// Emit an aligned text table.
    #[arg(long, global = true, conflicts_with = "csv")]
    table: bool,
    /// Emit CSV.
    #[arg(long, global = true)]
    csv: bool,
}

impl FormatFlags {
    fn chosen(&self) -> Option<Format> {
        if self.json {
            Some(Format::Json)
        } else if self.table {
            Some(Format::Table)
        } else if self.csv {
            Some(Format::Csv)
        } else {
            None
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Mck,
    Chain,
}

impl From<Family> for Context {
    fn from(f: Family) -> Context {
        match f {
            Family::Mck => Context::Mck,
            Family::Chain => Context::Chain,
        }
    }
}

/// Either an input file or a built-in scenario.
#[derive(Args)]
struct Source {
    /// JSON input file.
    input: Option<PathBuf>,
    /// Use a built-in scenario instead of a file.
    #[arg(long, value_enum)]
    scenario: Option<Family>,
    #[arg(long)]
    genus: Option<usize>,
    #[arg(long, default_value_t = 0)]
    n: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a factorization multiplies to its target in Sp(2G, Z).
    Verify(Source),
    /// Euler characteristic, signature, Betti numbers and blowdown parity.
    Invariants {
        #[command(flatten)]
        source: Source,
        /// Blowdown incidence case (1 or 2) for the twisted MCK fibrations.
        #[arg(long)]
        blowdown_case: Option<u8>,
        /// Blowdown incidence matrix as a JSON file (rows: fiber components, columns: sections).
        #[arg(long)]
        incidence: Option<PathBuf>,
        /// Sweep a scenario over genera and parameters, e.g. `2..5,0..10`.
        #[arg(long)]
        grid: Option<String>,
    },
    /// Johnson homomorphism of a Torelli word, or the scenario classes.
    Johnson {
        /// TorelliWord JSON file.
        input: Option<PathBuf>,
        #[arg(long, value_enum)]
        scenario: Option<Family>,
        #[arg(long)]
        genus: Option<usize>,
    },
    /// Certificate that two members of a twisted family have different τ-lattices.
    Distinguish {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        genus: usize,
        #[arg(long, required_unless_present = "grid")]
        n: Option<u64>,
        #[arg(long, required_unless_present = "grid")]
        m: Option<u64>,
        /// Emit certificates for every pair `0 <= n < m <= N` instead.
        #[arg(long)]
        grid: Option<u64>,
    },
    /// Partial (or global) conjugation of a factorization.
    Conjugate {
        /// Factorization JSON file.
        input: PathBuf,
        /// Word JSON file with the conjugator.
        #[arg(long)]
        by: PathBuf,
        /// Number of trailing letters to conjugate; all letters when omitted.
        #[arg(long)]
        k: Option<usize>,
    },
    /// Orbit search under elementary transformations modulo m.
    Hurwitz {
        #[command(subcommand)]
        action: HurwitzAction,
    },
    /// Integral lattice utilities.
    Lattice {
        #[command(subcommand)]
        action: LatticeAction,
    },
    /// Built-in scenario data.
    Scenario {
        #[command(subcommand)]
        action: ScenarioAction,
    },
}

#[derive(Args)]
struct SearchFlags {
    #[arg(long = "mod")]
    modulus: u64,
    #[arg(long, default_value_t = 10_000)]
    budget: usize,
    #[arg(long, default_value_t = 0)]
    jobs: usize,
}

#[derive(Subcommand)]
enum HurwitzAction {
    Explore {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        search: SearchFlags,
    },
    Compare {
        first: PathBuf,
        second: PathBuf,
        #[command(flatten)]
        search: SearchFlags,
    },
}

#[derive(Subcommand)]
enum LatticeAction {
    /// Rank, determinant, signature and parity.
    Signature { input: PathBuf },
    /// Orthogonal complement of `classes`.
    Complement { input: PathBuf },
    /// Tuples realizing `pattern` with coefficients in `[-bound, bound]`.
    Enumerate {
        input: PathBuf,
        #[arg(long)]
        bound: Option<i64>,
    },
}

#[derive(Subcommand)]
enum ScenarioAction {
    /// Twisted MCK fibration on the genus-2g fiber.
    Mck {
        #[arg(long)]
        genus: usize,
        #[arg(long, default_value_t = 0)]
        n: u64,
    },
    /// Chain-relation family on the genus-g fiber.
    Chain {
        #[arg(long)]
        genus: usize,
        #[arg(long, default_value_t = 0)]
        n: u64,
    },
    /// Curve table with every validation check.
    Curves {
        #[arg(long, value_enum)]
        context: Family,
        #[arg(long)]
        genus: usize,
    },
}

#[derive(Debug)]
enum CliError {
    Core(Error),
    NoInput(PathBuf, std::io::Error),
    Usage(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Schema(_)
        | Error::DimensionMismatch { .. }
        | Error::InvalidLetter(_)
        | Error::InvalidMatrix(_)
        | Error::GenusMismatch { .. }
        | Error::NotPositive { .. }
        | Error::InvalidBoundingPair(_)
        | Error::ZeroClass
        | Error::NotPrimitive { .. }
        | Error::IndexOutOfRange { .. } => EXIT_SCHEMA,
        Error::Precondition(_)
        | Error::NotUnimodular { .. }
        | Error::NotHyperelliptic
        | Error::NoSection
        | Error::Transcription(_)
        | Error::NonIntegral(_)
        | Error::SaturationCap { .. } => EXIT_PRECONDITION,
    }
}

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::NoInput(path.to_path_buf(), e))
}

fn load<T: for<'de> serde::Deserialize<'de>>(path: &Path) -> CliResult<T> {
    Ok(parse(&read(path)?)?)
}

fn scenario_spec(family: Family, genus: Option<usize>, n: u64) -> CliResult<FibrationSpec> {
    let g = genus.ok_or_else(|| CliError::Usage("--scenario needs --genus".into()))?;
    Ok(match family {
        Family::Mck => twisted_mck(g, n)?,
        Family::Chain => chain_family(g, n)?,
    })
}

fn source_factorization(src: &Source) -> CliResult<PositiveFactorization> {
    match (&src.input, src.scenario) {
        (Some(p), None) => Ok(load::<FactorizationDoc>(p)?.to_factorization()?),
        (None, Some(f)) => Ok(PositiveFactorization::of_identity(scenario_spec(f, src.genus, src.n)?.word())?),
        _ => Err(CliError::Usage("give exactly one of an input file or --scenario".into())),
    }
}

fn source_fibration(src: &Source) -> CliResult<FibrationSpec> {
    match (&src.input, src.scenario) {
        (Some(p), None) => Ok(load::<FibrationSpecDoc>(p)?.to_spec()?),
        (None, Some(f)) => scenario_spec(f, src.genus, src.n),
        _ => Err(CliError::Usage("give exactly one of an input file or --scenario".into())),
    }
}

fn verify(src: &Source) -> CliResult<Report> {
    let f = source_factorization(src)?;
    let r = verify_factorization(&f);
    let verdict = if r.passed { "PASS" } else { "FAIL" };
    Ok(Report::new(emit("verify", &json!({
        "genus": f.genus().0,
        "letters": f.len(),
        "passed": r.passed,
        "level": r.level,
        "note": r.note,
    })))
    .row("Sp-level identity", verdict)
    .row("genus", f.genus().0)
    .row("letters", f.len())
    .row("note", r.note)
    .certification("exact Sp(2G, Z) product; necessary condition only"))
}

fn parse_range(s: &str) -> CliResult<(u64, u64)> {
    let bad = || CliError::Usage(format!("bad range {s:?} (expected A..B)"));
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let (a, b) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
    if a > b {
        return Err(bad());
    }
    Ok((a, b))
}

fn invariants(src: &Source, case: Option<u8>, incidence: Option<&Path>, grid: Option<&str>) -> CliResult<Report> {
    if let Some(grid) = grid {
        let family = src.scenario.ok_or_else(|| CliError::Usage("--grid needs --scenario".into()))?;
        let (gs, ns) = grid.split_once(',').ok_or_else(|| CliError::Usage("--grid expects G0..G1,N0..N1".into()))?;
        let ((g0, g1), (n0, n1)) = (parse_range(gs)?, parse_range(ns)?);
        let cells: Vec<(usize, u64)> =
            (g0..=g1).flat_map(|g| (n0..=n1).map(move |n| (g as usize, n))).collect();
        let rows: Vec<CliResult<Value>> = cells
            .par_iter()
            .map(|&(g, n)| {
                let r = full_report(&scenario_spec(family, Some(g), n)?)?;
                Ok(json!({"g": g, "n": n, "chi": r.chi, "sigma": r.sigma, "b1": r.b1, "b2": r.b2,
                          "b2_plus": r.b2_plus, "b2_minus": r.b2_minus}))
            })
            .collect();
        let rows = rows.into_iter().collect::<CliResult<Vec<_>>>()?;
        let columns = ["g", "n", "chi", "sigma", "b1", "b2", "b2_plus", "b2_minus"];
        return Ok(Report::grid(emit("invariants-grid", &json!({"rows": rows, "certification": "homology-level"})), &columns, &rows)
            .certification("homology-level: exact from the factorization data"));
    }
    let s = source_fibration(src)?;
    let r = full_report(&s)?;
    let mut json = serde_json::to_value(&r).expect("report serializes");
    let mut report = Report::empty()
        .row("chi", r.chi)
        .row("sigma", r.sigma)
        .row("b1", r.b1)
        .row("b2", r.b2)
        .row("b2_plus", r.b2_plus)
        .row("b2_minus", r.b2_minus)
        .row("signature argument", &r.signature_argument);
    let incidence = match (case, incidence) {
        (Some(_), Some(_)) => return Err(CliError::Usage("give at most one of --blowdown-case and --incidence".into())),
        (Some(c), None) => Some(blowdown_incidence(c)?),
        (None, Some(p)) => {
            let rows: Vec<Vec<i64>> = parse(&read(p)?)?;
            Some(IntMatrix::from_rows(rows.into_iter().map(|r| r.into_iter().map(Into::into).collect()).collect())?)
        }
        (None, None) => None,
    };
    if let Some(inc) = incidence {
        let b = blowdown_parity_report(&s, &inc)?;
        json["blowdown"] = serde_json::to_value(&b).expect("report serializes");
        report = report.row("blowdown parity", format!("{:?}", b.parity).to_lowercase()).row("blowdown reason", &b.reason);
    } else {
        report = report.row("parity", &r.parity_notes);
    }
    Ok(report.with_json(emit("invariants", &json)).certification("homology-level: exact from the factorization data"))
}

fn johnson(input: Option<&Path>, scenario: Option<Family>, genus: Option<usize>) -> CliResult<Report> {
    let (tw, extra) = match (input, scenario) {
        (Some(p), None) => (load::<TorelliWordDoc>(p)?.to_torelli_word()?, None),
        (None, Some(f)) => {
            let g = genus.ok_or_else(|| CliError::Usage("--scenario needs --genus".into()))?;
            let ctx = Context::from(f);
            let fam = FamilySpec::new(ctx, g)?;
            let witness = match ctx {
                Context::Mck => ("v", v_class(g)?),
                Context::Chain => ("w", w_class(g)?),
            };
            (fam.f.clone(), Some(witness))
        }
        _ => return Err(CliError::Usage("give exactly one of an input file or --scenario".into())),
    };
    let tau = tau_word(&tw)?;
    let primitive = if tau.is_zero() { None } else { Some(is_primitive_quotient(&tau)?) };
    let mut json = json!({
        "genus": tw.genus().0,
        "tau": tau,
        "content": int_json(&tau.content()),
        "primitive": primitive,
    });
    let mut report = Report::empty()
        .row("genus", tw.genus().0)
        .row("tau coordinates", fmt_coords(&tau.coords))
        .row("content", tau.content())
        .row("primitive", primitive.map_or("n/a (zero class)".to_string(), |p| p.to_string()));
    if let Some((name, w)) = extra {
        json[name] = serde_json::to_value(&w).expect("class serializes");
        report = report.row(name, fmt_coords(&w.coords)).row(format!("{name} primitive"), is_primitive_quotient(&w)?);
    }
    Ok(report.with_json(emit("johnson", &json)).certification("exact τ values in the quotient basis"))
}

fn fmt_coords<T: std::fmt::Display>(c: &[T]) -> String {
    let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

fn distinguish_cmd(family: Family, g: usize, n: Option<u64>, m: Option<u64>, grid: Option<u64>) -> CliResult<Report> {
    let fam = FamilyLattices::new(FamilySpec::new(family.into(), g)?);
    if let Some(max) = grid {
        let pairs: Vec<(u64, u64)> = (0..=max).flat_map(|a| (a + 1..=max).map(move |b| (a, b))).collect();
        for k in 0..=max {
            fam.lattice(k)?;
        }
        let outs = pairs.iter().map(|&(a, b)| distinguish(a, b, &fam)).collect::<Result<Vec<_>, _>>()?;
        let rows: Vec<Value> = outs
            .iter()
            .map(|o| match o.certificate() {
                Some(c) => json!({"n": c.n, "m": c.m, "verdict": "certificate", "d_n": int_json(&c.d_n),
                                  "d_m": int_json(&c.d_m)}),
                None => serde_json::to_value(o).expect("outcome serializes"),
            })
            .collect();
        let columns = ["n", "m", "verdict", "d_n", "d_m"];
        return Ok(Report::grid(emit("distinguish-grid", &json!({"family": Context::from(family), "g": g, "rows": rows})), &columns, &rows)
            .certification("homology-level certificates; each replays by exact lattice arithmetic"));
    }
    let (Some(n), Some(m)) = (n, m) else {
        return Err(CliError::Usage("distinguish needs --n and --m".into()));
    };
    let out = distinguish(n, m, &fam)?;
    let mut report = Report::empty();
    match out.certificate() {
        Some(c) => {
            report = report
                .row("verdict", "certificate")
                .row("d_n", &c.d_n)
                .row("d_m", &c.d_m)
                .row("v primitive", c.v_primitive)
                .row("n·v in L_n", c.n_v_in_lattice_n)
                .row("m·v in L_m", c.m_v_in_lattice_m)
                .row("contradiction", &c.contradiction);
        }
        None => {
            report = report.row("verdict", "no certificate");
        }
    }
    Ok(report
        .with_json(emit("distinguish", &out))
        .certification("homology-level certificate; nothing is claimed when no certificate is found")
        .default_format(Format::Json))
}

fn conjugate(input: &Path, by: &Path, k: Option<usize>) -> CliResult<Report> {
    let f = load::<FactorizationDoc>(input)?.to_factorization()?;
    let w = load::<WordDoc>(by)?.to_word(f.genus())?;
    let out = match k {
        Some(k) => partial_conjugation(&f, k, &w)?,
        None => global_conjugation(&f, &w)?,
    };
    let doc = FactorizationDoc::from_factorization(&out);
    Ok(Report::document(serde_json::to_value(&doc).expect("document serializes"))
        .row("letters", out.len())
        .row("Sp-level identity", if verify_factorization(&out).passed { "PASS" } else { "FAIL" })
        .certification("exact Sp(2G, Z) bookkeeping")
        .default_format(Format::Json))
}

fn jobs(n: usize) -> usize {
    if n == 0 {
        rayon::current_num_threads()
    } else {
        n
    }
}

fn hurwitz(action: &HurwitzAction) -> CliResult<Report> {
    match action {
        HurwitzAction::Explore { source, search } => {
            let f = source_factorization(source)?;
            let cfg = QuotientConfig::new(search.modulus, f.genus())?;
            let mf = ModFactorization::from_word(f.word(), cfg)?;
            let orbit = orbit_explore_with_jobs(&mf, search.budget, jobs(search.jobs))?;
            let r = &orbit.report;
            Ok(Report::new(emit("hurwitz-explore", r))
                .row("verdict", format!("{:?}", r.verdict).to_lowercase())
                .row("explored", r.explored)
                .row("budget", r.budget)
                .row("levels", r.levels)
                .row("digest", &r.digest)
                .row("note", r.note)
                .certification("exploratory: mod-m representation level only")
                .default_format(Format::Json))
        }
        HurwitzAction::Compare { first, second, search } => {
            let f1 = load::<FactorizationDoc>(first)?.to_factorization()?;
            let f2 = load::<FactorizationDoc>(second)?.to_factorization()?;
            let cfg = QuotientConfig::new(search.modulus, f1.genus())?;
            let m1 = ModFactorization::from_word(f1.word(), cfg)?;
            let m2 = ModFactorization::from_word(f2.word(), QuotientConfig::new(search.modulus, f2.genus())?)?;
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(jobs(search.jobs))
                .build()
                .map_err(|e| CliError::Usage(e.to_string()))?;
            let c = pool.install(|| same_orbit(&m1, &m2, search.budget))?;
            Ok(Report::new(emit("hurwitz-compare", &c))
                .row("verdict", serde_json::to_value(c.verdict).expect("verdict").as_str().unwrap_or_default())
                .row("explored", c.explored)
                .row("budget", c.budget)
                .row("note", c.note)
                .certification("exploratory: mod-m representation level only")
                .default_format(Format::Json))
        }
    }
}

/// A JSON number when it fits in `i64`, a decimal string otherwise.
fn int_json(x: &BigInt) -> Value {
    i64::try_from(x).map(Value::from).unwrap_or_else(|_| Value::from(x.to_string()))
}

fn lattice(action: &LatticeAction) -> CliResult<Report> {
    match action {
        LatticeAction::Signature { input } => {
            let doc: LatticeDoc = load(input)?;
            let l = doc.lattice()?;
            let s = l.signature();
            let parity = l.parity();
            Ok(Report::new(emit("lattice-signature", &json!({
                "rank": l.rank(),
                "det": int_json(&l.det()),
                "unimodular": l.is_unimodular(),
                "b_plus": s.b_plus,
                "b_minus": s.b_minus,
                "b_zero": s.b_zero,
                "sigma": s.sigma(),
                "parity": parity.to_string(),
            })))
            .row("rank", l.rank())
            .row("det", l.det())
            .row("unimodular", l.is_unimodular())
            .row("signature", format!("({}, {}, {})", s.b_plus, s.b_minus, s.b_zero))
            .row("parity", parity)
            .certification("exact integer arithmetic"))
        }
        LatticeAction::Complement { input } => {
            let doc: LatticeDoc = load(input)?;
            let (basis, comp) = orthogonal_complement(&doc.lattice()?, &doc.classes)?;
            let parity = if comp.rank() == 0 { "n/a".to_string() } else { comp.parity().to_string() };
            Ok(Report::new(emit("lattice-complement", &json!({
                "basis": basis,
                "gram": comp.gram().to_rows().iter().map(|r| r.iter().map(int_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
                "rank": comp.rank(),
                "parity": parity,
            })))
            .row("rank", comp.rank())
            .row("gram", format!("{}", comp.gram()))
            .row("parity", parity)
            .certification("exact integer arithmetic"))
        }
        LatticeAction::Enumerate { input, bound } => {
            let doc: LatticeDoc = load(input)?;
            let bound = bound.or(doc.bound).ok_or_else(|| CliError::Usage("enumeration needs a bound".into()))?;
            let sols = enumerate_pattern(&doc.lattice()?, &doc.pattern_matrix()?, bound)?;
            let rows: Vec<Value> = sols
                .iter()
                .map(|t| json!({"tuple": t.iter().map(|v| fmt_coords(v)).collect::<Vec<_>>().join(" ")}))
                .collect();
            Ok(Report::grid(emit("lattice-enumerate", &json!({"bound": bound, "count": sols.len(), "rows": rows})), &["tuple"], &rows)
                .certification("exhaustive search of the coefficient box"))
        }
    }
}

fn scenario(action: &ScenarioAction) -> CliResult<Report> {
    match action {
        ScenarioAction::Mck { genus, n } | ScenarioAction::Chain { genus, n } => {
            let s = match action {
                ScenarioAction::Mck { .. } => twisted_mck(*genus, *n)?,
                _ => chain_family(*genus, *n)?,
            };
            let doc = FibrationSpecDoc::from_spec(&s);
            Ok(Report::document(serde_json::to_value(&doc).expect("document serializes"))
                .row("fiber genus", s.fiber_genus().0)
                .row("letters", s.cycles().len())
                .row("sections", format!("{:?}", s.sections()))
                .row("hyperelliptic", s.hyperelliptic)
                .row("glued from hyperelliptic", s.glued_from_hyperelliptic)
                .certification("transcribed data, validated before use")
                .default_format(Format::Json))
        }
        ScenarioAction::Curves { context, genus } => {
            let t = CurveTable::load(Context::from(*context), *genus)?;
            let v = t.validate();
            let mut report = Report::new(emit("curves", &json!({"table": t, "validation": v, "passed": v.passed()})));
            for c in &v.checks {
                report = report.row(&c.constraint, if c.passed { "pass" } else { "FAIL" });
            }
            Ok(report.certification("transcription checked against every stated constraint").default_format(Format::Json))
        }
    }
}

fn run(cli: &Cli) -> CliResult<Report> {
    match &cli.command {
        Command::Verify(src) => verify(src),
        Command::Invariants { source, blowdown_case, incidence, grid } => {
            invariants(source, *blowdown_case, incidence.as_deref(), grid.as_deref())
        }
        Command::Johnson { input, scenario, genus } => johnson(input.as_deref(), *scenario, *genus),
        Command::Distinguish { family, genus, n, m, grid } => distinguish_cmd(*family, *genus, *n, *m, *grid),
        Command::Conjugate { input, by, k } => conjugate(input, by, *k),
        Command::Hurwitz { action } => hurwitz(action),
        Command::Lattice { action } => lattice(action),
        Command::Scenario { action } => scenario(action),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(report) => {
            print!("{}", report.render(cli.format.chosen()));
            ExitCode::SUCCESS
        }
        Err(CliError::Core(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
        Err(CliError::NoInput(p, e)) => {
            eprintln!("error: cannot read {}: {e}", p.display());
            ExitCode::from(EXIT_NO_INPUT)
        }
        Err(CliError::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("2..5").unwrap(), (2, 5));
        assert!(parse_range("5..2").is_err());
        assert!(parse_range("x").is_err());
    }

    #[test]
    fn error_classes() {
        assert_eq!(exit_code(&Error::Schema("x".into())), EXIT_SCHEMA);
        assert_eq!(exit_code(&Error::Transcription("x".into())), EXIT_PRECONDITION);
        assert_eq!(exit_code(&Error::NotHyperelliptic), EXIT_PRECONDITION);
    }

    #[test]
    fn parity_display_is_lowercase() {
        assert_eq!(monolab::lattice::Parity::Even.to_string(), "even");
    }
}
