//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each,
//! and exits nonzero if any criterion fails.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::time::Instant;

use monolab::homology::{fixed_subspace_dim, twist_matrix};
use monolab::hurwitz::{ExploreVerdict, ModFactorization, QuotientConfig, Verdict};
use monolab::invariants::{b1_homological, blowdown_parity_report, endo_signature, full_report, BlowdownParity};
use monolab::johnson::{
    commutator_tau, embed_h, is_primitive_quotient, reduce_to_quotient, sp_action_quotient, tables, tau_word,
    BoundingPairGen, QuotientClass, TorelliFactor, TorelliWord, Wedge3,
};
use monolab::lattice::{enumerate_pattern, smith_normal_form, IntLattice};
use monolab::scenarios::{
    blowdown_incidence, chain_family, chain_letter_inverse, distinguish, eta_matrix, twisted_mck, v_class,
    v_closed_form, w_class, Certificate, Context, CurveTable, DistinguishOutcome, FamilyLattices, FamilySpec,
};
use monolab::word::{elementary_transformation, partial_conjugation, verify_factorization, Direction};
use monolab::{Genus, HomologyClass, IntMatrix, Power, PositiveFactorization, SpMap, TwistLetter, Word};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn e<E: std::fmt::Display>(x: E) -> String {
    x.to_string()
}

fn big(x: u64) -> BigInt {
    BigInt::from(x)
}

fn criterion_1() -> Check {
    for g in 2..=6 {
        let fam = FamilySpec::new(Context::Mck, g).map_err(e)?;
        ensure!(fam.base.word().sp_image().is_identity(), "g={g}: full word is not the identity");
        let table = CurveTable::load_validated(Context::Mck, g).map_err(e)?;
        let eta = eta_matrix(g);
        ensure!(table.half_word().map_err(e)?.sp_image() == eta, "g={g}: half-word image differs from eta");
        ensure!(eta.compose(&eta).map_err(e)?.is_identity(), "g={g}: eta^2 != I");
        ensure!(fixed_subspace_dim(&eta) == 2 * g, "g={g}: fixed dimension {}", fixed_subspace_dim(&eta));
    }
    Ok(())
}

fn criterion_2() -> Check {
    for g in 2..=5usize {
        for n in 0..=10 {
            let r = full_report(&twisted_mck(g, n).map_err(e)?).map_err(e)?;
            let got = (r.chi, r.sigma, r.b1, r.b2_plus, r.b2);
            let want = (8 - 4 * g as i64, -4, 2 * g as i64, 1, 6);
            ensure!(got == want, "g={g} n={n}: got {got:?}, want {want:?}");
        }
    }
    Ok(())
}

fn criterion_3() -> Check {
    for g in 2..=3 {
        for n in 0..=2 {
            let s = twisted_mck(g, n).map_err(e)?;
            let one = blowdown_parity_report(&s, &blowdown_incidence(1).map_err(e)?).map_err(e)?;
            ensure!(one.parity == BlowdownParity::Even, "g={g} n={n}: case 1 gave {:?}", one.parity);
            ensure!(one.complement_gram == vec![vec![0, 1], vec![1, 2]], "case 1 Gram {:?}", one.complement_gram);
            let two = blowdown_parity_report(&s, &blowdown_incidence(2).map_err(e)?).map_err(e)?;
            ensure!(two.parity == BlowdownParity::Odd, "g={g} n={n}: case 2 gave {:?}", two.parity);
        }
    }
    Ok(())
}

fn criterion_4() -> Check {
    for g in 2..=3 {
        let v = v_class(g).map_err(e)?;
        ensure!(is_primitive_quotient(&v).map_err(e)?, "g={g}: v is not primitive");
        ensure!(v == v_closed_form(g).map_err(e)?, "g={g}: closed form and pipeline disagree");
        let table = CurveTable::load_validated(Context::Mck, g).map_err(e)?;
        let b0 = TwistLetter::nonseparating(table.get("B0").map_err(e)?.clone(), Power::Neg).map_err(e)?;
        let f = FamilySpec::new(Context::Mck, g).map_err(e)?.f;
        for n in 1..=8i64 {
            let c = commutator_tau(&Word::single(b0.clone()), &f, n).map_err(e)?;
            ensure!(c == v.scale(&BigInt::from(n)), "g={g} n={n}: commutator is not n·v");
        }
    }
    Ok(())
}

fn gcd_all(rows: &[Vec<BigInt>]) -> BigInt {
    rows.iter().flatten().fold(BigInt::zero(), |g, x| g.gcd(x))
}

/// Re-derives everything a certificate claims about `L_n` from scratch:
/// seeds through literal commutator Torelli words, invariance through the
/// lift-and-reduce action, content and primitivity through plain gcds.
fn check_lattice(spec: &FamilySpec, n: u64, basis: &monolab::lattice::Sublattice, d: &BigInt, v: &QuotientClass) -> Check {
    let g = spec.genus();
    let mut gens: Vec<SpMap> = Vec::new();
    for l in spec.base.letters() {
        if l.is_separating() {
            continue;
        }
        for p in [Power::Pos, Power::Neg] {
            let m = twist_matrix(l.curve(), p);
            if !gens.contains(&m) {
                gens.push(m);
            }
        }
    }
    let nv = v.scale(&big(n));
    let mut nv_is_seed = false;
    for c in spec.prefix_letters() {
        let x = Word::single(c.inverse());
        let seed = tau_word(&spec.f.commutator(&x, n as i64).map_err(e)?).map_err(e)?;
        ensure!(basis.contains(&seed.coords), "n={n}: seed for {} not in the lattice", c.curve());
        nv_is_seed |= seed == nv;
    }
    ensure!(nv_is_seed, "n={n}: n·v is not one of the seeds");
    for row in basis.basis() {
        let q = QuotientClass::from_coords(g, row.clone()).map_err(e)?;
        for m in &gens {
            let img = sp_action_quotient(m, &q).map_err(e)?;
            ensure!(basis.contains(&img.coords), "n={n}: lattice is not invariant");
        }
    }
    ensure!(&gcd_all(basis.basis()) == d, "n={n}: recomputed content {} != {d}", gcd_all(basis.basis()));
    ensure!(gcd_all(std::slice::from_ref(&v.coords)).is_one(), "v is not primitive");
    ensure!(basis.contains(&nv.coords), "n={n}: n·v not in the lattice");
    Ok(())
}

fn check_certificate(spec: &FamilySpec, c: &Certificate) -> Check {
    check_lattice(spec, c.n, &c.lattice_n, &c.d_n, &c.v)?;
    check_lattice(spec, c.m, &c.lattice_m, &c.d_m, &c.v)?;
    let divides = |a: &BigInt, b: &BigInt| if a.is_zero() { b.is_zero() } else { (b % a).is_zero() };
    ensure!(
        !(divides(&c.d_n, &big(c.m)) && divides(&c.d_m, &big(c.n))),
        "no divisibility contradiction for ({}, {})",
        c.n,
        c.m
    );
    Ok(())
}

fn criterion_5() -> Check {
    for (ctx, g) in [(Context::Mck, 2), (Context::Mck, 3)] {
        let spec = FamilySpec::new(ctx, g).map_err(e)?;
        let fam = FamilyLattices::new(spec.clone());
        for n in 0..=8u64 {
            for m in n + 1..=8 {
                let out = distinguish(n, m, &fam).map_err(e)?;
                let c = out.certificate().ok_or_else(|| format!("g={g} ({n}, {m}): no certificate"))?;
                ensure!(c.d_n == big(n) && c.d_m == big(m), "g={g} ({n}, {m}): contents {} {}", c.d_n, c.d_m);
                check_certificate(&spec, c).map_err(|s| format!("g={g} ({n}, {m}): {s}"))?;
            }
            ensure!(distinguish(n, n, &fam).map_err(e)?.certificate().is_none(), "g={g}: ({n}, {n}) gave a certificate");
        }
    }
    Ok(())
}

fn criterion_6() -> Check {
    for g in 3..=4usize {
        let gi = g as i64;
        for n in 0..=5 {
            let s = chain_family(g, n).map_err(e)?;
            let f = PositiveFactorization::of_identity(s.word()).map_err(e)?;
            ensure!(verify_factorization(&f).passed, "g={g} n={n}: Sp-level verification failed");
            ensure!(endo_signature(&s).map_err(e)? == -12 * gi * (gi + 1), "g={g} n={n}: signature");
            ensure!(b1_homological(&s).map_err(e)? == 0, "g={g} n={n}: b1");
            let r = full_report(&s).map_err(e)?;
            let want = (6 * gi * gi - 2 * gi + 1, 18 * gi * gi + 10 * gi + 1);
            ensure!((r.b2_plus, r.b2_minus) == want, "g={g} n={n}: b2± {:?}", (r.b2_plus, r.b2_minus));
        }
        let w = w_class(g).map_err(e)?;
        ensure!(is_primitive_quotient(&w).map_err(e)?, "g={g}: w not primitive");
        let f = FamilySpec::new(Context::Chain, g).map_err(e)?.f;
        let c4 = chain_letter_inverse(g, 4).map_err(e)?;
        for n in 1..=8i64 {
            ensure!(commutator_tau(&c4, &f, n).map_err(e)? == w.scale(&BigInt::from(n)), "g={g} n={n}: not n·w");
        }
    }
    Ok(())
}

/// `γ_{2l-1} = a_l`, `γ_{2l} = b_l`.
fn gamma(g: Genus, i: usize) -> HomologyClass {
    let l = i.div_ceil(2);
    if i % 2 == 1 {
        HomologyClass::a(g, l)
    } else {
        HomologyClass::b(g, l)
    }
}

fn criterion_7() -> Check {
    for gg in 2..=4 {
        let g = Genus(gg);
        let t = tables(g);
        let mut rows: Vec<Vec<BigInt>> =
            t.quotient_triples().iter().map(|&[i, j, k]| Wedge3::basis_triple(g, i, j, k).coords).collect();
        for i in 1..=2 * gg {
            rows.push(embed_h(&gamma(g, i)).coords);
        }
        ensure!(rows.len() == t.wedge_dim(), "G={gg}: {} rows for dimension {}", rows.len(), t.wedge_dim());
        let snf = smith_normal_form(&IntMatrix::from_rows(rows).map_err(e)?);
        ensure!(snf.diagonal().iter().all(One::is_one), "G={gg}: change of basis is not unimodular");
        for k in 0..2 * gg {
            ensure!(reduce_to_quotient(&embed_h(&HomologyClass::unit(g, k))).is_zero(), "G={gg}: ω∧e_{k} survives");
        }
    }
    Ok(())
}

fn tuples(xs: &[[[i64; 2]; 2]]) -> BTreeSet<Vec<Vec<BigInt>>> {
    xs.iter().map(|t| t.iter().map(|v| v.iter().map(|&x| BigInt::from(x)).collect()).collect()).collect()
}

fn criterion_8() -> Check {
    // Case 1: U in the basis ([Σ], [S]); pattern α1² = 0, α2² = 2, α1·α2 = 1.
    let u = IntLattice::hyperbolic();
    let p1 = IntMatrix::from_i64_rows(&[&[0, 1], &[1, 2]]);
    let got: BTreeSet<_> = enumerate_pattern(&u, &p1, 5).map_err(e)?.into_iter().collect();
    let want = tuples(&[[[1, 0], [1, 1]], [[-1, 0], [-1, -1]], [[0, 1], [1, 1]], [[0, -1], [-1, -1]]]);
    ensure!(got == want, "case 1: got {got:?}");
    // Case 2: [Σ]² = 1, [S]² = 0, [Σ]·[S] = 1.
    let twisted = IntLattice::from_i64_rows(&[&[1, 1], &[1, 0]]).map_err(e)?;
    let p2 = IntMatrix::from_i64_rows(&[&[-1, 1], &[1, 3]]);
    let got: BTreeSet<_> = enumerate_pattern(&twisted, &p2, 5).map_err(e)?.into_iter().collect();
    let want = tuples(&[[[1, -1], [-3, 1]], [[-1, 1], [3, -1]], [[1, -1], [1, 1]], [[-1, 1], [-1, -1]]]);
    ensure!(got == want, "case 2 (α1, α2): got {got:?}");
    let p34 = IntMatrix::from_i64_rows(&[&[1, 1], &[1, 1]]);
    let got: BTreeSet<_> = enumerate_pattern(&twisted, &p34, 5).map_err(e)?.into_iter().collect();
    let want = tuples(&[[[1, 0], [1, 0]], [[-1, 0], [-1, 0]]]);
    ensure!(got == want, "case 2 (α3, α4): got {got:?}");
    Ok(())
}

fn letter_strategy(g: usize) -> impl Strategy<Value = TwistLetter> {
    let nonsep = proptest::collection::vec(-2i64..=2, 2 * g)
        .prop_filter("primitive", |v| v.iter().fold(0i64, |a, &x| a.gcd(&x)) == 1)
        .prop_map(move |v| TwistLetter::nonseparating(HomologyClass::from_i64(Genus(g), &v).unwrap(), Power::Pos).unwrap());
    let sep = (1..g).prop_map(move |h| TwistLetter::separating(Genus(g), h, g - h, Power::Pos).unwrap());
    prop_oneof![9 => nonsep, 1 => sep]
}

fn word_strategy(genera: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Word> {
    genera.prop_flat_map(|g| {
        proptest::collection::vec(letter_strategy(g), 2..8).prop_map(move |ls| Word::new(Genus(g), ls).unwrap())
    })
}

fn signed_word(w: &Word, signs: &[bool]) -> Word {
    let letters = w
        .letters()
        .iter()
        .zip(signs.iter().cycle())
        .map(|(l, &neg)| if neg && !l.is_separating() { l.inverse() } else { l.clone() })
        .collect();
    Word::new(w.genus(), letters).unwrap()
}

fn runner() -> TestRunner {
    TestRunner::new(Config { cases: 1000, failure_persistence: None, ..Config::default() })
}

fn criterion_9() -> Check {
    // Hurwitz moves preserve the product and the letter counts.
    let moves = (word_strategy(2..=3), proptest::collection::vec((0usize..100, any::<bool>()), 1..12));
    runner()
        .run(&moves, |(w, mv)| {
            let f = PositiveFactorization::new(w.clone(), w.sp_image()).unwrap();
            let mut h = f.clone();
            for (i, right) in mv {
                let idx = 1 + i % (h.len() - 1);
                let dir = if right { Direction::Right } else { Direction::Left };
                h = elementary_transformation(&h, idx, dir).unwrap();
            }
            prop_assert_eq!(h.word().sp_image(), f.word().sp_image());
            prop_assert_eq!(h.word().counts(), f.word().counts());
            Ok(())
        })
        .map_err(|x| format!("moves: {x}"))?;

    // Partial conjugation: the product is preserved whenever the precondition admits the conjugator.
    let pc = (word_strategy(2..=3), 0usize..100, 1usize..3, any::<bool>(), proptest::collection::vec(any::<bool>(), 1..4));
    runner()
        .run(&pc, |(w, k, j, use_prefix, signs)| {
            let f = PositiveFactorization::new(w.clone(), w.sp_image()).unwrap();
            let k = 1 + k % f.len();
            let prefix = Word::new(w.genus(), w.letters()[w.len() - k..].to_vec()).unwrap();
            let conj = if use_prefix { prefix.power(j) } else { signed_word(&w, &signs) };
            match partial_conjugation(&f, k, &conj) {
                Ok(h) => {
                    prop_assert!(conj.sp_image().commutes_with(&prefix.sp_image()));
                    prop_assert_eq!(h.word().sp_image(), f.word().sp_image());
                    prop_assert!(verify_factorization(&h).passed);
                }
                Err(_) => {
                    prop_assert!(!use_prefix);
                    prop_assert!(!conj.sp_image().commutes_with(&prefix.sp_image()));
                }
            }
            Ok(())
        })
        .map_err(|x| format!("partial conjugation: {x}"))?;

    // Naturality of τ under conjugation; (∧³H)/H vanishes in genus 2.
    let nat = (word_strategy(3..=4), proptest::collection::vec(any::<bool>(), 1..4), 0usize..2, -2i64..=2);
    runner()
        .run(&nat, |(w, signs, which, exp)| {
            let g = w.genus();
            let gen = if which == 0 {
                BoundingPairGen::new(HomologyClass::b(g, 2), vec![(HomologyClass::a(g, 1), HomologyClass::b(g, 1))])
            } else {
                BoundingPairGen::new(
                    HomologyClass::b(g, 3),
                    vec![(HomologyClass::a(g, 1), HomologyClass::b(g, 1)), (HomologyClass::a(g, 2), HomologyClass::b(g, 2))],
                )
            }
            .map_err(|x| TestCaseError::fail(x.to_string()))?;
            let x = signed_word(&w, &signs);
            let tw = TorelliWord::new(g, vec![TorelliFactor { conjugator: Word::empty(g), generator: gen, exp }]).unwrap();
            let lhs = tau_word(&tw.conjugate(&x).unwrap()).unwrap();
            let rhs = sp_action_quotient(&x.sp_image(), &tau_word(&tw).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
            Ok(())
        })
        .map_err(|x| format!("naturality: {x}"))?;

    // Smith normal form postconditions.
    let mats = (1usize..=12, 1usize..=12).prop_flat_map(|(r, c)| proptest::collection::vec(-9i64..=9, r * c).prop_map(move |v| (r, c, v)));
    runner()
        .run(&mats, |(r, c, v)| {
            let rows: Vec<Vec<BigInt>> = v.chunks(c).map(|ch| ch.iter().map(|&x| BigInt::from(x)).collect()).collect();
            let m = IntMatrix::from_rows(rows).unwrap();
            let snf = smith_normal_form(&m);
            prop_assert_eq!(&(&snf.u * &m) * &snf.v, snf.d.clone());
            prop_assert!(snf.u.det().abs().is_one());
            prop_assert!(snf.v.det().abs().is_one());
            for i in 0..r {
                for j in 0..c {
                    if i != j {
                        prop_assert!(snf.d[(i, j)].is_zero());
                    }
                }
            }
            let d = snf.diagonal();
            prop_assert!(d.iter().all(|x| !x.is_negative()));
            for p in d.windows(2) {
                let ok = if p[0].is_zero() { p[1].is_zero() } else { (&p[1] % &p[0]).is_zero() };
                prop_assert!(ok, "{} does not divide {}", p[0], p[1]);
            }
            Ok(())
        })
        .map_err(|x| format!("snf: {x}"))?;
    Ok(())
}

const FORBIDDEN: [&str; 2] = ["equivalent", "diffeomorphic"];

/// String literals of a Rust source file, comments skipped.
fn string_literals(src: &str) -> Vec<String> {
    let b = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        match b[i] {
            b'/' if b.get(i + 1) == Some(&b'/') => {
                while i < b.len() && b[i] != b'\n' {
                    i += 1;
                }
            }
            b'/' if b.get(i + 1) == Some(&b'*') => {
                i += 2;
                while i + 1 < b.len() && !(b[i] == b'*' && b[i + 1] == b'/') {
                    i += 1;
                }
                i += 2;
            }
            b'\'' if b.get(i + 1) == Some(&b'"') && b.get(i + 2) == Some(&b'\'') => i += 3,
            b'\'' if b.get(i + 1) == Some(&b'\\') && b.get(i + 3) == Some(&b'\'') => i += 4,
            b'r' if matches!(b.get(i + 1), Some(b'#') | Some(b'"')) && (i == 0 || !b[i - 1].is_ascii_alphanumeric()) => {
                let mut j = i + 1;
                let mut hashes = 0;
                while b.get(j) == Some(&b'#') {
                    hashes += 1;
                    j += 1;
                }
                if b.get(j) != Some(&b'"') {
                    i += 1;
                    continue;
                }
                let close: Vec<u8> = std::iter::once(b'"').chain(std::iter::repeat_n(b'#', hashes)).collect();
                let start = j + 1;
                let mut k = start;
                while k < b.len() && !b[k..].starts_with(&close) {
                    k += 1;
                }
                out.push(String::from_utf8_lossy(&b[start..k.min(b.len())]).into_owned());
                i = k + close.len();
            }
            b'"' => {
                let start = i + 1;
                let mut k = start;
                while k < b.len() && b[k] != b'"' {
                    if b[k] == b'\\' {
                        k += 1;
                    }
                    k += 1;
                }
                out.push(String::from_utf8_lossy(&b[start..k.min(b.len())]).into_owned());
                i = k + 1;
            }
            _ => i += 1,
        }
    }
    out
}

fn rust_sources(dir: &Path, out: &mut Vec<PathBuf>) {
    for entry in std::fs::read_dir(dir).into_iter().flatten().flatten() {
        let p = entry.path();
        if p.is_dir() {
            rust_sources(&p, out);
        } else if p.extension().is_some_and(|x| x == "rs") {
            out.push(p);
        }
    }
}

fn clean(text: &str) -> Check {
    let lower = text.to_lowercase();
    for w in FORBIDDEN {
        ensure!(!lower.contains(w), "report text contains {w:?}: {text}");
    }
    Ok(())
}

fn criterion_10() -> Check {
    let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("../..");
    let mut files = Vec::new();
    for krate in ["crates/core/src", "crates/cli/src"] {
        rust_sources(&root.join(krate), &mut files);
    }
    ensure!(!files.is_empty(), "no sources found under {}", root.display());
    let mut seen = BTreeSet::new();
    for f in &files {
        let src = std::fs::read_to_string(f).map_err(e)?;
        for lit in string_literals(&src) {
            clean(&lit).map_err(|m| format!("{}: {m}", f.display()))?;
            seen.insert(lit);
        }
    }
    ensure!(seen.contains(monolab::SP_LEVEL), "scanner missed a known literal");
    // The vocabulary emitted by verdict-bearing reports.
    let verdicts: BTreeSet<String> = [Verdict::SameOrbit, Verdict::DistinctInBudget, Verdict::Unknown]
        .iter()
        .map(|v| serde_json::to_value(v).unwrap().as_str().unwrap().to_string())
        .collect();
    ensure!(
        verdicts == ["distinct-in-budget", "same-orbit", "unknown"].iter().map(|s| s.to_string()).collect(),
        "orbit verdicts {verdicts:?}"
    );
    let explore: BTreeSet<String> = [ExploreVerdict::Closed, ExploreVerdict::Unknown]
        .iter()
        .map(|v| serde_json::to_value(v).unwrap().as_str().unwrap().to_string())
        .collect();
    ensure!(explore == ["closed", "unknown"].iter().map(|s| s.to_string()).collect(), "explore verdicts {explore:?}");
    let fam = FamilyLattices::new(FamilySpec::new(Context::Mck, 2).map_err(e)?);
    for (n, m) in [(1, 2), (2, 2), (0, 3)] {
        let out = distinguish(n, m, &fam).map_err(e)?;
        let text = serde_json::to_string(&out).map_err(e)?;
        clean(&text)?;
        let tag = serde_json::to_value(&out).map_err(e)?["verdict"].as_str().unwrap_or_default().to_string();
        let want = if matches!(out, DistinguishOutcome::Certificate(_)) { "certificate" } else { "no-certificate" };
        ensure!(tag == want, "distinguish verdict tag {tag:?}");
    }
    let cfg = QuotientConfig::new(2, Genus(4)).map_err(e)?;
    let f0 = ModFactorization::from_word(&twisted_mck(2, 0).map_err(e)?.word(), cfg).map_err(e)?;
    let f1 = ModFactorization::from_word(&twisted_mck(2, 1).map_err(e)?.word(), cfg).map_err(e)?;
    let c = monolab::hurwitz::same_orbit(&f0, &f1, 200).map_err(e)?;
    clean(&serde_json::to_string(&c).map_err(e)?)?;
    Ok(())
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("MCK verification", criterion_1),
        ("invariant table of the twisted MCK family", criterion_2),
        ("blowdown parity", criterion_3),
        ("Johnson pipeline for v", criterion_4),
        ("distinguishing certificates", criterion_5),
        ("chain family", criterion_6),
        ("quotient basis unimodularity", criterion_7),
        ("lattice enumeration", criterion_8),
        ("property suites", criterion_9),
        ("honest-verdict audit", criterion_10),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let r = f();
        let secs = t.elapsed().as_secs_f64();
        match r {
            Ok(()) => println!("criterion {:>2}: PASS  {name} ({secs:.2}s)", k + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {name} ({secs:.2}s): {msg}", k + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
