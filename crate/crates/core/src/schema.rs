//! JSON documents read and written by the command-line tool.
//!
//! Integers are JSON numbers when they fit in `i64` and decimal strings
//! otherwise. Every document carries `schema_version`; inputs may omit it,
//! in which case the current version is assumed.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::homology::{Genus, HomologyClass, Power, SpMap};
use crate::invariants::FibrationSpec;
use crate::johnson::{BoundingPairGen, TorelliFactor, TorelliWord};
use crate::lattice::IntLattice;
use crate::matrix::IntMatrix;
use crate::word::{PositiveFactorization, TwistLetter, Word};

pub const SCHEMA_VERSION: u32 = 1;

fn current() -> u32 {
    SCHEMA_VERSION
}

fn one() -> i64 {
    1
}

fn check_version(v: u32) -> Result<()> {
    if v != SCHEMA_VERSION {
        return Err(Error::Schema(format!("unsupported schema_version {v} (expected {SCHEMA_VERSION})")));
    }
    Ok(())
}

fn class(g: Genus, coords: &[BigInt]) -> Result<HomologyClass> {
    HomologyClass::from_coords(g, coords.to_vec())
}

/// One Dehn twist. Separating letters carry `split` and an all-zero (or empty) `coords`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LetterDoc {
    #[serde(with = "crate::serde_int::vec", default)]
    pub coords: Vec<BigInt>,
    #[serde(default = "one")]
    pub power: i64,
    #[serde(default)]
    pub separating: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub split: Option<[usize; 2]>,
}

impl LetterDoc {
    pub fn to_letter(&self, g: Genus) -> Result<TwistLetter> {
        let power = Power::from_sign(self.power)?;
        if self.separating {
            let [h1, h2] = self.split.ok_or_else(|| Error::InvalidLetter("separating letter without split".into()))?;
            if self.coords.iter().any(|x| !x.is_zero()) {
                return Err(Error::InvalidLetter("separating letter with a nonzero class".into()));
            }
            if !self.coords.is_empty() && self.coords.len() != g.rank() {
                return Err(Error::DimensionMismatch { expected: g.rank(), got: self.coords.len() });
            }
            TwistLetter::separating(g, h1, h2, power)
        } else {
            if self.split.is_some() {
                return Err(Error::InvalidLetter("split given for a nonseparating letter".into()));
            }
            TwistLetter::nonseparating(class(g, &self.coords)?, power)
        }
    }

    pub fn from_letter(l: &TwistLetter) -> Self {
        LetterDoc {
            coords: l.curve().coords().to_vec(),
            power: l.power().sign(),
            separating: l.is_separating(),
            split: l.split().map(|(a, b)| [a, b]),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WordDoc {
    #[serde(default)]
    pub letters: Vec<LetterDoc>,
}

impl WordDoc {
    pub fn to_word(&self, g: Genus) -> Result<Word> {
        Word::new(g, self.letters.iter().map(|l| l.to_letter(g)).collect::<Result<_>>()?)
    }

    pub fn from_word(w: &Word) -> Self {
        WordDoc { letters: w.letters().iter().map(LetterDoc::from_letter).collect() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TargetDoc {
    Named(String),
    Matrix(#[serde(with = "crate::serde_int::mat")] Vec<Vec<BigInt>>),
}

impl Default for TargetDoc {
    fn default() -> Self {
        TargetDoc::Named("identity".into())
    }
}

/// A positive factorization of `target` (the identity unless given as a matrix).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorizationDoc {
    #[serde(default = "current")]
    pub schema_version: u32,
    pub genus: usize,
    pub letters: Vec<LetterDoc>,
    #[serde(default)]
    pub target: TargetDoc,
}

impl FactorizationDoc {
    pub fn to_factorization(&self) -> Result<PositiveFactorization> {
        check_version(self.schema_version)?;
        let g = Genus(self.genus);
        let word = WordDoc { letters: self.letters.clone() }.to_word(g)?;
        let target = match &self.target {
            TargetDoc::Named(s) if s == "identity" => SpMap::identity(g),
            TargetDoc::Named(s) => return Err(Error::Schema(format!("unknown target {s:?}"))),
            TargetDoc::Matrix(rows) => SpMap::from_matrix(g, IntMatrix::from_rows(rows.clone())?)?,
        };
        PositiveFactorization::new(word, target)
    }

    pub fn from_factorization(f: &PositiveFactorization) -> Self {
        let target = if f.target().is_identity() {
            TargetDoc::default()
        } else {
            TargetDoc::Matrix(f.target().matrix().to_rows())
        };
        FactorizationDoc {
            schema_version: SCHEMA_VERSION,
            genus: f.genus().0,
            letters: f.letters().iter().map(LetterDoc::from_letter).collect(),
            target,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorDoc {
    #[serde(with = "crate::serde_int::vec")]
    pub cls: Vec<BigInt>,
    /// Symplectic pairs `[α, β]` spanning the homology of the bounded side.
    pub side: Vec<[ClassCoords; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ClassCoords(#[serde(with = "crate::serde_int::vec")] pub Vec<BigInt>);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TorelliFactorDoc {
    #[serde(default = "WordDoc::empty")]
    pub conjugator: WordDoc,
    pub generator: GeneratorDoc,
    #[serde(default = "one")]
    pub exp: i64,
}

impl WordDoc {
    fn empty() -> Self {
        WordDoc { letters: Vec::new() }
    }
}

/// A product of conjugated bounding pair maps.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TorelliWordDoc {
    #[serde(default = "current")]
    pub schema_version: u32,
    pub genus: usize,
    pub factors: Vec<TorelliFactorDoc>,
}

impl TorelliWordDoc {
    pub fn to_torelli_word(&self) -> Result<TorelliWord> {
        check_version(self.schema_version)?;
        let g = Genus(self.genus);
        let factors = self
            .factors
            .iter()
            .map(|f| {
                let side = f
                    .generator
                    .side
                    .iter()
                    .map(|[a, b]| Ok((class(g, &a.0)?, class(g, &b.0)?)))
                    .collect::<Result<Vec<_>>>()?;
                let generator = BoundingPairGen::new(class(g, &f.generator.cls)?, side)?;
                Ok(TorelliFactor { conjugator: f.conjugator.to_word(g)?, generator, exp: f.exp })
            })
            .collect::<Result<Vec<_>>>()?;
        TorelliWord::new(g, factors)
    }

    pub fn from_torelli_word(t: &TorelliWord) -> Self {
        TorelliWordDoc {
            schema_version: SCHEMA_VERSION,
            genus: t.genus().0,
            factors: t
                .factors()
                .iter()
                .map(|f| TorelliFactorDoc {
                    conjugator: WordDoc::from_word(&f.conjugator),
                    generator: GeneratorDoc {
                        cls: f.generator.cls.coords().to_vec(),
                        side: f
                            .generator
                            .side
                            .iter()
                            .map(|(a, b)| [ClassCoords(a.coords().to_vec()), ClassCoords(b.coords().to_vec())])
                            .collect(),
                    },
                    exp: f.exp,
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FibrationSpecDoc {
    #[serde(default = "current")]
    pub schema_version: u32,
    pub fiber_genus: usize,
    pub cycles: Vec<LetterDoc>,
    #[serde(default)]
    pub sections: Vec<i64>,
    #[serde(default)]
    pub hyperelliptic: bool,
    #[serde(default)]
    pub glued_from_hyperelliptic: bool,
}

impl FibrationSpecDoc {
    pub fn to_spec(&self) -> Result<FibrationSpec> {
        check_version(self.schema_version)?;
        let g = Genus(self.fiber_genus);
        let cycles = self.cycles.iter().map(|l| l.to_letter(g)).collect::<Result<Vec<_>>>()?;
        Ok(FibrationSpec::new(g, cycles, self.sections.clone(), self.hyperelliptic)?
            .with_glued(self.glued_from_hyperelliptic))
    }

    pub fn from_spec(s: &FibrationSpec) -> Self {
        FibrationSpecDoc {
            schema_version: SCHEMA_VERSION,
            fiber_genus: s.fiber_genus().0,
            cycles: s.cycles().iter().map(LetterDoc::from_letter).collect(),
            sections: s.sections().to_vec(),
            hyperelliptic: s.hyperelliptic,
            glued_from_hyperelliptic: s.glued_from_hyperelliptic,
        }
    }
}

/// A symmetric Gram matrix, optionally with classes (complement) or a
/// target pattern and coefficient bound (enumeration).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeDoc {
    #[serde(default = "current")]
    pub schema_version: u32,
    #[serde(with = "crate::serde_int::mat")]
    pub gram: Vec<Vec<BigInt>>,
    #[serde(with = "crate::serde_int::mat", default, skip_serializing_if = "Vec::is_empty")]
    pub classes: Vec<Vec<BigInt>>,
    #[serde(with = "crate::serde_int::mat", default, skip_serializing_if = "Vec::is_empty")]
    pub pattern: Vec<Vec<BigInt>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<i64>,
}

impl LatticeDoc {
    pub fn lattice(&self) -> Result<IntLattice> {
        check_version(self.schema_version)?;
        IntLattice::new(IntMatrix::from_rows(self.gram.clone())?)
    }

    pub fn pattern_matrix(&self) -> Result<IntMatrix> {
        if self.pattern.is_empty() {
            return Err(Error::Schema("lattice document has no pattern".into()));
        }
        IntMatrix::from_rows(self.pattern.clone())
    }
}

/// Parses a document, mapping JSON errors to [`Error::Schema`].
pub fn parse<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))
}

/// Wraps a report as a JSON object tagged with `schema_version` and `kind`.
pub fn emit<T: Serialize>(kind: &str, value: &T) -> Value {
    let body = serde_json::to_value(value).expect("reports serialize");
    let mut out = Map::new();
    out.insert("schema_version".into(), Value::from(SCHEMA_VERSION));
    out.insert("kind".into(), Value::from(kind));
    match body {
        Value::Object(m) => out.extend(m),
        other => {
            out.insert("value".into(), other);
        }
    }
    Value::Object(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenarios::{mck, torelli_f, Context};

    #[test]
    fn factorization_round_trip() {
        let s = mck(2).unwrap();
        let f = PositiveFactorization::of_identity(s.word()).unwrap();
        let doc = FactorizationDoc::from_factorization(&f);
        let text = serde_json::to_string(&doc).unwrap();
        let back: FactorizationDoc = parse(&text).unwrap();
        assert_eq!(back.to_factorization().unwrap(), f);
    }

    #[test]
    fn torelli_round_trip() {
        let t = torelli_f(2, Context::Mck).unwrap();
        let text = serde_json::to_string(&TorelliWordDoc::from_torelli_word(&t)).unwrap();
        assert_eq!(parse::<TorelliWordDoc>(&text).unwrap().to_torelli_word().unwrap(), t);
    }

    #[test]
    fn fibration_round_trip() {
        let s = mck(2).unwrap();
        let text = serde_json::to_string(&FibrationSpecDoc::from_spec(&s)).unwrap();
        assert_eq!(parse::<FibrationSpecDoc>(&text).unwrap().to_spec().unwrap(), s);
    }

    #[test]
    fn schema_errors() {
        assert!(matches!(parse::<FactorizationDoc>("{\"genus\": 1}"), Err(Error::Schema(_))));
        assert!(matches!(
            parse::<FactorizationDoc>("{\"genus\": 1, \"letters\": [], \"extra\": 0}"),
            Err(Error::Schema(_))
        ));
        let doc: FactorizationDoc = parse("{\"genus\": 1, \"letters\": [{\"coords\": [1, 0, 0]}]}").unwrap();
        assert!(matches!(doc.to_factorization(), Err(Error::DimensionMismatch { .. })));
        let doc: FactorizationDoc = parse("{\"schema_version\": 9, \"genus\": 1, \"letters\": []}").unwrap();
        assert!(matches!(doc.to_factorization(), Err(Error::Schema(_))));
        let doc: FactorizationDoc = parse("{\"genus\": 1, \"letters\": [{\"coords\": [1, 0], \"power\": 2}]}").unwrap();
        assert!(matches!(doc.to_factorization(), Err(Error::InvalidLetter(_))));
    }

    #[test]
    fn big_integers_as_strings() {
        let doc: LatticeDoc = parse("{\"gram\": [[\"123456789012345678901234567890\"]]}").unwrap();
        assert_eq!(doc.gram[0][0].to_string(), "123456789012345678901234567890");
        let v = emit("lattice", &doc);
        assert_eq!(v["gram"][0][0], Value::from("123456789012345678901234567890"));
        assert_eq!(v["kind"], Value::from("lattice"));
    }
}
