//! Words in Dehn-twist letters and the factorization calculus.
//!
//! A word `T_{l_r} ... T_{l_1}` is stored as the list `[l_r, ..., l_1]`. The
//! letter `l_1` is the last entry and acts first, so `sp_image` multiplies the
//! letter matrices in list order. Letter indices in the moves below are
//! 1-based from the right, matching that notation.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::homology::{is_primitive, transvection, twist_matrix, Genus, HomologyClass, Power, SpMap};
use crate::SP_LEVEL;

/// One Dehn twist `T_c^{±1}`, seen through its homology class.
///
/// A separating curve has class zero; the genera of its two sides are kept
/// in `split` because the signature formula needs them.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TwistLetter {
    curve: HomologyClass,
    power: Power,
    split: Option<(usize, usize)>,
}

impl TwistLetter {
    /// A twist about a nonseparating curve; the class must be primitive.
    pub fn nonseparating(curve: HomologyClass, power: Power) -> Result<Self> {
        if curve.is_zero() {
            return Err(Error::InvalidLetter("nonseparating letter with zero class".into()));
        }
        if !is_primitive(&curve)? {
            return Err(Error::InvalidLetter(format!("class {curve} is not primitive")));
        }
        Ok(TwistLetter { curve, power, split: None })
    }

    /// A twist about a separating curve cutting the genus-`g` surface into
    /// pieces of genus `h1` and `h2`.
    pub fn separating(g: Genus, h1: usize, h2: usize, power: Power) -> Result<Self> {
        if h1 == 0 || h2 == 0 || h1 + h2 != g.0 {
            return Err(Error::InvalidLetter(format!("split ({h1}, {h2}) does not divide genus {g}")));
        }
        Ok(TwistLetter { curve: HomologyClass::zero(g), power, split: Some((h1, h2)) })
    }

    pub fn curve(&self) -> &HomologyClass {
        &self.curve
    }

    pub fn power(&self) -> Power {
        self.power
    }

    pub fn is_separating(&self) -> bool {
        self.split.is_some()
    }

    pub fn split(&self) -> Option<(usize, usize)> {
        self.split
    }

    pub fn genus(&self) -> Genus {
        self.curve.genus()
    }

    pub fn inverse(&self) -> Self {
        TwistLetter { power: self.power.inverse(), ..self.clone() }
    }

    pub fn with_power(&self, power: Power) -> Self {
        TwistLetter { power, ..self.clone() }
    }

    pub fn matrix(&self) -> SpMap {
        twist_matrix(&self.curve, self.power)
    }

    /// `h T_c h^{-1} = T_{h(c)}` at homology level. Separating letters stay put.
    pub fn conjugate_by(&self, m: &SpMap) -> Result<Self> {
        if self.is_separating() {
            return Ok(self.clone());
        }
        Ok(TwistLetter { curve: m.apply(&self.curve)?, ..self.clone() })
    }

    fn with_curve(&self, curve: HomologyClass) -> Self {
        TwistLetter { curve, ..self.clone() }
    }
}

/// A finite word in twist letters on a fixed genus.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word {
    genus: Genus,
    letters: Vec<TwistLetter>,
}

impl Word {
    pub fn new(genus: Genus, letters: Vec<TwistLetter>) -> Result<Self> {
        if let Some(l) = letters.iter().find(|l| l.genus() != genus) {
            return Err(Error::GenusMismatch { left: genus.0, right: l.genus().0 });
        }
        Ok(Word { genus, letters })
    }

    pub fn empty(genus: Genus) -> Self {
        Word { genus, letters: Vec::new() }
    }

    pub fn single(letter: TwistLetter) -> Self {
        Word { genus: letter.genus(), letters: vec![letter] }
    }

    pub fn genus(&self) -> Genus {
        self.genus
    }

    pub fn letters(&self) -> &[TwistLetter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_positive(&self) -> bool {
        self.letters.iter().all(|l| l.power == Power::Pos)
    }

    /// Product of the letter matrices, rightmost letter applied first.
    pub fn sp_image(&self) -> SpMap {
        let mut acc = SpMap::identity(self.genus);
        for l in &self.letters {
            acc = acc.compose(&l.matrix()).expect("letters share the genus");
        }
        acc
    }

    pub fn inverse(&self) -> Word {
        Word { genus: self.genus, letters: self.letters.iter().rev().map(TwistLetter::inverse).collect() }
    }

    /// `self · other` (so `other` acts first).
    pub fn concat(&self, other: &Word) -> Result<Word> {
        if self.genus != other.genus {
            return Err(Error::GenusMismatch { left: self.genus.0, right: other.genus.0 });
        }
        let mut letters = self.letters.clone();
        letters.extend(other.letters.iter().cloned());
        Ok(Word { genus: self.genus, letters })
    }

    pub fn power(&self, n: usize) -> Word {
        let mut letters = Vec::with_capacity(self.letters.len() * n);
        for _ in 0..n {
            letters.extend(self.letters.iter().cloned());
        }
        Word { genus: self.genus, letters }
    }

    /// Letter counts that Hurwitz moves cannot change.
    pub fn counts(&self) -> LetterCounts {
        let mut c = LetterCounts::default();
        for l in &self.letters {
            match l.split {
                None => c.nonseparating += 1,
                Some((h1, h2)) => *c.separating.entry(h1.min(h2)).or_insert(0) += 1,
            }
        }
        c
    }
}

/// `s_0` and `s_j` (separating letters whose smaller side has genus `j`).
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LetterCounts {
    pub nonseparating: usize,
    pub separating: BTreeMap<usize, usize>,
}

/// A positive word together with the mapping class it is claimed to equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PositiveFactorization {
    word: Word,
    target: SpMap,
}

impl PositiveFactorization {
    /// Checks positivity and genus only. Use [`verify_factorization`] (or
    /// [`PositiveFactorization::new_verified`]) for the product check.
    pub fn new(word: Word, target: SpMap) -> Result<Self> {
        if target.genus() != word.genus {
            return Err(Error::GenusMismatch { left: word.genus.0, right: target.genus().0 });
        }
        if let Some(p) = word.letters.iter().position(|l| l.power != Power::Pos) {
            return Err(Error::NotPositive { position: word.letters.len() - p });
        }
        Ok(PositiveFactorization { word, target })
    }

    /// A factorization of the identity.
    pub fn of_identity(word: Word) -> Result<Self> {
        let g = word.genus;
        Self::new(word, SpMap::identity(g))
    }

    pub fn new_verified(word: Word, target: SpMap) -> Result<Self> {
        let f = Self::new(word, target)?;
        if !verify_factorization(&f).passed {
            return Err(Error::Precondition("word's Sp image differs from the claimed target".into()));
        }
        Ok(f)
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn target(&self) -> &SpMap {
        &self.target
    }

    pub fn genus(&self) -> Genus {
        self.word.genus
    }

    pub fn letters(&self) -> &[TwistLetter] {
        &self.word.letters
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub passed: bool,
    pub level: &'static str,
    pub note: &'static str,
}

pub const NECESSARY_NOT_SUFFICIENT: &str =
    "equality in Sp(2G, Z) is necessary but not sufficient for a relation in the mapping class group";

/// Compares `sp_image` with the claimed target.
pub fn verify_factorization(f: &PositiveFactorization) -> VerifyReport {
    VerifyReport { passed: f.word.sp_image() == f.target, level: SP_LEVEL, note: NECESSARY_NOT_SUFFICIENT }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// `(l_{i+1}, l_i) -> (l_i, T_{l_i}^{-1}(l_{i+1}))`.
    Left,
    /// `(l_{i+1}, l_i) -> (T_{l_{i+1}}(l_i), l_{i+1})`.
    Right,
}

impl Direction {
    pub fn inverse(self) -> Direction {
        match self {
            Direction::Left => Direction::Right,
            Direction::Right => Direction::Left,
        }
    }
}

/// Hurwitz move on letters `l_{i+1}, l_i`, `1 <= i <= r - 1`.
pub fn elementary_transformation(f: &PositiveFactorization, i: usize, dir: Direction) -> Result<PositiveFactorization> {
    let mut letters = f.word.letters.clone();
    move_letters(&mut letters, i, dir)?;
    Ok(PositiveFactorization { word: Word { genus: f.word.genus, letters }, target: f.target.clone() })
}

pub(crate) fn move_letters(letters: &mut [TwistLetter], i: usize, dir: Direction) -> Result<()> {
    let r = letters.len();
    if i == 0 || i >= r {
        return Err(Error::IndexOutOfRange { index: i, max: r.saturating_sub(1) });
    }
    let p = r - i - 1;
    let (hi, lo) = (letters[p].clone(), letters[p + 1].clone());
    match dir {
        Direction::Right => {
            let moved = transvection(hi.curve(), hi.power(), lo.curve())?;
            letters[p] = lo.with_curve(moved);
            letters[p + 1] = hi;
        }
        Direction::Left => {
            let moved = transvection(lo.curve(), lo.power().inverse(), hi.curve())?;
            letters[p] = lo;
            letters[p + 1] = hi.with_curve(moved);
        }
    }
    Ok(())
}

/// Conjugates every letter by `sp_image(g)`.
pub fn global_conjugation(f: &PositiveFactorization, g: &Word) -> Result<PositiveFactorization> {
    let r = f.len();
    conjugate_suffix(f, r, g, "conjugator does not commute with the target at Sp level")
}

/// Conjugates the prefix `l_k ... l_1` (the last `k` entries) by `sp_image(g)`.
///
/// The caller attests that the conjugator commutes with the prefix in the
/// mapping class group; only the Sp-level shadow of that is checked here.
pub fn partial_conjugation(f: &PositiveFactorization, k: usize, g: &Word) -> Result<PositiveFactorization> {
    let r = f.len();
    if k == 0 || k > r {
        return Err(Error::IndexOutOfRange { index: k, max: r });
    }
    conjugate_suffix(f, k, g, "conjugator does not commute with the prefix product at Sp level")
}

fn conjugate_suffix(f: &PositiveFactorization, k: usize, g: &Word, msg: &str) -> Result<PositiveFactorization> {
    if g.genus != f.genus() {
        return Err(Error::GenusMismatch { left: f.genus().0, right: g.genus.0 });
    }
    let m = g.sp_image();
    let r = f.len();
    let prefix = if k == r {
        f.target.clone()
    } else {
        Word { genus: f.genus(), letters: f.letters()[r - k..].to_vec() }.sp_image()
    };
    if !m.commutes_with(&prefix) {
        return Err(Error::Precondition(msg.into()));
    }
    let mut letters = f.letters().to_vec();
    for l in &mut letters[r - k..] {
        *l = l.conjugate_by(&m)?;
    }
    let target = if k == r {
        m.compose(&f.target)?.compose(&m.inverse())?
    } else {
        f.target.clone()
    };
    Ok(PositiveFactorization { word: Word { genus: f.genus(), letters }, target })
}

/// Whether the Sp images of two words commute.
pub fn commutes_at_sp(g: &Word, w: &Word) -> Result<bool> {
    if g.genus != w.genus {
        return Err(Error::GenusMismatch { left: g.genus.0, right: w.genus.0 });
    }
    Ok(g.sp_image().commutes_with(&w.sp_image()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nonsep(g: Genus, c: &[i64]) -> TwistLetter {
        TwistLetter::nonseparating(HomologyClass::from_i64(g, c).unwrap(), Power::Pos).unwrap()
    }

    #[test]
    fn empty_and_cancelling_words() {
        let g = Genus(2);
        assert!(Word::empty(g).sp_image().is_identity());
        let l = nonsep(g, &[1, 0, 1, 1]);
        let w = Word::new(g, vec![l.clone(), l.inverse()]).unwrap();
        assert!(w.sp_image().is_identity());
    }

    #[test]
    fn single_twist_is_not_identity() {
        let g = Genus(2);
        let f = PositiveFactorization::of_identity(Word::single(nonsep(g, &[1, 0, 0, 0]))).unwrap();
        let rep = verify_factorization(&f);
        assert!(!rep.passed);
        assert_eq!(rep.level, "at Sp level");
    }

    #[test]
    fn letter_validation() {
        let g = Genus(3);
        assert!(TwistLetter::nonseparating(HomologyClass::zero(g), Power::Pos).is_err());
        let two_a1 = HomologyClass::from_i64(g, &[2, 0, 0, 0, 0, 0]).unwrap();
        assert!(TwistLetter::nonseparating(two_a1, Power::Pos).is_err());
        assert!(TwistLetter::separating(g, 1, 2, Power::Pos).is_ok());
        assert!(TwistLetter::separating(g, 1, 1, Power::Pos).is_err());
        assert!(TwistLetter::separating(g, 0, 3, Power::Pos).is_err());
    }

    #[test]
    fn commuting_letters_swap() {
        let g = Genus(2);
        let x = nonsep(g, &[1, 0, 0, 0]);
        let y = nonsep(g, &[0, 1, 0, 0]);
        let f = PositiveFactorization::of_identity(Word::new(g, vec![x.clone(), y.clone()]).unwrap()).unwrap();
        for d in [Direction::Left, Direction::Right] {
            let h = elementary_transformation(&f, 1, d).unwrap();
            assert_eq!(h.letters(), &[y.clone(), x.clone()]);
        }
    }

    #[test]
    fn left_then_right_is_identity() {
        let g = Genus(2);
        let f = PositiveFactorization::of_identity(
            Word::new(g, vec![nonsep(g, &[1, 0, 1, 0]), nonsep(g, &[0, 1, 1, 0]), nonsep(g, &[1, 1, 0, 1])]).unwrap(),
        )
        .unwrap();
        for i in 1..3 {
            let h = elementary_transformation(&f, i, Direction::Left).unwrap();
            assert_ne!(h, f);
            assert_eq!(elementary_transformation(&h, i, Direction::Right).unwrap(), f);
            let h = elementary_transformation(&f, i, Direction::Right).unwrap();
            assert_eq!(elementary_transformation(&h, i, Direction::Left).unwrap(), f);
        }
        assert!(matches!(elementary_transformation(&f, 3, Direction::Left), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(elementary_transformation(&f, 0, Direction::Left), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn moves_preserve_image_on_six_letters() {
        let g = Genus(2);
        let cs: [&[i64]; 6] = [&[1, 0, 0, 0], &[0, 0, 1, 0], &[1, 1, 0, 1], &[0, 1, -1, 0], &[1, 0, 1, 1], &[0, 1, 0, 2]];
        let w = Word::new(g, cs.iter().map(|c| nonsep(g, c)).collect()).unwrap();
        let f = PositiveFactorization::new(w.clone(), w.sp_image()).unwrap();
        for i in 1..6 {
            for d in [Direction::Left, Direction::Right] {
                let h = elementary_transformation(&f, i, d).unwrap();
                assert_eq!(h.word().sp_image(), f.word().sp_image());
            }
        }
    }

    #[test]
    fn commutation_examples() {
        let g = Genus(2);
        let ta = Word::single(nonsep(g, &[1, 0, 0, 0]));
        let tb = Word::single(nonsep(g, &[0, 0, 1, 0]));
        // T_a T_b != T_b T_a: both products computed by hand below
        let ab = ta.sp_image().compose(&tb.sp_image()).unwrap();
        let ba = tb.sp_image().compose(&ta.sp_image()).unwrap();
        assert_ne!(ab, ba);
        assert!(!commutes_at_sp(&ta, &tb).unwrap());
        assert!(commutes_at_sp(&ta, &ta).unwrap());
    }

    #[test]
    fn conjugation_by_empty_word_is_noop() {
        let g = Genus(2);
        let w = Word::new(g, vec![nonsep(g, &[1, 0, 0, 0]), nonsep(g, &[0, 0, 1, 0])]).unwrap();
        let f = PositiveFactorization::new(w.clone(), w.sp_image()).unwrap();
        assert_eq!(global_conjugation(&f, &Word::empty(g)).unwrap(), f);
        assert_eq!(partial_conjugation(&f, 1, &Word::empty(g)).unwrap(), f);
        assert_eq!(partial_conjugation(&f, 2, &Word::empty(g)).unwrap(), f);
    }

    #[test]
    fn partial_conjugation_checks_prefix() {
        let g = Genus(2);
        let a1 = nonsep(g, &[1, 0, 0, 0]);
        let b1 = nonsep(g, &[0, 0, 1, 0]);
        let f = PositiveFactorization::new(Word::new(g, vec![b1.clone(), a1.clone()]).unwrap(), {
            Word::new(g, vec![b1.clone(), a1.clone()]).unwrap().sp_image()
        })
        .unwrap();
        assert!(matches!(partial_conjugation(&f, 1, &Word::single(b1)), Err(Error::Precondition(_))));
        let a2 = nonsep(g, &[0, 1, 0, 0]);
        let h = partial_conjugation(&f, 1, &Word::single(a2)).unwrap();
        assert_eq!(h, f);
    }

    #[test]
    fn positivity_enforced() {
        let g = Genus(2);
        let w = Word::single(nonsep(g, &[1, 0, 0, 0]).inverse());
        assert_eq!(PositiveFactorization::of_identity(w), Err(Error::NotPositive { position: 1 }));
    }
}
