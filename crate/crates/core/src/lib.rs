//! Exact homology-level computations with Lefschetz fibration monodromy
//! factorizations.
//!
//! Everything here is integer arithmetic over `BigInt`. Results about words
//! in Dehn twists are statements about their images in `Sp(2G, Z)`; the
//! symplectic representation is not faithful, so reports are always tagged
//! "at Sp level".
//!
//! Conventions used throughout:
//!
//! * `H_1(Σ_G; Z)` has ordered basis `a_1..a_G, b_1..b_G` with
//!   `<a_i, b_i> = 1`.
//! * A right-handed twist acts by `T_c(x) = x + <c, x> c`.
//! * Words are stored in written order: the word `T_{l_r} ... T_{l_1}` is the
//!   list `[l_r, ..., l_1]`, so `l_1` is the last entry and acts first.

pub mod error;
pub mod homology;
pub mod hurwitz;
pub mod invariants;
pub mod johnson;
pub mod lattice;
pub mod matrix;
pub mod scenarios;
pub mod schema;
mod serde_int;
pub mod word;

pub use error::{Error, Result};
pub use homology::{intersection, is_primitive, transvection, twist_matrix, Genus, HomologyClass, Power, SpMap};
pub use matrix::IntMatrix;
pub use word::{PositiveFactorization, TwistLetter, Word};

/// Phrase attached to every verdict derived from the symplectic representation.
pub const SP_LEVEL: &str = "at Sp level";
