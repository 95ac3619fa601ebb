//! Integer lattices: normal forms, symmetric forms and sublattices.

mod form;
mod hnf;
mod snf;

pub use form::{enumerate_pattern, orthogonal_complement, IntLattice, Parity, Signature};
pub use hnf::{content, Sublattice};
pub use snf::{smith_normal_form, Snf};
