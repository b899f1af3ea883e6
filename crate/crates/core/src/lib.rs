//! Reversed Dickson polynomials over finite fields.
//!
//! The n-th reversed Dickson polynomial d_n = D_n(1, .) satisfies
//! d_n(x(1-x)) = x^n + (1-x)^n. This crate evaluates d_n on F_q through that
//! functional equation in GF(q^2), computes the power sums
//! sum_a d_n(a)^i for i = 1, 2, 3 both by brute force and, for i = 1 and 3,
//! by exact closed-form binomial expressions in F_p, and searches for the
//! pairs (q, n) where d_n permutes F_q, using the closed forms as
//! necessary-condition filters.
//!
//! Everything is exact: field elements are integer-coded vectors over a
//! deterministic modulus tower, residues live in F_p, and all window bounds
//! in the closed forms are resolved by integer cross-multiplication.

pub mod error;
pub mod gf;
pub mod lucas;
pub mod poly;
pub mod rdp;
pub mod search;
pub mod sums;

pub use error::Error;
pub use gf::{FieldCtx, FieldElement, PrimePower, DEFAULT_MAX_ORDER};
pub use rdp::PairTable;

pub type Result<T> = std::result::Result<T, Error>;
