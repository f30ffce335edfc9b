//! Higher Eisenstein elements at prime level.
//!
//! The crate computes, for a prime level `N` and a prime `p` dividing the
//! numerator of `(N-1)/12`:
//!
//! * Merel-type criteria built from sums of discrete logarithms
//!   ([`criteria`]);
//! * the supersingular module attached to the Hasse polynomial, its
//!   distinguished elements and their pairings ([`supersingular`]);
//! * a Manin-symbol engine for the plus part of relative homology of
//!   `X_0(N)` with Hecke operators and the Eisenstein filtration, giving the
//!   rank `g_p` and the refined invariants `n(r, p)` ([`modsym`]).

pub mod arith;
pub mod criteria;
pub mod error;
pub mod modsym;
pub mod supersingular;

pub use error::{Error, Result};
