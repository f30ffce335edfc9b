//! Exact arithmetic: primes, finite fields, polynomials, root finding,
//! discrete logarithms and the coefficient rings Z/p^k.

pub mod field;
pub mod log;
pub mod poly;
pub mod primes;
pub mod roots;
pub mod zmod;

pub use field::{Field, FieldCtx, Fq2Elem, PrimeField, QuadExt};
pub use log::{ExtLog, LogMap};
pub use poly::{Poly, PolyRing};
pub use roots::{low_degree_factors, roots_in_fq2, LowDegreeFactors};
pub use zmod::Zmod;
