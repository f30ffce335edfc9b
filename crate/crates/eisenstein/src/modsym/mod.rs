//! Modular symbols for X_0(N): Manin presentation of the plus part of
//! relative homology, Hecke operators, the Eisenstein elements `m_0^+` and
//! `m_1^+`, and the Eisenstein filtration computing `n(r, p)`.

pub mod elements;
pub mod filtration;
pub mod linalg;
pub mod manin;
pub mod p1;

pub use elements::{f02_element, f0_element, f1_element, F02Report};
pub use filtration::{eisenstein_filtration, newton_invariants, z_profile, EisensteinFiltration, FiltrationOptions, NewtonInvariants};
pub use linalg::{Mat, Submodule};
pub use manin::{build_manin_space, genus_x0, merel_matrices, ManinSpace};
pub use p1::P1Index;
