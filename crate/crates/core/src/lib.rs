//! Tropical zeta functions of compact convex planar domains.
//!
//! The crate computes the tropical distance `ρ_Ω`, wave fronts `Ω_t`, minimal
//! models, the Stern–Brocot corner-cutting tree and its boundary Dirichlet
//! series, and evaluates `Z_Ω(s)` through the boundary identity
//! `s(s-1) Z_Ω(s) = H(s) - F(s)` or through Mellin quadrature of the wave-front
//! perimeter. Residues at `s = 1, 0` are exact for rational polygons; the
//! residue at `s = 2/3` is estimated from counting asymptotics.

pub mod corner_cutting;
pub mod domain_model;
pub mod equiaffine;
pub mod error;
pub mod farey_hata;
pub mod halfplane;
pub mod lattice_arith;
pub mod minimal_model;
pub mod numeric;
pub mod scalar;
pub mod special_models;
pub mod zeta_engine;

pub use error::{Error, Result};
pub use scalar::{Q, Scalar};
