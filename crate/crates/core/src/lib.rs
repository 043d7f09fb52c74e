//! Exact computer algebra for diagonal Hopf manifolds
//! `X = (ℂⁿ∖{0})/⟨f⟩`, `f(z) = (μ₁z₁, …, μₙzₙ)`.
//!
//! * [`spectrum`]: relation lattice of the eigenvalues and resonance class.
//! * [`exterior`]: sparse polynomial differential forms over `ℚ(i)`.
//! * [`sections`]: monomial bases of twisted k-form sections `ker p₀`.
//! * [`analysis`]: singular locus, decomposability, integrability, regular
//!   system enumeration.
//! * [`cli`]: JSON job front-end used by the `hopf-pfaff` binary.

pub mod analysis;
pub mod cli;
pub mod error;
pub mod exterior;
pub mod json;
pub mod lattice;
pub mod par;
pub mod rational;
pub mod sections;
pub mod spectrum;

pub use error::{Error, Result};
