//! Effective-index eigenvalue solvers for canonical integrated-photonic
//! structures, together with the uncertainty bounds that spatial confinement
//! and source coherence impose on those eigenvalues.
//!
//! The crate is organised bottom-up:
//!
//! - [`quantities`]: constants and the `n_eff` / `β` / `λ_eff` / `ε_eff`
//!   conversions, photon energy and momentum.
//! - [`specfun`]: Bessel `J₀`, `J₁` and modified Bessel `K₀`, `K₁`.
//! - [`slab`]: three-layer planar waveguide, TE and TM.
//! - [`fiber`]: step-index fiber fundamental mode, exact HE₁₁ and weak-guidance LP₀₁.
//! - [`coherence`]: light sources, coherence time and length.
//! - [`uncertainty`]: lower bounds on `Δn_eff`, `Δλ_eff`, `Δβ` and the
//!   definability limit.
//! - [`sweep`]: dimension sweeps coupling the solvers to the bounds.
//! - [`report`], [`units`], [`cli`]: serialization and the batch front-end.
//!
//! All internal quantities are SI (metres, joules, seconds).

pub mod cli;
pub mod coherence;
pub mod error;
pub mod fiber;
pub mod quantities;
pub mod report;
mod roots;
pub mod slab;
pub mod specfun;
pub mod sweep;
pub mod uncertainty;
pub mod units;

pub use error::{Error, Result};
