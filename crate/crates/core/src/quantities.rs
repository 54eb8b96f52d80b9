//! Physical constants and the eigenvalue representations of a guided mode.
//!
//! A guided mode at vacuum wavelength `λ₀` is fully described by its effective
//! index `n_eff`; the propagation constant `β = 2π·n_eff/λ₀`, the effective
//! wavelength `λ_eff = λ₀/n_eff` and the effective permittivity
//! `ε_eff = n_eff²` follow from it.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{require_positive, Result};

/// Planck constant, J·s (exact, CODATA 2018).
pub const PLANCK: f64 = 6.626_070_15e-34;
/// Reduced Planck constant `h/2π`, J·s.
pub const HBAR: f64 = PLANCK / (2.0 * PI);
/// Speed of light in vacuum, m/s (exact).
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// The fixed set of constants used throughout the crate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhysConsts {
    pub h: f64,
    pub hbar: f64,
    pub c: f64,
}

impl PhysConsts {
    pub const CODATA_2018: PhysConsts = PhysConsts {
        h: PLANCK,
        hbar: HBAR,
        c: SPEED_OF_LIGHT,
    };
}

/// Vacuum wavenumber `k₀ = 2π/λ₀`.
#[inline]
pub fn wavenumber(lambda0: f64) -> f64 {
    2.0 * PI / lambda0
}

/// Mutually consistent eigenvalue representations of one mode.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EigenvalueSet {
    /// Vacuum wavelength, m.
    pub lambda0: f64,
    pub n_eff: f64,
    /// Propagation constant, rad/m.
    pub beta: f64,
    /// Guided wavelength, m.
    pub lambda_eff: f64,
    pub eps_eff: f64,
}

impl EigenvalueSet {
    /// Recovers the effective index from `β` and `λ₀`.
    pub fn n_eff_from_beta(beta: f64, lambda0: f64) -> f64 {
        beta * lambda0 / (2.0 * PI)
    }
}

pub fn make_eigenvalue_set(lambda0: f64, n_eff: f64) -> Result<EigenvalueSet> {
    require_positive("lambda0", lambda0)?;
    require_positive("n_eff", n_eff)?;
    Ok(EigenvalueSet {
        lambda0,
        n_eff,
        beta: 2.0 * PI * n_eff / lambda0,
        lambda_eff: lambda0 / n_eff,
        eps_eff: n_eff * n_eff,
    })
}

/// Energy and momentum carried by a photon in the guided mode.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhotonState {
    /// J.
    pub energy: f64,
    /// kg·m/s.
    pub momentum: f64,
    /// rad/s.
    pub omega_eff: f64,
}

/// `E = h·c/λ_eff`, `p = h/λ_eff = h·n_eff/λ₀`, `ω_eff = 2π·c/λ_eff`.
pub fn photon_state(ev: &EigenvalueSet) -> PhotonState {
    let momentum = PLANCK / ev.lambda_eff;
    PhotonState {
        energy: momentum * SPEED_OF_LIGHT,
        momentum,
        omega_eff: 2.0 * PI * SPEED_OF_LIGHT / ev.lambda_eff,
    }
}
