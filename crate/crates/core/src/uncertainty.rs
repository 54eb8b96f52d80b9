//! Lower bounds on the uncertainty of guided-mode eigenvalues.
//!
//! Localising a mode within `Δx` forces `Δx·Δβ >= 1/2`. With
//! `β = 2π·n_eff/λ₀` the spread of the propagation constant splits into an
//! index part and a spectral part,
//!
//! ```text
//! Δβ = 2π·[Δn_eff/λ₀ + n_eff·Δλ₀/λ₀²] = 2π·[n_eff/L_c + Δn_eff/λ₀]
//! ```
//!
//! (the second form uses `L_c = λ₀²/Δλ₀`), which gives
//!
//! ```text
//! Δn_eff >= λ₀·[1/(4π·Δx) − n_eff/L_c]
//! ```
//!
//! For a Dirac line (`L_c = ∞`) this reduces to `Δx·Δn_eff >= λ₀/4π`, or
//! equivalently `Δx·Δλ_eff >= λ_eff²/4π`. Spreads are combined as a positive
//! sum of absolute contributions. A negative right-hand side is clamped to
//! zero and flagged as vacuous.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::coherence::Extent;
use crate::error::{require_non_negative, require_positive, Result};
use crate::quantities::HBAR;

/// Default definability scale: the width of the physical index range 1..4.
pub const DEFAULT_MODAL_WINDOW: f64 = 3.0;
/// Bounds below this fraction of the window count as well defined.
pub const WELL_DEFINED_FRACTION: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundInputs {
    /// m.
    pub lambda0: f64,
    pub n_eff: f64,
    /// Spatial localisation, m.
    pub delta_x: f64,
    pub coherence_length: Extent,
    /// Spectral width, m; only used by [`delta_beta_spectral`].
    pub delta_lambda0: f64,
}

impl BoundInputs {
    pub fn new(lambda0: f64, n_eff: f64, delta_x: f64, coherence_length: Extent) -> Self {
        BoundInputs {
            lambda0,
            n_eff,
            delta_x,
            coherence_length,
            delta_lambda0: 0.0,
        }
    }

    fn validate(&self) -> Result<()> {
        require_positive("lambda0", self.lambda0)?;
        require_positive("n_eff", self.n_eff)?;
        require_positive("delta_x", self.delta_x)?;
        require_non_negative("delta_lambda0", self.delta_lambda0)?;
        self.coherence_length.validate("coherence_length")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    WellDefined,
    Marginal,
    Fuzzy,
}

impl Classification {
    pub fn label(self) -> &'static str {
        match self {
            Classification::WellDefined => "well_defined",
            Classification::Marginal => "marginal",
            Classification::Fuzzy => "fuzzy",
        }
    }

    /// Thresholds: `< 1%` of the window is well defined, above the window is fuzzy.
    pub fn of(min_delta_neff: f64, modal_window: f64) -> Self {
        if min_delta_neff < WELL_DEFINED_FRACTION * modal_window {
            Classification::WellDefined
        } else if min_delta_neff > modal_window {
            Classification::Fuzzy
        } else {
            Classification::Marginal
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct UncertaintyReport {
    pub min_delta_neff: f64,
    /// `λ₀/(4π·Δx)`.
    pub confinement_term: f64,
    /// `λ₀·n_eff/L_c`, zero for a Dirac line.
    pub coherence_term: f64,
    pub ratio_lambda_dx: f64,
    pub ratio_lambda_lc: f64,
    pub vacuous: bool,
    pub classification: Classification,
}

/// `λ₀/(4π·Δx)`: minimum `Δn_eff` for a Dirac line localised within `Δx`.
pub fn dirac_bound_neff(lambda0: f64, delta_x: f64) -> Result<f64> {
    require_positive("lambda0", lambda0)?;
    require_positive("delta_x", delta_x)?;
    Ok(lambda0 / (4.0 * PI * delta_x))
}

/// `λ_eff²/(4π·Δx)`: minimum `Δλ_eff`, m.
pub fn dirac_bound_lambda_eff(lambda_eff: f64, delta_x: f64) -> Result<f64> {
    require_positive("lambda_eff", lambda_eff)?;
    require_positive("delta_x", delta_x)?;
    Ok(lambda_eff * lambda_eff / (4.0 * PI * delta_x))
}

/// `Δβ = 2π·[Δn_eff/λ₀ + n_eff·Δλ₀/λ₀²]`, rad/m.
pub fn delta_beta_spectral(
    lambda0: f64,
    n_eff: f64,
    delta_neff: f64,
    delta_lambda0: f64,
) -> Result<f64> {
    require_positive("lambda0", lambda0)?;
    require_non_negative("n_eff", n_eff)?;
    require_non_negative("delta_neff", delta_neff)?;
    require_non_negative("delta_lambda0", delta_lambda0)?;
    Ok(2.0 * PI * (delta_neff / lambda0 + n_eff * delta_lambda0 / (lambda0 * lambda0)))
}

/// `Δβ = 2π·[n_eff/L_c + Δn_eff/λ₀]`, rad/m.
pub fn delta_beta_coherence(
    lambda0: f64,
    n_eff: f64,
    delta_neff: f64,
    coherence_length: Extent,
) -> Result<f64> {
    require_positive("lambda0", lambda0)?;
    require_non_negative("n_eff", n_eff)?;
    require_non_negative("delta_neff", delta_neff)?;
    coherence_length.validate("coherence_length")?;
    let spectral = match coherence_length {
        Extent::Finite(lc) => n_eff / lc,
        Extent::Infinite => 0.0,
    };
    Ok(2.0 * PI * (spectral + delta_neff / lambda0))
}

/// Evaluates `Δn_eff >= λ₀·[1/(4π·Δx) − n_eff/L_c]` and classifies the
/// result against `modal_window`.
pub fn bound_neff(inputs: &BoundInputs, modal_window: f64) -> Result<UncertaintyReport> {
    inputs.validate()?;
    require_positive("modal_window", modal_window)?;
    let confinement_term = inputs.lambda0 / (4.0 * PI * inputs.delta_x);
    let coherence_term = match inputs.coherence_length {
        Extent::Finite(lc) => inputs.lambda0 * inputs.n_eff / lc,
        Extent::Infinite => 0.0,
    };
    let raw = confinement_term - coherence_term;
    let vacuous = raw < 0.0;
    let min_delta_neff = if vacuous { 0.0 } else { raw };
    let mags = term_magnitudes(inputs.lambda0, inputs.delta_x, inputs.coherence_length)?;
    Ok(UncertaintyReport {
        min_delta_neff,
        confinement_term,
        coherence_term,
        ratio_lambda_dx: mags.lambda_over_dx,
        ratio_lambda_lc: mags.lambda_over_lc,
        vacuous,
        classification: Classification::of(min_delta_neff, modal_window),
    })
}

/// The two competing dimensionless ratios of the finite-coherence bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TermMagnitudes {
    pub lambda_over_dx: f64,
    pub lambda_over_lc: f64,
}

pub fn term_magnitudes(
    lambda0: f64,
    delta_x: f64,
    coherence_length: Extent,
) -> Result<TermMagnitudes> {
    require_positive("lambda0", lambda0)?;
    require_positive("delta_x", delta_x)?;
    coherence_length.validate("coherence_length")?;
    Ok(TermMagnitudes {
        lambda_over_dx: lambda0 / delta_x,
        lambda_over_lc: match coherence_length {
            Extent::Finite(lc) => lambda0 / lc,
            Extent::Infinite => 0.0,
        },
    })
}

/// Localisation `Δx*` below which the minimum `Δn_eff` exceeds `threshold`:
/// `Δx* = 1/(4π·(threshold/λ₀ + n_eff/L_c))`, m.
pub fn definability_limit(
    lambda0: f64,
    n_eff: f64,
    coherence_length: Extent,
    threshold: f64,
) -> Result<f64> {
    require_positive("lambda0", lambda0)?;
    require_positive("n_eff", n_eff)?;
    require_positive("threshold", threshold)?;
    coherence_length.validate("coherence_length")?;
    Ok(1.0 / (4.0 * PI * (threshold / lambda0 + n_eff * coherence_length.reciprocal())))
}

/// Mandelstam–Tamm timescale `ħ/(2·ΔE)` for an energy spread `ΔE`, s.
pub fn measurement_duration(delta_e: f64) -> Result<f64> {
    require_positive("delta_E", delta_e)?;
    Ok(HBAR / (2.0 * delta_e))
}
