//! Three-layer planar waveguide: guided TE and TM modes.
//!
//! A core of thickness `d` and index `n_core` sits between a substrate
//! (`n_sub`) and a cover (`n_cover`). Guided modes satisfy the phase
//! condition
//!
//! ```text
//! Φ = κ·d − m·π − atan(ρ_s·γ_sub/κ) − atan(ρ_c·γ_cover/κ) = 0
//! ```
//!
//! with `κ = k₀·√(n_core² − n_eff²)`, `γ_i = k₀·√(n_eff² − n_i²)` and
//! `ρ_i = 1` (TE) or `(n_core/n_i)²` (TM). `Φ` is strictly monotone, so each
//! order `m` has at most one root and the root is bracketed by the guidance
//! window `max(n_sub, n_cover) < n_eff < n_core`.
//!
//! The solver works in the transverse wavenumber `κ` rather than in `n_eff`:
//! the slope of `Φ` in `κ` is of order `d` everywhere, while in `n_eff` it
//! grows without bound as `n_eff → n_core`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{require_positive, Error, Result};
use crate::quantities::wavenumber;
use crate::roots::brent;

/// Relative shrink of the root interval at the `κ → 0` end.
const KAPPA_FLOOR: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Polarization {
    Te,
    Tm,
}

impl Polarization {
    pub fn label(self) -> &'static str {
        match self {
            Polarization::Te => "te",
            Polarization::Tm => "tm",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SlabGeometry {
    /// Core thickness, m.
    pub d: f64,
    pub n_core: f64,
    pub n_sub: f64,
    pub n_cover: f64,
}

fn check_index(field: &'static str, n: f64) -> Result<f64> {
    if n.is_finite() && n > 0.0 && n <= 10.0 {
        Ok(n)
    } else {
        Err(Error::domain(field, n, "index must lie in (0, 10]"))
    }
}

impl SlabGeometry {
    pub fn new(d: f64, n_core: f64, n_sub: f64, n_cover: f64) -> Result<Self> {
        require_positive("d", d)?;
        check_index("n_core", n_core)?;
        check_index("n_sub", n_sub)?;
        check_index("n_cover", n_cover)?;
        if n_core <= n_sub.max(n_cover) {
            return Err(Error::domain(
                "n_core",
                n_core,
                "must exceed both cladding indices",
            ));
        }
        Ok(SlabGeometry {
            d,
            n_core,
            n_sub,
            n_cover,
        })
    }

    /// Symmetric slab with equal substrate and cover.
    pub fn symmetric(d: f64, n_core: f64, n_clad: f64) -> Result<Self> {
        Self::new(d, n_core, n_clad, n_clad)
    }

    pub fn is_symmetric(&self) -> bool {
        (self.n_sub - self.n_cover).abs() < 1e-12
    }

    /// Same indices, different core thickness.
    pub fn with_thickness(&self, d: f64) -> Result<Self> {
        Self::new(d, self.n_core, self.n_sub, self.n_cover)
    }

    /// The larger cladding index, which sets the guidance threshold.
    pub fn n_upper_clad(&self) -> f64 {
        self.n_sub.max(self.n_cover)
    }

    pub fn n_lower_clad(&self) -> f64 {
        self.n_sub.min(self.n_cover)
    }

    fn rho(&self, pol: Polarization) -> (f64, f64) {
        match pol {
            Polarization::Te => (1.0, 1.0),
            Polarization::Tm => (
                (self.n_core / self.n_sub).powi(2),
                (self.n_core / self.n_cover).powi(2),
            ),
        }
    }
}

/// A guided eigenstate of the slab.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SlabMode {
    pub polarization: Polarization,
    pub order: u32,
    pub n_eff: f64,
    /// Core transverse wavenumber, rad/m.
    pub kappa: f64,
    /// Substrate decay constant, rad/m.
    pub gamma_sub: f64,
    /// Cover decay constant, rad/m.
    pub gamma_cover: f64,
    /// `d + 1/γ_sub + 1/γ_cover`, m.
    pub effective_width: f64,
}

/// `√(a² − b²)` evaluated as `√((a−b)(a+b))`.
#[inline]
fn diff_sqrt(a: f64, b: f64) -> f64 {
    ((a - b) * (a + b)).max(0.0).sqrt()
}

/// Phase terms with explicit `ρ` factors.
#[allow(clippy::too_many_arguments)]
fn phase(kappa: f64, d: f64, m: u32, rho_s: f64, gamma_s: f64, rho_c: f64, gamma_c: f64) -> f64 {
    kappa * d - m as f64 * PI - (rho_s * gamma_s / kappa).atan() - (rho_c * gamma_c / kappa).atan()
}

/// The phase condition `Φ(n_eff)` for order `m`.
pub fn phase_residual(
    g: &SlabGeometry,
    lambda0: f64,
    pol: Polarization,
    m: u32,
    n_eff: f64,
) -> Result<f64> {
    require_positive("lambda0", lambda0)?;
    if !(n_eff > g.n_upper_clad() && n_eff < g.n_core) {
        return Err(Error::domain(
            "n_eff",
            n_eff,
            "must lie strictly between the upper cladding index and n_core",
        ));
    }
    let k0 = wavenumber(lambda0);
    let kappa = k0 * diff_sqrt(g.n_core, n_eff);
    let gamma_s = k0 * diff_sqrt(n_eff, g.n_sub);
    let gamma_c = k0 * diff_sqrt(n_eff, g.n_cover);
    let (rho_s, rho_c) = g.rho(pol);
    Ok(phase(kappa, g.d, m, rho_s, gamma_s, rho_c, gamma_c))
}

/// Precomputed per-geometry quantities for the `κ`-parametrised phase.
struct KappaForm {
    d: f64,
    k0: f64,
    v_sub: f64,
    v_cover: f64,
    rho_s: f64,
    rho_c: f64,
    /// `k₀·√(n_upper² − n_lower²)` between the two claddings.
    clad_gap: f64,
    sub_is_upper: bool,
}

impl KappaForm {
    fn new(g: &SlabGeometry, lambda0: f64, pol: Polarization) -> Self {
        let k0 = wavenumber(lambda0);
        let (rho_s, rho_c) = g.rho(pol);
        KappaForm {
            d: g.d,
            k0,
            v_sub: k0 * diff_sqrt(g.n_core, g.n_sub),
            v_cover: k0 * diff_sqrt(g.n_core, g.n_cover),
            rho_s,
            rho_c,
            clad_gap: k0 * diff_sqrt(g.n_upper_clad(), g.n_lower_clad()),
            sub_is_upper: g.n_sub >= g.n_cover,
        }
    }

    fn kappa_max(&self) -> f64 {
        self.v_sub.min(self.v_cover)
    }

    fn gammas(&self, kappa: f64) -> (f64, f64) {
        (diff_sqrt(self.v_sub, kappa), diff_sqrt(self.v_cover, kappa))
    }

    fn residual(&self, m: u32, kappa: f64) -> f64 {
        let (gs, gc) = self.gammas(kappa);
        phase(kappa, self.d, m, self.rho_s, gs, self.rho_c, gc)
    }

    /// `(κ, γ_sub, γ_cover)` from the decay constant `γ` of the higher-index
    /// cladding, which resolves the near-cutoff region where `κ` rounds to
    /// its maximum.
    fn at_upper_gamma(&self, gamma: f64) -> (f64, f64, f64) {
        let kappa = diff_sqrt(self.kappa_max(), gamma);
        let other = self.clad_gap.hypot(gamma);
        if self.sub_is_upper {
            (kappa, gamma, other)
        } else {
            (kappa, other, gamma)
        }
    }

    fn residual_upper_gamma(&self, m: u32, gamma: f64) -> f64 {
        let (kappa, gs, gc) = self.at_upper_gamma(gamma);
        phase(kappa, self.d, m, self.rho_s, gs, self.rho_c, gc)
    }
}

/// The phase condition expressed through the core wavenumber `κ` (rad/m),
/// valid for `0 < κ <= k₀·√(n_core² − max(n_sub, n_cover)²)`.
pub fn phase_residual_kappa(
    g: &SlabGeometry,
    lambda0: f64,
    pol: Polarization,
    m: u32,
    kappa: f64,
) -> Result<f64> {
    require_positive("lambda0", lambda0)?;
    let form = KappaForm::new(g, lambda0, pol);
    if !(kappa > 0.0 && kappa <= form.kappa_max()) {
        return Err(Error::domain(
            "kappa",
            kappa,
            "must lie in (0, k0*sqrt(n_core^2 - n_clad^2)]",
        ));
    }
    Ok(form.residual(m, kappa))
}

/// Residual of a solved mode, evaluated at its own `(κ, γ_sub, γ_cover)`.
pub fn mode_residual(g: &SlabGeometry, lambda0: f64, mode: &SlabMode) -> Result<f64> {
    require_positive("lambda0", lambda0)?;
    let (rho_s, rho_c) = g.rho(mode.polarization);
    Ok(phase(
        mode.kappa,
        g.d,
        mode.order,
        rho_s,
        mode.gamma_sub,
        rho_c,
        mode.gamma_cover,
    ))
}

/// Solves the order-`m` guided mode; `None` when the mode is below cutoff.
pub fn solve_mode(
    g: &SlabGeometry,
    lambda0: f64,
    pol: Polarization,
    m: u32,
) -> Result<Option<SlabMode>> {
    require_positive("lambda0", lambda0)?;
    let form = KappaForm::new(g, lambda0, pol);
    let kmax = form.kappa_max();
    if form.residual(m, kmax) <= 0.0 {
        return Ok(None);
    }
    // Solve in κ where κ is the smaller transverse constant, otherwise in
    // the upper-cladding decay constant.
    let split = kmax * std::f64::consts::FRAC_1_SQRT_2;
    let (kappa, gamma_sub, gamma_cover) = if form.residual(m, split) > 0.0 {
        let kappa = brent(|k| Ok(form.residual(m, k)), KAPPA_FLOOR * kmax, split, 0.0)?;
        let (gs, gc) = form.gammas(kappa);
        (kappa, gs, gc)
    } else {
        let gamma = brent(|y| Ok(form.residual_upper_gamma(m, y)), 0.0, split, 0.0)?;
        if gamma <= 0.0 {
            return Ok(None);
        }
        form.at_upper_gamma(gamma)
    };
    let k0 = form.k0;
    // Near cutoff the excess over the cladding index is better conditioned.
    let n_eff = if g.n_sub >= g.n_cover && gamma_sub < kappa {
        g.n_sub.hypot(gamma_sub / k0)
    } else if g.n_cover > g.n_sub && gamma_cover < kappa {
        g.n_cover.hypot(gamma_cover / k0)
    } else {
        diff_sqrt(g.n_core, kappa / k0)
    };
    Ok(Some(SlabMode {
        polarization: pol,
        order: m,
        n_eff,
        kappa,
        gamma_sub,
        gamma_cover,
        effective_width: g.d + 1.0 / gamma_sub + 1.0 / gamma_cover,
    }))
}

/// Core thickness below which the order-`m` mode is not guided.
pub fn cutoff_thickness(g: &SlabGeometry, lambda0: f64, pol: Polarization, m: u32) -> Result<f64> {
    require_positive("lambda0", lambda0)?;
    let k0 = wavenumber(lambda0);
    let n2 = g.n_upper_clad();
    let n3 = g.n_lower_clad();
    let rho3 = match pol {
        Polarization::Te => 1.0,
        Polarization::Tm => (g.n_core / n3).powi(2),
    };
    let na = diff_sqrt(g.n_core, n2);
    let asym = rho3 * diff_sqrt(n2, n3) / na;
    Ok((m as f64 * PI + asym.atan()) / (k0 * na))
}

/// All guided modes of one polarization, in decreasing `n_eff`.
pub fn enumerate_modes(g: &SlabGeometry, lambda0: f64, pol: Polarization) -> Result<Vec<SlabMode>> {
    let mut modes = Vec::new();
    for m in 0.. {
        match solve_mode(g, lambda0, pol, m)? {
            Some(mode) => modes.push(mode),
            None => break,
        }
    }
    Ok(modes)
}
