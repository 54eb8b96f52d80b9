//! Step-index circular waveguide: the fundamental HE₁₁ mode.
//!
//! With `u = a·√(k₀²n_core² − β²)`, `w = a·√(β² − k₀²n_clad²)` and
//! `v² = u² + w²`, the exact hybrid (`ν = 1`) eigenvalue equation reads
//!
//! ```text
//! (A + B)(A + r·B) = (1/u² + 1/w²)(1/u² + r/w²)
//! A = J₁'(u)/(u·J₁(u)),  B = K₁'(w)/(w·K₁(w)),  r = n_clad²/n_core²
//! ```
//!
//! The weak-guidance LP₀₁ approximation is `u·J₁(u)/J₀(u) = w·K₁(w)/K₀(w)`.
//!
//! Both are solved in the first branch `0 < u < min(v, j)` where `j` is the
//! first zero of `J₁` (HE₁₁) or `J₀` (LP₀₁). The fundamental mode has no
//! cutoff, but as `v → 0` the cladding parameter behaves like `e^{-2/v²}` and
//! leaves the floating-point range; below `v = 1` the solver therefore
//! iterates on `ln w` and works with the determinant multiplied by `w²`,
//! in which every `1/w²` term has been cancelled analytically.

use serde::{Deserialize, Serialize};

use crate::error::{require_positive, Error, Result};
use crate::quantities::wavenumber;
use crate::roots::brent;
use crate::specfun::{j01, k01_scaled, J0_FIRST_ZERO, J1_FIRST_ZERO};

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
/// Below this `ln w`, `K₀/(w·K₁)` is replaced by its logarithmic asymptote.
const LN_W_ASYMPTOTIC: f64 = -600.0;
/// Crossover between the `u` and `ln w` parametrisations.
const V_LOG_REGIME: f64 = 1.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FiberGeometry {
    /// Core radius, m.
    pub a: f64,
    pub n_core: f64,
    pub n_clad: f64,
}

impl FiberGeometry {
    pub fn new(a: f64, n_core: f64, n_clad: f64) -> Result<Self> {
        require_positive("a", a)?;
        require_positive("n_clad", n_clad)?;
        if !(n_core.is_finite() && n_core > n_clad) {
            return Err(Error::domain("n_core", n_core, "must exceed n_clad"));
        }
        Ok(FiberGeometry { a, n_core, n_clad })
    }

    pub fn with_radius(&self, a: f64) -> Result<Self> {
        Self::new(a, self.n_core, self.n_clad)
    }

    /// Normalized frequency `v = k₀·a·√(n_core² − n_clad²)`.
    pub fn v_number(&self, lambda0: f64) -> f64 {
        wavenumber(lambda0) * self.a * diff_sqrt(self.n_core, self.n_clad)
    }

    fn index_ratio(&self) -> f64 {
        (self.n_clad / self.n_core).powi(2)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FiberFamily {
    He11,
    Lp01,
}

impl FiberFamily {
    pub fn label(self) -> &'static str {
        match self {
            FiberFamily::He11 => "he11",
            FiberFamily::Lp01 => "lp01",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FiberMode {
    pub family: FiberFamily,
    pub n_eff: f64,
    pub u: f64,
    /// May underflow to zero for `v ≲ 0.03`; `ln_w` stays finite.
    pub w: f64,
    pub v: f64,
    pub ln_w: f64,
}

impl FiberMode {
    /// `ln b` with `b = w²/v² = (n_eff² − n_clad²)/(n_core² − n_clad²)`.
    pub fn ln_normalized_b(&self) -> f64 {
        2.0 * (self.ln_w - self.v.ln())
    }
}

#[inline]
fn diff_sqrt(a: f64, b: f64) -> f64 {
    ((a - b) * (a + b)).max(0.0).sqrt()
}

/// Core and cladding parameters at one trial eigenvalue.
#[derive(Debug, Clone, Copy)]
struct Transverse {
    u: f64,
    w: f64,
    ln_w: f64,
}

impl Transverse {
    fn from_u(v: f64, u: f64) -> Self {
        let w = diff_sqrt(v, u);
        Transverse { u, w, ln_w: w.ln() }
    }

    fn from_ln_w(v: f64, ln_w: f64) -> Self {
        let u = v * (-(2.0 * (ln_w - v.ln())).exp_m1()).max(0.0).sqrt();
        Transverse {
            u,
            w: ln_w.exp(),
            ln_w,
        }
    }
}

/// `J₀(u)/(u·J₁(u))`.
fn core_ratio(u: f64) -> Result<f64> {
    let (j0, j1) = j01(u);
    if j1.value.abs() <= 1e-300 || j1.value.abs() <= j1.est_abs_error {
        return Err(Error::Pole { u });
    }
    Ok(j0.value / (u * j1.value))
}

/// `K₀(w)/(w·K₁(w))`.
fn clad_ratio(t: &Transverse) -> f64 {
    if t.ln_w < LN_W_ASYMPTOTIC {
        std::f64::consts::LN_2 - EULER_GAMMA - t.ln_w
    } else {
        let (k0, k1) = k01_scaled(t.w);
        k0.value / (t.w * k1.value)
    }
}

/// The HE₁₁ determinant multiplied by `w²`.
fn he11_scaled(r: f64, t: &Transverse) -> Result<f64> {
    let p = core_ratio(t.u)?;
    let q = clad_ratio(t);
    let uu = 1.0 / (t.u * t.u);
    let w2 = t.w * t.w;
    let rest = p * (p - 2.0 * uu) - (1.0 + r) * (p - uu) * q + r * q * q;
    Ok(2.0 * r * q - (1.0 + r) * p + w2 * rest)
}

/// The LP₀₁ condition `K₀/(wK₁) = J₀/(uJ₁)` multiplied by `u²`, which keeps
/// both sides of order one as `v → 0`.
fn lp01_form(t: &Transverse) -> Result<f64> {
    Ok(t.u * t.u * (clad_ratio(t) - core_ratio(t.u)?))
}

fn family_residual(family: FiberFamily, r: f64, t: &Transverse) -> Result<f64> {
    match family {
        FiberFamily::He11 => he11_scaled(r, t),
        FiberFamily::Lp01 => lp01_form(t),
    }
}

/// `(u, w, v)` at a trial effective index.
pub fn transverse_parameters(g: &FiberGeometry, lambda0: f64, n_eff: f64) -> (f64, f64, f64) {
    let ka = wavenumber(lambda0) * g.a;
    (
        ka * diff_sqrt(g.n_core, n_eff),
        ka * diff_sqrt(n_eff, g.n_clad),
        ka * diff_sqrt(g.n_core, g.n_clad),
    )
}

/// The exact `ν = 1` hybrid dispersion determinant `F(n_eff)`.
///
/// Returns [`Error::Pole`] when `u` falls on a zero of `J₁`.
pub fn he11_residual(g: &FiberGeometry, lambda0: f64, n_eff: f64) -> Result<f64> {
    require_positive("lambda0", lambda0)?;
    if !(n_eff > g.n_clad && n_eff < g.n_core) {
        return Err(Error::domain(
            "n_eff",
            n_eff,
            "must lie strictly between n_clad and n_core",
        ));
    }
    let (u, w, _) = transverse_parameters(g, lambda0, n_eff);
    let t = Transverse { u, w, ln_w: w.ln() };
    let p = core_ratio(u)?;
    let q = clad_ratio(&t);
    let r = g.index_ratio();
    let uu = 1.0 / (u * u);
    let ww = 1.0 / (w * w);
    let a_term = p - uu; // J₁'/(uJ₁)
    let b_term = -q - ww; // K₁'/(wK₁)
    Ok((a_term + b_term) * (a_term + r * b_term) - (uu + ww) * (uu + r * ww))
}

/// Residual of a solved mode at its own `(u, w)`: the `w²`-scaled HE₁₁
/// determinant, or `u²·(K₀/(wK₁) − J₀/(uJ₁))` for LP₀₁.
pub fn mode_residual(g: &FiberGeometry, mode: &FiberMode) -> Result<f64> {
    let t = Transverse {
        u: mode.u,
        w: mode.w,
        ln_w: mode.ln_w,
    };
    family_residual(mode.family, g.index_ratio(), &t)
}

pub fn solve_he11(g: &FiberGeometry, lambda0: f64) -> Result<FiberMode> {
    solve(g, lambda0, FiberFamily::He11)
}

pub fn solve_lp01(g: &FiberGeometry, lambda0: f64) -> Result<FiberMode> {
    solve(g, lambda0, FiberFamily::Lp01)
}

pub fn solve_fiber(g: &FiberGeometry, lambda0: f64, family: FiberFamily) -> Result<FiberMode> {
    solve(g, lambda0, family)
}

fn solve(g: &FiberGeometry, lambda0: f64, family: FiberFamily) -> Result<FiberMode> {
    require_positive("lambda0", lambda0)?;
    let v = g.v_number(lambda0);
    if !(v.is_finite() && v > 1e-100) {
        return Err(Error::domain("a", g.a, "normalized frequency out of range"));
    }
    let r = g.index_ratio();
    let u_cap = match family {
        FiberFamily::He11 => J1_FIRST_ZERO,
        FiberFamily::Lp01 => J0_FIRST_ZERO,
    };
    let failure = |e: Error| match e {
        Error::Internal(msg) => Error::Internal(format!(
            "{} root not found at v = {v:e}: {msg}",
            family.label()
        )),
        other => other,
    };

    let t = if v >= V_LOG_REGIME {
        let hi = (v * (1.0 - 1e-12)).min(u_cap * (1.0 - 1e-12));
        let u = brent(
            |u| family_residual(family, r, &Transverse::from_u(v, u)),
            1e-3,
            hi,
            0.0,
        )
        .map_err(failure)?;
        Transverse::from_u(v, u)
    } else {
        let ln_v = v.ln();
        let hi = ln_v + 0.5 * (-1e-6f64).ln_1p();
        let f = |ln_w: f64| family_residual(family, r, &Transverse::from_ln_w(v, ln_w));
        let mut depth = 1.0;
        let mut lo = ln_v - depth;
        while f(lo)? <= 0.0 {
            depth *= 2.0;
            lo = ln_v - depth;
            if depth > 1e300 {
                return Err(failure(Error::Internal("no bracket in ln w".into())));
            }
        }
        let ln_w = brent(f, lo, hi, 0.0).map_err(failure)?;
        Transverse::from_ln_w(v, ln_w)
    };

    let ka = wavenumber(lambda0) * g.a;
    let n_eff = if t.w < t.u {
        g.n_clad.hypot(t.w / ka)
    } else {
        diff_sqrt(g.n_core, t.u / ka)
    };
    Ok(FiberMode {
        family,
        n_eff,
        u: t.u,
        w: t.w,
        v,
        ln_w: t.ln_w,
    })
}
