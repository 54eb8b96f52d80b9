//! Light sources and their temporal coherence.
//!
//! A source is a centre wavelength `λ₀` and a spectral FWHM `Δλ`. Its
//! coherence time is `T_c = 1/Δν` and its coherence length `L_c = λ₀²/Δλ`.
//! A zero-width (Dirac) line has infinite coherence, represented by
//! [`Extent::Infinite`] rather than an IEEE infinity.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{require_non_negative, require_positive, Error, Result};
use crate::quantities::{PLANCK, SPEED_OF_LIGHT};

/// A length or duration that may be unbounded.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Extent {
    Finite(f64),
    Infinite,
}

impl Extent {
    pub fn is_infinite(&self) -> bool {
        matches!(self, Extent::Infinite)
    }

    pub fn finite(&self) -> Option<f64> {
        match *self {
            Extent::Finite(x) => Some(x),
            Extent::Infinite => None,
        }
    }

    /// `1/self`, exactly zero for an infinite extent.
    pub fn reciprocal(&self) -> f64 {
        match *self {
            Extent::Finite(x) => 1.0 / x,
            Extent::Infinite => 0.0,
        }
    }

    pub(crate) fn validate(&self, field: &'static str) -> Result<()> {
        match *self {
            Extent::Finite(x) => require_positive(field, x).map(|_| ()),
            Extent::Infinite => Ok(()),
        }
    }
}

impl fmt::Display for Extent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extent::Finite(x) => write!(f, "{x:e}"),
            Extent::Infinite => f.write_str("infinite"),
        }
    }
}

impl Serialize for Extent {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match *self {
            Extent::Finite(x) => s.serialize_f64(x),
            Extent::Infinite => s.serialize_str("infinite"),
        }
    }
}

impl<'de> Deserialize<'de> for Extent {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(x) => Ok(Extent::Finite(x)),
            Raw::Str(s) if s == "infinite" => Ok(Extent::Infinite),
            Raw::Str(s) => Err(serde::de::Error::custom(format!(
                "expected a number or \"infinite\", got {s:?}"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LightSource {
    /// Centre vacuum wavelength, m.
    pub lambda0: f64,
    /// Spectral FWHM, m; zero for a Dirac line.
    pub delta_lambda: f64,
    pub label: String,
}

impl LightSource {
    pub fn new(lambda0: f64, delta_lambda: f64, label: impl Into<String>) -> Result<Self> {
        require_positive("lambda0", lambda0)?;
        require_non_negative("delta_lambda", delta_lambda)?;
        if delta_lambda >= lambda0 {
            return Err(Error::domain(
                "delta_lambda",
                delta_lambda,
                "must be smaller than lambda0",
            ));
        }
        Ok(LightSource {
            lambda0,
            delta_lambda,
            label: label.into(),
        })
    }

    pub fn dirac(lambda0: f64) -> Result<Self> {
        Self::new(lambda0, 0.0, "dirac")
    }

    pub fn is_dirac(&self) -> bool {
        self.delta_lambda == 0.0
    }

    pub fn coherence_length(&self) -> Extent {
        if self.is_dirac() {
            Extent::Infinite
        } else {
            Extent::Finite(self.lambda0 * self.lambda0 / self.delta_lambda)
        }
    }

    /// Photon-energy spread `ΔE = h·c·Δλ/λ₀²`, J.
    pub fn energy_spread(&self) -> f64 {
        PLANCK * SPEED_OF_LIGHT * self.delta_lambda / (self.lambda0 * self.lambda0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CoherenceInfo {
    /// Spectral FWHM in frequency, Hz.
    pub delta_nu: f64,
    /// s.
    pub coherence_time: Extent,
    /// m.
    pub coherence_length: Extent,
}

pub fn coherence_info(src: &LightSource) -> CoherenceInfo {
    if src.is_dirac() {
        return CoherenceInfo {
            delta_nu: 0.0,
            coherence_time: Extent::Infinite,
            coherence_length: Extent::Infinite,
        };
    }
    let delta_nu = SPEED_OF_LIGHT * src.delta_lambda / (src.lambda0 * src.lambda0);
    CoherenceInfo {
        delta_nu,
        coherence_time: Extent::Finite(1.0 / delta_nu),
        coherence_length: src.coherence_length(),
    }
}

/// Representative sources, from broadband superluminescent diodes to
/// narrow-line lasers.
pub fn preset_sources() -> Vec<LightSource> {
    [
        (1.55e-6, 50e-9, "sld-1550"),
        (0.84e-6, 25e-9, "sld-840"),
        (1.31e-6, 1e-9, "fp-laser-1310"),
        (1.55e-6, 0.8e-12, "dfb-laser-1550"),
        (0.6328e-6, 2e-15, "hene-633"),
    ]
    .into_iter()
    .map(|(l, dl, name)| LightSource::new(l, dl, name).expect("preset is valid"))
    .collect()
}

pub fn preset(name: &str) -> Option<LightSource> {
    preset_sources().into_iter().find(|s| s.label == name)
}
