//! Dimension sweeps: solve the mode at each core size and evaluate the
//! eigenvalue bound with `Δx` tied to the structure.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coherence::{Extent, LightSource};
use crate::error::{Error, Result};
use crate::fiber::{solve_fiber, FiberFamily, FiberGeometry};
use crate::slab::{solve_mode, Polarization, SlabGeometry};
use crate::uncertainty::{bound_neff, BoundInputs, Classification};

/// A structure with every field fixed except the swept dimension.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Structure {
    /// Swept dimension: core thickness `d`.
    Slab {
        n_core: f64,
        n_sub: f64,
        n_cover: f64,
        pol: Polarization,
        #[serde(default)]
        order: u32,
    },
    /// Swept dimension: core radius `a`.
    Fiber {
        n_core: f64,
        n_clad: f64,
        family: FiberFamily,
    },
}

impl Structure {
    pub fn swept_parameter(&self) -> &'static str {
        match self {
            Structure::Slab { .. } => "d",
            Structure::Fiber { .. } => "a",
        }
    }

    /// `n_core − max(cladding)`: the span an index uncertainty is compared to.
    pub fn index_contrast(&self) -> f64 {
        match *self {
            Structure::Slab {
                n_core,
                n_sub,
                n_cover,
                ..
            } => n_core - n_sub.max(n_cover),
            Structure::Fiber { n_core, n_clad, .. } => n_core - n_clad,
        }
    }

    pub fn describe(&self) -> String {
        match *self {
            Structure::Slab {
                n_core,
                n_sub,
                n_cover,
                pol,
                order,
            } => format!(
                "slab n_core={n_core} n_sub={n_sub} n_cover={n_cover} mode={}{order}",
                pol.label()
            ),
            Structure::Fiber {
                n_core,
                n_clad,
                family,
            } => format!(
                "fiber n_core={n_core} n_clad={n_clad} mode={}",
                family.label()
            ),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Spacing {
    Linear,
    Log,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRange {
    /// m.
    pub min: f64,
    /// m.
    pub max: f64,
    pub points: usize,
    pub spacing: Spacing,
}

impl SweepRange {
    pub fn grid(&self) -> Vec<f64> {
        let n = self.points;
        let last = (n - 1) as f64;
        (0..n)
            .map(|i| {
                if i == 0 {
                    return self.min;
                }
                if i == n - 1 {
                    return self.max;
                }
                let f = i as f64 / last;
                match self.spacing {
                    Spacing::Linear => self.min + (self.max - self.min) * f,
                    Spacing::Log => (self.min.ln() + (self.max.ln() - self.min.ln()) * f).exp(),
                }
            })
            .collect()
    }
}

/// Which transverse measure stands in for the localisation `Δx`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DxPolicy {
    /// The swept dimension itself (`d` or `a`).
    CoreDimension,
    /// `d + 1/γ_sub + 1/γ_cover`; slab only.
    EffectiveWidth,
}

impl DxPolicy {
    pub fn label(self) -> &'static str {
        match self {
            DxPolicy::CoreDimension => "core_dimension",
            DxPolicy::EffectiveWidth => "effective_width",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepSpec {
    pub structure: Structure,
    pub range: SweepRange,
    pub source: LightSource,
    pub dx_policy: DxPolicy,
    pub modal_window: f64,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        let mut problems = Vec::new();
        let r = &self.range;
        if !(r.min.is_finite() && r.min > 0.0) {
            problems.push(format!("range.min must be positive (got {:e})", r.min));
        }
        if !(r.max.is_finite() && r.max > r.min) {
            problems.push(format!("range.max must exceed range.min (got {:e})", r.max));
        }
        if r.points < 2 {
            problems.push(format!(
                "range.points must be at least 2 (got {})",
                r.points
            ));
        }
        if !(self.modal_window.is_finite() && self.modal_window > 0.0) {
            problems.push(format!(
                "modal_window must be positive (got {})",
                self.modal_window
            ));
        }
        if let Err(e) = LightSource::new(
            self.source.lambda0,
            self.source.delta_lambda,
            self.source.label.clone(),
        ) {
            problems.push(format!("source.{e}"));
        }
        let probe = if r.min > 0.0 { r.min } else { 1.0 };
        match self.structure {
            Structure::Slab {
                n_core,
                n_sub,
                n_cover,
                ..
            } => {
                if let Err(e) = SlabGeometry::new(probe, n_core, n_sub, n_cover) {
                    problems.push(format!("structure.{e}"));
                }
            }
            Structure::Fiber { n_core, n_clad, .. } => {
                if let Err(e) = FiberGeometry::new(probe, n_core, n_clad) {
                    problems.push(format!("structure.{e}"));
                }
                if self.dx_policy == DxPolicy::EffectiveWidth {
                    problems.push("dx_policy: effective_width is only defined for slabs".into());
                }
            }
        }
        if problems.is_empty() {
            Ok(())
        } else {
            Err(Error::Validation(problems))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    /// Swept dimension, m.
    pub dimension: f64,
    pub n_eff: Option<f64>,
    pub min_delta_neff: Option<f64>,
    pub vacuous: Option<bool>,
    pub classification: Option<Classification>,
    pub relative_fuzziness: Option<f64>,
    /// The `Δx` the bound was evaluated at, m.
    #[serde(skip)]
    pub delta_x: Option<f64>,
}

impl SweepRow {
    fn absent(dimension: f64) -> Self {
        SweepRow {
            dimension,
            n_eff: None,
            min_delta_neff: None,
            vacuous: None,
            classification: None,
            relative_fuzziness: None,
            delta_x: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepMeta {
    pub structure: String,
    pub swept_parameter: &'static str,
    pub lambda0_m: f64,
    pub source: String,
    pub delta_lambda_m: f64,
    pub coherence_length_m: Extent,
    pub dx_policy: &'static str,
    pub modal_window: f64,
    pub points: usize,
    pub spacing: Spacing,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepTable {
    pub meta: SweepMeta,
    pub rows: Vec<SweepRow>,
}

fn evaluate_point(spec: &SweepSpec, dimension: f64) -> Result<SweepRow> {
    let lambda0 = spec.source.lambda0;
    let (n_eff, delta_x) = match spec.structure {
        Structure::Slab {
            n_core,
            n_sub,
            n_cover,
            pol,
            order,
        } => {
            let g = SlabGeometry::new(dimension, n_core, n_sub, n_cover)?;
            match solve_mode(&g, lambda0, pol, order)? {
                None => return Ok(SweepRow::absent(dimension)),
                Some(mode) => {
                    let dx = match spec.dx_policy {
                        DxPolicy::CoreDimension => dimension,
                        DxPolicy::EffectiveWidth => mode.effective_width,
                    };
                    (mode.n_eff, dx)
                }
            }
        }
        Structure::Fiber {
            n_core,
            n_clad,
            family,
        } => {
            let g = FiberGeometry::new(dimension, n_core, n_clad)?;
            (solve_fiber(&g, lambda0, family)?.n_eff, dimension)
        }
    };
    let inputs = BoundInputs::new(lambda0, n_eff, delta_x, spec.source.coherence_length());
    let report = bound_neff(&inputs, spec.modal_window)?;
    Ok(SweepRow {
        dimension,
        n_eff: Some(n_eff),
        min_delta_neff: Some(report.min_delta_neff),
        vacuous: Some(report.vacuous),
        classification: Some(report.classification),
        relative_fuzziness: Some(report.min_delta_neff / spec.structure.index_contrast()),
        delta_x: Some(delta_x),
    })
}

/// Evaluates every sweep point; rows are returned in grid order.
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepTable> {
    spec.validate()?;
    let grid = spec.range.grid();
    let rows = grid
        .par_iter()
        .map(|&dim| {
            evaluate_point(spec, dim).map_err(|e| {
                Error::Internal(format!(
                    "sweep point {}={dim:e} m failed: {e}",
                    spec.structure.swept_parameter()
                ))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let source = &spec.source;
    Ok(SweepTable {
        meta: SweepMeta {
            structure: spec.structure.describe(),
            swept_parameter: spec.structure.swept_parameter(),
            lambda0_m: source.lambda0,
            source: source.label.clone(),
            delta_lambda_m: source.delta_lambda,
            coherence_length_m: source.coherence_length(),
            dx_policy: spec.dx_policy.label(),
            modal_window: spec.modal_window,
            points: spec.range.points,
            spacing: spec.range.spacing,
        },
        rows,
    })
}

/// Locates, in an already evaluated table, the dimension below which the
/// bound exceeds `modal_window`.
///
/// Rows are scanned from the largest dimension down; the first row above the
/// window is interpolated against its larger neighbour: linearly for
/// linear sweeps, log-log for log-spaced ones. Returns `None` when
/// no crossing lies inside the range.
pub fn crossover_in_table(table: &SweepTable, modal_window: f64) -> Option<f64> {
    let log = table.meta.spacing == Spacing::Log;
    let coord = |d: f64| if log { d.ln() } else { d };
    for pair in table.rows.windows(2).rev() {
        let (small, large) = (&pair[0], &pair[1]);
        let (Some(bs), Some(bl)) = (small.min_delta_neff, large.min_delta_neff) else {
            continue;
        };
        if bl > modal_window {
            return None;
        }
        if bs > modal_window {
            let (xs, xl) = (coord(small.dimension), coord(large.dimension));
            // A log grid is interpolated log-log, exact for a `1/Δx` law.
            let x = if log && bl > 0.0 {
                let (ys, yl) = (bs.ln(), bl.ln());
                xs + (modal_window.ln() - ys) * (xl - xs) / (yl - ys)
            } else {
                xs + (modal_window - bs) * (xl - xs) / (bl - bs)
            };
            return Some(if log { x.exp() } else { x });
        }
    }
    None
}

/// Runs the sweep and returns the fuzziness crossover, if one lies in range.
pub fn fuzziness_crossover(spec: &SweepSpec) -> Result<Option<f64>> {
    if spec.dx_policy != DxPolicy::CoreDimension {
        return Err(Error::Validation(vec![
            "dx_policy: crossover search requires core_dimension".into(),
        ]));
    }
    let table = run_sweep(spec)?;
    Ok(crossover_in_table(&table, spec.modal_window))
}
