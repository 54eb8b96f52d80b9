//! CSV and JSON serialization.
//!
//! Numbers are written with 15 significant digits, which round-trips every
//! value the solvers report at that precision. CSV uses `#`-prefixed metadata
//! lines, `,` separators, `\n` line endings and an empty field for an absent
//! value; JSON uses explicit `null`.

use std::fmt::Write as _;

use serde_json::{json, Map, Value};

use crate::coherence::Extent;
use crate::fiber::FiberMode;
use crate::quantities::make_eigenvalue_set;
use crate::slab::SlabMode;
use crate::sweep::SweepTable;

pub const SWEEP_COLUMNS: [&str; 6] = [
    "dimension_m",
    "n_eff",
    "min_delta_neff",
    "vacuous",
    "classification",
    "relative_fuzziness",
];

/// `x` with 15 significant digits in scientific notation, trailing zeros
/// of the mantissa removed: `1.5e-6`, `4.11150269654063e-8`.
pub fn fmt_num(x: f64) -> String {
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".into()
        } else if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    let s = format!("{x:.14e}");
    let (mantissa, exponent) = s.split_once('e').expect("scientific format");
    let mantissa = if mantissa.contains('.') {
        mantissa.trim_end_matches('0').trim_end_matches('.')
    } else {
        mantissa
    };
    format!("{mantissa}e{exponent}")
}

/// `x` rounded to 15 significant digits.
pub fn round15(x: f64) -> f64 {
    if x.is_finite() {
        fmt_num(x).parse().expect("formatted float parses")
    } else {
        x
    }
}

pub fn num(x: f64) -> Value {
    Value::from(round15(x))
}

fn opt_num(x: Option<f64>) -> Value {
    x.map_or(Value::Null, num)
}

pub fn extent(e: Extent) -> Value {
    match e {
        Extent::Finite(x) => num(x),
        Extent::Infinite => Value::from("infinite"),
    }
}

fn extent_text(e: Extent) -> String {
    match e {
        Extent::Finite(x) => fmt_num(x),
        Extent::Infinite => "infinite".into(),
    }
}

/// Optional trailing records of a sweep output.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SweepFooter {
    pub fuzziness_crossover_m: Option<Option<f64>>,
    pub definability_limit_m: Option<f64>,
}

fn meta_pairs(table: &SweepTable, stamp: Option<u64>) -> Vec<(&'static str, String)> {
    let m = &table.meta;
    let mut pairs = vec![
        ("structure", m.structure.clone()),
        ("swept_parameter", m.swept_parameter.to_string()),
        ("lambda0_m", fmt_num(m.lambda0_m)),
        ("source", m.source.clone()),
        ("delta_lambda_m", fmt_num(m.delta_lambda_m)),
        ("coherence_length_m", extent_text(m.coherence_length_m)),
        ("dx_policy", m.dx_policy.to_string()),
        ("modal_window", fmt_num(m.modal_window)),
        ("points", m.points.to_string()),
        (
            "spacing",
            match m.spacing {
                crate::sweep::Spacing::Linear => "linear".into(),
                crate::sweep::Spacing::Log => "log".into(),
            },
        ),
    ];
    if let Some(t) = stamp {
        pairs.push(("timestamp_unix", t.to_string()));
    }
    pairs
}

pub fn sweep_csv(table: &SweepTable, footer: &SweepFooter, stamp: Option<u64>) -> String {
    let mut out = String::new();
    for (k, v) in meta_pairs(table, stamp) {
        let _ = writeln!(out, "# {k}={v}");
    }
    out.push_str(&SWEEP_COLUMNS.join(","));
    out.push('\n');
    for r in &table.rows {
        let fields = [
            fmt_num(r.dimension),
            r.n_eff.map(fmt_num).unwrap_or_default(),
            r.min_delta_neff.map(fmt_num).unwrap_or_default(),
            r.vacuous.map(|v| v.to_string()).unwrap_or_default(),
            r.classification
                .map(|c| c.label().to_string())
                .unwrap_or_default(),
            r.relative_fuzziness.map(fmt_num).unwrap_or_default(),
        ];
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    if let Some(x) = footer.fuzziness_crossover_m {
        let text = x.map(fmt_num).unwrap_or_else(|| "none".into());
        let _ = writeln!(out, "# fuzziness_crossover_m={text}");
    }
    if let Some(x) = footer.definability_limit_m {
        let _ = writeln!(out, "# definability_limit_m={}", fmt_num(x));
    }
    out
}

pub fn sweep_json(table: &SweepTable, footer: &SweepFooter, stamp: Option<u64>) -> Value {
    let m = &table.meta;
    let mut meta = Map::new();
    meta.insert("structure".into(), Value::from(m.structure.clone()));
    meta.insert("swept_parameter".into(), Value::from(m.swept_parameter));
    meta.insert("lambda0_m".into(), num(m.lambda0_m));
    meta.insert("source".into(), Value::from(m.source.clone()));
    meta.insert("delta_lambda_m".into(), num(m.delta_lambda_m));
    meta.insert("coherence_length_m".into(), extent(m.coherence_length_m));
    meta.insert("dx_policy".into(), Value::from(m.dx_policy));
    meta.insert("modal_window".into(), num(m.modal_window));
    meta.insert("points".into(), Value::from(m.points));
    meta.insert(
        "spacing".into(),
        serde_json::to_value(m.spacing).expect("spacing serializes"),
    );
    if let Some(t) = stamp {
        meta.insert("timestamp_unix".into(), Value::from(t));
    }
    let rows: Vec<Value> = table
        .rows
        .iter()
        .map(|r| {
            json!({
                "dimension_m": num(r.dimension),
                "n_eff": opt_num(r.n_eff),
                "min_delta_neff": opt_num(r.min_delta_neff),
                "vacuous": r.vacuous,
                "classification": r.classification.map(|c| c.label()),
                "relative_fuzziness": opt_num(r.relative_fuzziness),
            })
        })
        .collect();
    let mut top = Map::new();
    top.insert("meta".into(), Value::Object(meta));
    top.insert("rows".into(), Value::Array(rows));
    if footer.fuzziness_crossover_m.is_some() || footer.definability_limit_m.is_some() {
        let mut f = Map::new();
        if let Some(x) = footer.fuzziness_crossover_m {
            f.insert("fuzziness_crossover_m".into(), opt_num(x));
        }
        if let Some(x) = footer.definability_limit_m {
            f.insert("definability_limit_m".into(), num(x));
        }
        top.insert("footer".into(), Value::Object(f));
    }
    Value::Object(top)
}

fn slab_fields(lambda0: f64, m: &SlabMode) -> [String; 9] {
    let ev = make_eigenvalue_set(lambda0, m.n_eff).expect("solved modes have n_eff > 0");
    [
        m.polarization.label().to_string(),
        m.order.to_string(),
        fmt_num(m.n_eff),
        fmt_num(ev.beta),
        fmt_num(ev.lambda_eff),
        fmt_num(m.kappa),
        fmt_num(m.gamma_sub),
        fmt_num(m.gamma_cover),
        fmt_num(m.effective_width),
    ]
}

const SLAB_COLUMNS: [&str; 9] = [
    "polarization",
    "order",
    "n_eff",
    "beta_rad_per_m",
    "lambda_eff_m",
    "kappa_rad_per_m",
    "gamma_sub_rad_per_m",
    "gamma_cover_rad_per_m",
    "effective_width_m",
];

pub fn slab_modes_csv(d: f64, lambda0: f64, modes: &[SlabMode]) -> String {
    let mut out = format!("# d_m={}\n# lambda0_m={}\n", fmt_num(d), fmt_num(lambda0));
    out.push_str(&SLAB_COLUMNS.join(","));
    out.push('\n');
    for m in modes {
        out.push_str(&slab_fields(lambda0, m).join(","));
        out.push('\n');
    }
    out
}

pub fn slab_modes_json(d: f64, lambda0: f64, modes: &[SlabMode]) -> Value {
    let rows: Vec<Value> = modes
        .iter()
        .map(|m| {
            let ev = make_eigenvalue_set(lambda0, m.n_eff).expect("n_eff > 0");
            json!({
                "polarization": m.polarization.label(),
                "order": m.order,
                "n_eff": num(m.n_eff),
                "beta_rad_per_m": num(ev.beta),
                "lambda_eff_m": num(ev.lambda_eff),
                "kappa_rad_per_m": num(m.kappa),
                "gamma_sub_rad_per_m": num(m.gamma_sub),
                "gamma_cover_rad_per_m": num(m.gamma_cover),
                "effective_width_m": num(m.effective_width),
            })
        })
        .collect();
    json!({
        "meta": { "d_m": num(d), "lambda0_m": num(lambda0) },
        "rows": rows,
    })
}

const FIBER_COLUMNS: [&str; 8] = [
    "family",
    "n_eff",
    "u",
    "w",
    "v",
    "ln_w",
    "beta_rad_per_m",
    "lambda_eff_m",
];

pub fn fiber_mode_csv(a: f64, lambda0: f64, m: &FiberMode) -> String {
    let ev = make_eigenvalue_set(lambda0, m.n_eff).expect("n_eff > 0");
    let fields = [
        m.family.label().to_string(),
        fmt_num(m.n_eff),
        fmt_num(m.u),
        fmt_num(m.w),
        fmt_num(m.v),
        fmt_num(m.ln_w),
        fmt_num(ev.beta),
        fmt_num(ev.lambda_eff),
    ];
    format!(
        "# a_m={}\n# lambda0_m={}\n{}\n{}\n",
        fmt_num(a),
        fmt_num(lambda0),
        FIBER_COLUMNS.join(","),
        fields.join(",")
    )
}

pub fn fiber_mode_json(a: f64, lambda0: f64, m: &FiberMode) -> Value {
    let ev = make_eigenvalue_set(lambda0, m.n_eff).expect("n_eff > 0");
    json!({
        "a_m": num(a),
        "lambda0_m": num(lambda0),
        "family": m.family.label(),
        "n_eff": num(m.n_eff),
        "u": num(m.u),
        "w": num(m.w),
        "v": num(m.v),
        "ln_w": num(m.ln_w),
        "beta_rad_per_m": num(ev.beta),
        "lambda_eff_m": num(ev.lambda_eff),
    })
}

/// Renders a flat key/value object as a two-line CSV (header, values).
pub fn flat_csv(obj: &Value) -> String {
    let Value::Object(map) = obj else {
        return String::new();
    };
    let keys: Vec<&str> = map.keys().map(String::as_str).collect();
    let values: Vec<String> = map
        .values()
        .map(|v| match v {
            Value::Null => String::new(),
            Value::Number(n) => n.as_f64().map(fmt_num).unwrap_or_else(|| n.to_string()),
            Value::String(s) => s.clone(),
            other => other.to_string(),
        })
        .collect();
    format!("{}\n{}\n", keys.join(","), values.join(","))
}
