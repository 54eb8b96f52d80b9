//! Batch command-line front-end.
//!
//! Exit codes: 0 success, 1 validation or configuration error, 2 valid input
//! for which the requested mode does not exist.

use std::ffi::OsString;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::coherence::{coherence_info, preset, preset_sources, Extent, LightSource};
use crate::error::Error;
use crate::fiber::{solve_fiber, FiberFamily, FiberGeometry};
use crate::report::{self, fmt_num, num, SweepFooter};
use crate::slab::{cutoff_thickness, enumerate_modes, solve_mode, Polarization, SlabGeometry};
use crate::sweep::{
    crossover_in_table, run_sweep, DxPolicy, Spacing, Structure, SweepRange, SweepSpec,
};
use crate::uncertainty::{bound_neff, definability_limit, BoundInputs, DEFAULT_MODAL_WINDOW};
use crate::units::{parse_length, unit_scale};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_NO_MODE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "neffbound",
    version,
    about = "Effective-index solvers and uncertainty bounds on waveguide eigenvalues"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Guided modes of a three-layer slab.
    SolveSlab(SolveSlabArgs),
    /// Fundamental mode of a step-index fiber.
    SolveFiber(SolveFiberArgs),
    /// Coherence time and length of a source.
    Coherence(CoherenceArgs),
    /// Minimum effective-index uncertainty at a given confinement.
    Bound(BoundArgs),
    /// Bound along a core-dimension sweep.
    Sweep(SweepArgs),
    /// Confinement below which the effective index is ill-defined.
    Limit(LimitArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PolArg {
    Te,
    Tm,
}

impl From<PolArg> for Polarization {
    fn from(p: PolArg) -> Self {
        match p {
            PolArg::Te => Polarization::Te,
            PolArg::Tm => Polarization::Tm,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    He11,
    Lp01,
}

impl From<FamilyArg> for FiberFamily {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::He11 => FiberFamily::He11,
            FamilyArg::Lp01 => FiberFamily::Lp01,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StructureArg {
    Slab,
    Fiber,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SpacingArg {
    Linear,
    Log,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DxPolicyArg {
    CoreDimension,
    EffectiveWidth,
}

fn length(s: &str) -> Result<f64, String> {
    parse_length(s).map_err(|e| e.0)
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Write to a file instead of standard output.
    #[arg(short = 'o', long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SolveSlabArgs {
    /// Core thickness, e.g. 500nm.
    #[arg(long, value_parser = length, allow_hyphen_values = true)]
    pub d: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub n_core: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub n_sub: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub n_cover: f64,
    /// Vacuum wavelength, e.g. 1550nm.
    #[arg(long, value_parser = length, allow_hyphen_values = true)]
    pub lambda0: f64,
    #[arg(long, value_enum)]
    pub pol: PolArg,
    /// Mode order; defaults to the fundamental.
    #[arg(long, conflicts_with = "all")]
    pub order: Option<u32>,
    /// Every guided mode.
    #[arg(long)]
    pub all: bool,
    #[arg(long, value_enum, default_value = "csv")]
    pub emit: Emit,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SolveFiberArgs {
    /// Core radius, e.g. 4.1um.
    #[arg(long, value_parser = length, allow_hyphen_values = true)]
    pub a: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub n_core: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub n_clad: f64,
    #[arg(long, value_parser = length, allow_hyphen_values = true)]
    pub lambda0: f64,
    #[arg(long, value_enum, default_value = "he11")]
    pub family: FamilyArg,
    #[arg(long, value_enum, default_value = "json")]
    pub emit: Emit,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct CoherenceArgs {
    #[arg(long, value_parser = length, allow_hyphen_values = true, required_unless_present_any = ["preset", "list_presets"])]
    pub lambda0: Option<f64>,
    /// Spectral FWHM; 0m for a Dirac line.
    #[arg(long, value_parser = length, allow_hyphen_values = true, required_unless_present_any = ["preset", "list_presets"])]
    pub delta_lambda: Option<f64>,
    /// A named source from the preset list.
    #[arg(long, conflicts_with_all = ["lambda0", "delta_lambda"])]
    pub preset: Option<String>,
    /// Print every preset.
    #[arg(long)]
    pub list_presets: bool,
    #[arg(long, value_enum, default_value = "json")]
    pub emit: Emit,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
#[group(id = "coherence_choice", required = true, multiple = false, args = ["lc", "dirac"])]
pub struct CoherenceChoice {
    /// Source coherence length, e.g. 100um.
    #[arg(long, value_parser = length, allow_hyphen_values = true)]
    pub lc: Option<f64>,
    /// Infinitely coherent source.
    #[arg(long)]
    pub dirac: bool,
}

impl CoherenceChoice {
    fn extent(&self) -> Extent {
        match self.lc {
            Some(x) => Extent::Finite(x),
            None => Extent::Infinite,
        }
    }
}

#[derive(Debug, Args)]
pub struct BoundArgs {
    #[arg(long, value_parser = length, allow_hyphen_values = true)]
    pub lambda0: f64,
    /// Spatial localisation of the mode, e.g. 100nm.
    #[arg(long, value_parser = length, allow_hyphen_values = true)]
    pub dx: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub n_eff: f64,
    #[command(flatten)]
    pub coherence: CoherenceChoice,
    #[arg(long, default_value_t = DEFAULT_MODAL_WINDOW, allow_hyphen_values = true)]
    pub window: f64,
    #[arg(long, value_enum, default_value = "json")]
    pub emit: Emit,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct LimitArgs {
    #[arg(long, value_parser = length, allow_hyphen_values = true)]
    pub lambda0: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub n_eff: f64,
    #[command(flatten)]
    pub coherence: CoherenceChoice,
    #[arg(long, default_value_t = DEFAULT_MODAL_WINDOW, allow_hyphen_values = true)]
    pub window: f64,
    /// Output unit for the plain-text form.
    #[arg(long, default_value = "nm")]
    pub unit: String,
    /// Plain text by default.
    #[arg(long, value_enum)]
    pub emit: Option<Emit>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// JSON run configuration; replaces the structure, range and source flags.
    #[arg(long, conflicts_with_all = ["structure", "min", "max", "lambda0", "preset"])]
    pub config: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub structure: Option<StructureArg>,
    #[arg(long, allow_hyphen_values = true)]
    pub n_core: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub n_sub: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub n_cover: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub n_clad: Option<f64>,
    #[arg(long, value_enum, default_value = "te")]
    pub pol: PolArg,
    #[arg(long, default_value_t = 0)]
    pub order: u32,
    #[arg(long, value_enum, default_value = "he11")]
    pub family: FamilyArg,
    /// Smallest swept dimension.
    #[arg(long, value_parser = length, allow_hyphen_values = true)]
    pub min: Option<f64>,
    /// Largest swept dimension.
    #[arg(long, value_parser = length, allow_hyphen_values = true)]
    pub max: Option<f64>,
    #[arg(long, default_value_t = 50)]
    pub points: usize,
    #[arg(long, value_enum, default_value = "log")]
    pub spacing: SpacingArg,
    #[arg(long, value_parser = length, allow_hyphen_values = true)]
    pub lambda0: Option<f64>,
    /// Source FWHM; omitted or 0m means a Dirac line.
    #[arg(long, value_parser = length, allow_hyphen_values = true, conflicts_with = "preset")]
    pub delta_lambda: Option<f64>,
    #[arg(long)]
    pub preset: Option<String>,
    #[arg(long, value_enum, default_value = "core-dimension")]
    pub dx_policy: DxPolicyArg,
    #[arg(long, allow_hyphen_values = true)]
    pub window: Option<f64>,
    #[arg(long, value_enum)]
    pub emit: Option<Emit>,
    /// Append the interpolated fuzziness crossover.
    #[arg(long)]
    pub find_limit: bool,
    /// Record the run time in the metadata.
    #[arg(long)]
    pub stamp: bool,
    #[command(flatten)]
    pub out: OutputArgs,
}

/// A length given as a unit-suffixed string in a config file.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Length(f64);

impl<'de> Deserialize<'de> for Length {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_length(&s)
            .map(Length)
            .map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RangeConfig {
    min: Length,
    max: Length,
    points: usize,
    #[serde(default = "default_spacing")]
    spacing: Spacing,
}

fn default_spacing() -> Spacing {
    Spacing::Log
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SourceConfig {
    preset: Option<String>,
    lambda0: Option<Length>,
    delta_lambda: Option<Length>,
    label: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SweepConfig {
    structure: Structure,
    range: RangeConfig,
    source: SourceConfig,
    #[serde(default = "default_dx_policy")]
    dx_policy: DxPolicy,
    #[serde(default = "default_window")]
    modal_window: f64,
    emit: Option<String>,
    #[serde(default)]
    find_limit: bool,
}

fn default_dx_policy() -> DxPolicy {
    DxPolicy::CoreDimension
}

fn default_window() -> f64 {
    DEFAULT_MODAL_WINDOW
}

/// A failure carrying its exit code and diagnostic lines.
#[derive(Debug)]
struct Failure {
    code: i32,
    lines: Vec<String>,
}

impl Failure {
    fn invalid(msg: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INVALID,
            lines: vec![msg.into()],
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let lines = match e {
            Error::Validation(problems) => problems,
            other => vec![other.to_string()],
        };
        Failure {
            code: EXIT_INVALID,
            lines,
        }
    }
}

type CmdResult = Result<i32, Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                EXIT_INVALID
            } else {
                EXIT_OK
            };
        }
    };
    let outcome = match cli.command {
        Command::SolveSlab(a) => cmd_solve_slab(&a),
        Command::SolveFiber(a) => cmd_solve_fiber(&a),
        Command::Coherence(a) => cmd_coherence(&a),
        Command::Bound(a) => cmd_bound(&a),
        Command::Sweep(a) => cmd_sweep(&a),
        Command::Limit(a) => cmd_limit(&a),
    };
    match outcome {
        Ok(code) => code,
        Err(f) => {
            let mut err = std::io::stderr().lock();
            for line in &f.lines {
                let _ = writeln!(err, "error: {line}");
            }
            f.code
        }
    }
}

fn emit_text(out: &OutputArgs, text: &str) -> Result<(), Failure> {
    match &out.output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::invalid(format!("output: cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| Failure::invalid(format!("output: {e}")))
        }
    }
}

fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn render(emit: Emit, v: &Value) -> String {
    match emit {
        Emit::Json => json_text(v),
        Emit::Csv => report::flat_csv(v),
    }
}

fn cmd_solve_slab(a: &SolveSlabArgs) -> CmdResult {
    let g = SlabGeometry::new(a.d, a.n_core, a.n_sub, a.n_cover)?;
    let pol = Polarization::from(a.pol);
    let modes = if a.all {
        enumerate_modes(&g, a.lambda0, pol)?
    } else {
        let m = a.order.unwrap_or(0);
        solve_mode(&g, a.lambda0, pol, m)?.into_iter().collect()
    };
    if modes.is_empty() {
        let m = a.order.unwrap_or(0);
        let dc = cutoff_thickness(&g, a.lambda0, pol, m)?;
        let status = json!({
            "status": "below_cutoff",
            "polarization": pol.label(),
            "order": m,
            "d_m": num(a.d),
            "cutoff_d_m": num(dc),
        });
        let text = match a.emit {
            Emit::Json => json_text(&status),
            Emit::Csv => format!(
                "# status=below_cutoff polarization={} order={m} d_m={} cutoff_d_m={}\n",
                pol.label(),
                fmt_num(a.d),
                fmt_num(dc)
            ),
        };
        emit_text(&a.out, &text)?;
        eprintln!(
            "no guided {}{} mode: d = {} m is below the cutoff thickness {} m",
            pol.label(),
            m,
            fmt_num(a.d),
            fmt_num(dc)
        );
        return Ok(EXIT_NO_MODE);
    }
    let text = match a.emit {
        Emit::Csv => report::slab_modes_csv(a.d, a.lambda0, &modes),
        Emit::Json => json_text(&report::slab_modes_json(a.d, a.lambda0, &modes)),
    };
    emit_text(&a.out, &text)?;
    Ok(EXIT_OK)
}

fn cmd_solve_fiber(a: &SolveFiberArgs) -> CmdResult {
    let g = FiberGeometry::new(a.a, a.n_core, a.n_clad)?;
    let mode = solve_fiber(&g, a.lambda0, a.family.into())?;
    let text = match a.emit {
        Emit::Csv => report::fiber_mode_csv(a.a, a.lambda0, &mode),
        Emit::Json => json_text(&report::fiber_mode_json(a.a, a.lambda0, &mode)),
    };
    emit_text(&a.out, &text)?;
    Ok(EXIT_OK)
}

fn source_json(src: &LightSource) -> Value {
    let info = coherence_info(src);
    json!({
        "label": src.label,
        "lambda0_m": num(src.lambda0),
        "delta_lambda_m": num(src.delta_lambda),
        "delta_nu_hz": num(info.delta_nu),
        "coherence_time_s": report::extent(info.coherence_time),
        "coherence_length_m": report::extent(info.coherence_length),
        "energy_spread_j": num(src.energy_spread()),
    })
}

fn unknown_preset(name: &str) -> Failure {
    let names: Vec<String> = preset_sources().into_iter().map(|s| s.label).collect();
    Failure::invalid(format!(
        "preset: unknown source {name:?} (known: {})",
        names.join(", ")
    ))
}

fn cmd_coherence(a: &CoherenceArgs) -> CmdResult {
    if a.list_presets {
        let rows: Vec<Value> = preset_sources().iter().map(source_json).collect();
        let text = match a.emit {
            Emit::Json => json_text(&json!({ "meta": {}, "rows": rows })),
            Emit::Csv => {
                let mut text = String::new();
                for (i, r) in rows.iter().enumerate() {
                    let block = report::flat_csv(r);
                    let skip = if i == 0 { 0 } else { 1 };
                    for line in block.lines().skip(skip) {
                        text.push_str(line);
                        text.push('\n');
                    }
                }
                text
            }
        };
        emit_text(&a.out, &text)?;
        return Ok(EXIT_OK);
    }
    let src = match &a.preset {
        Some(name) => preset(name).ok_or_else(|| unknown_preset(name))?,
        None => LightSource::new(
            a.lambda0.expect("required by clap"),
            a.delta_lambda.expect("required by clap"),
            "custom",
        )?,
    };
    emit_text(&a.out, &render(a.emit, &source_json(&src)))?;
    Ok(EXIT_OK)
}

fn cmd_bound(a: &BoundArgs) -> CmdResult {
    let inputs = BoundInputs::new(a.lambda0, a.n_eff, a.dx, a.coherence.extent());
    let r = bound_neff(&inputs, a.window)?;
    let v = json!({
        "lambda0_m": num(a.lambda0),
        "delta_x_m": num(a.dx),
        "n_eff": num(a.n_eff),
        "coherence_length_m": report::extent(a.coherence.extent()),
        "modal_window": num(a.window),
        "min_delta_neff": num(r.min_delta_neff),
        "confinement_term": num(r.confinement_term),
        "coherence_term": num(r.coherence_term),
        "ratio_lambda_dx": num(r.ratio_lambda_dx),
        "ratio_lambda_lc": num(r.ratio_lambda_lc),
        "vacuous": r.vacuous,
        "classification": r.classification.label(),
    });
    emit_text(&a.out, &render(a.emit, &v))?;
    Ok(EXIT_OK)
}

fn cmd_limit(a: &LimitArgs) -> CmdResult {
    let scale = unit_scale(&a.unit)
        .ok_or_else(|| Failure::invalid(format!("unit: unknown length unit {:?}", a.unit)))?;
    let lc = a.coherence.extent();
    let dx = definability_limit(a.lambda0, a.n_eff, lc, a.window)?;
    let v = json!({
        "lambda0_m": num(a.lambda0),
        "n_eff": num(a.n_eff),
        "coherence_length_m": report::extent(lc),
        "modal_window": num(a.window),
        "definability_limit_m": num(dx),
    });
    let text = match a.emit {
        None => format!("{} {}\n", fmt_num(dx / scale), a.unit),
        Some(e) => render(e, &v),
    };
    emit_text(&a.out, &text)?;
    Ok(EXIT_OK)
}

fn source_from_config(c: &SourceConfig) -> Result<LightSource, Failure> {
    if let Some(name) = &c.preset {
        if c.lambda0.is_some() || c.delta_lambda.is_some() {
            return Err(Failure::invalid(
                "source: preset excludes lambda0 and delta_lambda",
            ));
        }
        return preset(name).ok_or_else(|| unknown_preset(name));
    }
    let lambda0 = c
        .lambda0
        .ok_or_else(|| Failure::invalid("source.lambda0: missing (or give source.preset)"))?;
    let dl = c.delta_lambda.map_or(0.0, |l| l.0);
    let label = c
        .label
        .clone()
        .unwrap_or_else(|| if dl == 0.0 { "dirac" } else { "custom" }.into());
    Ok(LightSource::new(lambda0.0, dl, label)?)
}

fn parse_emit(s: &str) -> Result<Emit, Failure> {
    match s {
        "csv" => Ok(Emit::Csv),
        "json" => Ok(Emit::Json),
        other => Err(Failure::invalid(format!(
            "emit: expected \"csv\" or \"json\", got {other:?}"
        ))),
    }
}

/// A sweep specification plus config-level output preferences.
struct SweepPlan {
    spec: SweepSpec,
    emit: Option<Emit>,
    find_limit: bool,
}

fn load_config(path: &Path) -> Result<SweepPlan, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::invalid(format!("config: cannot read {}: {e}", path.display())))?;
    let c: SweepConfig = serde_json::from_str(&text)
        .map_err(|e| Failure::invalid(format!("config {}: {e}", path.display())))?;
    let source = source_from_config(&c.source)?;
    let emit = c.emit.as_deref().map(parse_emit).transpose()?;
    Ok(SweepPlan {
        spec: SweepSpec {
            structure: c.structure,
            range: SweepRange {
                min: c.range.min.0,
                max: c.range.max.0,
                points: c.range.points,
                spacing: c.range.spacing,
            },
            source,
            dx_policy: c.dx_policy,
            modal_window: c.modal_window,
        },
        emit,
        find_limit: c.find_limit,
    })
}

fn plan_from_flags(a: &SweepArgs) -> Result<SweepPlan, Failure> {
    let mut missing = Vec::new();
    let mut need = |name: &str, v: Option<f64>| -> f64 {
        v.unwrap_or_else(|| {
            missing.push(format!("--{name}: required without --config"));
            f64::NAN
        })
    };
    let structure_kind = a.structure.unwrap_or(StructureArg::Slab);
    let structure = match structure_kind {
        StructureArg::Slab => {
            let n_core = need("n-core", a.n_core);
            let n_sub = need("n-sub", a.n_sub);
            Structure::Slab {
                n_core,
                n_sub,
                n_cover: a.n_cover.unwrap_or(n_sub),
                pol: a.pol.into(),
                order: a.order,
            }
        }
        StructureArg::Fiber => Structure::Fiber {
            n_core: need("n-core", a.n_core),
            n_clad: need("n-clad", a.n_clad),
            family: a.family.into(),
        },
    };
    let min = need("min", a.min);
    let max = need("max", a.max);
    let source = match &a.preset {
        Some(name) => Some(preset(name).ok_or_else(|| unknown_preset(name))?),
        None => {
            let lambda0 = need("lambda0", a.lambda0);
            if lambda0.is_nan() {
                None
            } else {
                let dl = a.delta_lambda.unwrap_or(0.0);
                let label = if dl == 0.0 { "dirac" } else { "custom" };
                Some(LightSource::new(lambda0, dl, label)?)
            }
        }
    };
    if !missing.is_empty() {
        return Err(Failure {
            code: EXIT_INVALID,
            lines: missing,
        });
    }
    Ok(SweepPlan {
        spec: SweepSpec {
            structure,
            range: SweepRange {
                min,
                max,
                points: a.points,
                spacing: match a.spacing {
                    SpacingArg::Linear => Spacing::Linear,
                    SpacingArg::Log => Spacing::Log,
                },
            },
            source: source.expect("present when nothing is missing"),
            dx_policy: match a.dx_policy {
                DxPolicyArg::CoreDimension => DxPolicy::CoreDimension,
                DxPolicyArg::EffectiveWidth => DxPolicy::EffectiveWidth,
            },
            modal_window: a.window.unwrap_or(DEFAULT_MODAL_WINDOW),
        },
        emit: None,
        find_limit: false,
    })
}

fn cmd_sweep(a: &SweepArgs) -> CmdResult {
    let mut plan = match &a.config {
        Some(path) => load_config(path)?,
        None => plan_from_flags(a)?,
    };
    if let Some(w) = a.window {
        plan.spec.modal_window = w;
    }
    let table = run_sweep(&plan.spec)?;
    let footer = if a.find_limit || plan.find_limit {
        let src = &plan.spec.source;
        SweepFooter {
            fuzziness_crossover_m: Some(crossover_in_table(&table, plan.spec.modal_window)),
            // Closed form only when it does not depend on n_eff.
            definability_limit_m: if src.is_dirac() {
                Some(definability_limit(
                    src.lambda0,
                    1.0,
                    Extent::Infinite,
                    plan.spec.modal_window,
                )?)
            } else {
                None
            },
        }
    } else {
        SweepFooter::default()
    };
    let stamp = a.stamp.then(|| {
        std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0)
    });
    let emit = a.emit.or(plan.emit).unwrap_or(Emit::Csv);
    let text = match emit {
        Emit::Csv => report::sweep_csv(&table, &footer, stamp),
        Emit::Json => json_text(&report::sweep_json(&table, &footer, stamp)),
    };
    emit_text(&a.out, &text)?;
    Ok(EXIT_OK)
}
