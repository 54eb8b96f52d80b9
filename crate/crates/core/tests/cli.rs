use std::path::Path;
use std::process::{Command, Output};

use neffbound::coherence::Extent;
use neffbound::fiber::{solve_fiber, FiberFamily, FiberGeometry};
use neffbound::report::round15;
use neffbound::uncertainty::definability_limit;
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_neffbound"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

/// Data rows of a CSV document, header first; `#` lines dropped.
fn csv_rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| l.split(',').map(str::to_owned).collect())
        .collect()
}

fn footer(text: &str, key: &str) -> Option<String> {
    let prefix = format!("# {key}=");
    text.lines()
        .find_map(|l| l.strip_prefix(&prefix).map(str::to_owned))
}

const SLAB_500: &[&str] = &[
    "solve-slab",
    "--d",
    "500nm",
    "--n-core",
    "1.5",
    "--n-sub",
    "1.0",
    "--n-cover",
    "1.0",
    "--lambda0",
    "1550nm",
    "--pol",
    "te",
];

#[test]
fn solve_slab_lists_modes() {
    let mut args = SLAB_500.to_vec();
    args.push("--all");
    let o = run(&args);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let rows = csv_rows(&stdout(&o));
    assert_eq!(rows[0][0], "polarization");
    assert!(rows.len() >= 2);
    assert_eq!(rows[1][0], "te");
}

#[test]
fn negative_thickness_names_the_field() {
    let mut args = SLAB_500.to_vec();
    args[2] = "-1nm";
    let o = run(&args);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("d:"), "{}", stderr(&o));
}

#[test]
fn sub_cutoff_slab_exits_two() {
    let o = run(&[
        "solve-slab",
        "--d",
        "1nm",
        "--n-core",
        "2.0",
        "--n-sub",
        "1.5",
        "--n-cover",
        "1.0",
        "--lambda0",
        "1550nm",
        "--pol",
        "te",
        "--emit",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(2));
    let v = json(&o);
    assert_eq!(v["status"], "below_cutoff");
    assert!(v["cutoff_d_m"].as_f64().unwrap() > 1e-9);
}

#[test]
fn missing_or_malformed_flags_exit_one() {
    let bad: &[&[&str]] = &[
        &[
            "solve-fiber",
            "--n-core",
            "1.5",
            "--n-clad",
            "1.45",
            "--lambda0",
            "1550nm",
        ],
        &[
            "bound",
            "--lambda0",
            "1550",
            "--dx",
            "100nm",
            "--n-eff",
            "2",
            "--dirac",
        ],
        &[
            "bound",
            "--lambda0",
            "1550nm",
            "--dx",
            "100nm",
            "--n-eff",
            "2",
            "--dirac",
            "--lc",
            "1um",
        ],
        &[
            "limit",
            "--lambda0",
            "1550nm",
            "--n-eff",
            "2",
            "--dirac",
            "--window",
            "0",
        ],
        &[
            "solve-slab",
            "--d",
            "1um",
            "--n-core",
            "1.4",
            "--n-sub",
            "1.5",
            "--n-cover",
            "1.0",
            "--lambda0",
            "1550nm",
            "--pol",
            "te",
        ],
        &["sweep", "--n-core", "1.5"],
        &["no-such-command"],
        &[],
    ];
    for args in bad {
        let o = run(args);
        assert_eq!(o.status.code(), Some(1), "{args:?}: {}", stderr(&o));
        assert!(!stderr(&o).is_empty());
    }
}

#[test]
fn help_exits_zero() {
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["sweep", "--help"]).status.code(), Some(0));
}

#[test]
fn deep_subwavelength_fiber_and_lp01_pair() {
    let base = [
        "solve-fiber",
        "--a",
        "50nm",
        "--n-core",
        "1.5",
        "--n-clad",
        "1.45",
        "--lambda0",
        "1550nm",
    ];
    let he = run(&base);
    assert_eq!(he.status.code(), Some(0), "{}", stderr(&he));
    let he = json(&he);
    assert!((he["v"].as_f64().unwrap() - 0.0778).abs() < 1e-3);
    let g = FiberGeometry::new(50e-9, 1.5, 1.45).unwrap();
    let lib = solve_fiber(&g, 1.55e-6, FiberFamily::He11).unwrap();
    assert_eq!(he["n_eff"].as_f64().unwrap(), round15(lib.n_eff));
    assert_eq!(he["ln_w"].as_f64().unwrap(), round15(lib.ln_w));

    let mut lp_args = base.to_vec();
    lp_args.extend(["--family", "lp01"]);
    let lp = json(&run(&lp_args));
    let gap = (lp["n_eff"].as_f64().unwrap() - he["n_eff"].as_f64().unwrap()).abs();
    assert!(gap <= 0.05);
}

#[test]
fn bound_reports() {
    let base = [
        "bound",
        "--lambda0",
        "1550nm",
        "--dx",
        "100nm",
        "--n-eff",
        "2",
    ];
    let mut dirac = base.to_vec();
    dirac.push("--dirac");
    let v = json(&run(&dirac));
    assert!((v["min_delta_neff"].as_f64().unwrap() - 1.2334).abs() < 1e-4);
    assert_eq!(v["coherence_length_m"], "infinite");
    for key in [
        "confinement_term",
        "coherence_term",
        "ratio_lambda_dx",
        "ratio_lambda_lc",
        "vacuous",
        "classification",
    ] {
        assert!(v.get(key).is_some(), "{key}");
    }
    let mut finite = base.to_vec();
    finite.extend(["--lc", "100um"]);
    let v = json(&run(&finite));
    assert!((v["min_delta_neff"].as_f64().unwrap() - 1.20245).abs() < 1e-5);

    let o = run(&[
        "bound",
        "--lambda0",
        "1550nm",
        "--dx",
        "10um",
        "--n-eff",
        "2",
        "--lc",
        "10um",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["vacuous"], true);
    assert_eq!(v["min_delta_neff"].as_f64(), Some(0.0));
}

#[test]
fn limit_values() {
    let o = run(&[
        "limit",
        "--lambda0",
        "1550nm",
        "--n-eff",
        "2",
        "--dirac",
        "--window",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let (value, unit) = text.trim().split_once(' ').unwrap();
    assert_eq!(unit, "nm");
    assert!((value.parse::<f64>().unwrap() - 41.12).abs() < 0.01);

    let o = run(&[
        "limit",
        "--lambda0",
        "1550nm",
        "--n-eff",
        "2",
        "--dirac",
        "--window",
        "0.01",
        "--emit",
        "json",
    ]);
    let v = json(&o);
    assert!((v["definability_limit_m"].as_f64().unwrap() - 12.33e-6).abs() < 0.01e-6);

    let o = run(&[
        "limit",
        "--lambda0",
        "1550nm",
        "--n-eff",
        "2",
        "--lc",
        "48.05um",
        "--window",
        "3",
        "--emit",
        "json",
    ]);
    let finite = json(&o)["definability_limit_m"].as_f64().unwrap();
    let dirac = definability_limit(1.55e-6, 2.0, Extent::Infinite, 3.0).unwrap();
    assert!(finite < dirac);
}

#[test]
fn coherence_of_preset_and_custom_sources() {
    let v = json(&run(&["coherence", "--preset", "sld-1550"]));
    assert!((v["coherence_length_m"].as_f64().unwrap() - 48.05e-6).abs() < 1e-12);
    let v = json(&run(&[
        "coherence",
        "--lambda0",
        "1550nm",
        "--delta-lambda",
        "0m",
    ]));
    assert_eq!(v["coherence_length_m"], "infinite");
    let o = run(&["coherence", "--preset", "nope"]);
    assert_eq!(o.status.code(), Some(1));
    let o = run(&["coherence", "--list-presets", "--emit", "csv"]);
    assert!(csv_rows(&stdout(&o)).len() >= 3);
}

fn write_config(dir: &Path, body: &str) -> String {
    let p = dir.join("run.json");
    std::fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_owned()
}

const SYMMETRIC_CONFIG: &str = r#"{
  "structure": {"kind": "slab", "n_core": 1.5, "n_sub": 1.0, "n_cover": 1.0, "pol": "te"},
  "range": {"min": "1nm", "max": "10um", "points": 50, "spacing": "log"},
  "source": {"lambda0": "1550nm"},
  "modal_window": 3.0
}"#;

#[test]
fn sweep_config_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), SYMMETRIC_CONFIG);
    let a = run(&["sweep", "--config", &cfg]);
    let b = run(&["sweep", "--config", &cfg]);
    assert_eq!(a.status.code(), Some(0), "{}", stderr(&a));
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    let rows = csv_rows(&text);
    assert_eq!(
        rows[0],
        [
            "dimension_m",
            "n_eff",
            "min_delta_neff",
            "vacuous",
            "classification",
            "relative_fuzziness"
        ]
    );
    assert_eq!(rows.len(), 51);
    assert!(rows[1..].iter().all(|r| r.len() == 6 && !r[1].is_empty()));
    assert!(text.lines().any(|l| l == "# lambda0_m=1.55e-6"));
    assert!(!text.contains("timestamp"));

    let out = dir.path().join("out.csv");
    let o = run(&["sweep", "--config", &cfg, "-o", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert_eq!(std::fs::read(&out).unwrap(), a.stdout);
}

#[test]
fn sweep_csv_and_json_carry_the_same_numbers() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), SYMMETRIC_CONFIG);
    let csv = stdout(&run(&["sweep", "--config", &cfg]));
    let js = json(&run(&["sweep", "--config", &cfg, "--emit", "json"]));
    let rows = csv_rows(&csv);
    let header = &rows[0];
    let json_rows = js["rows"].as_array().unwrap();
    assert_eq!(json_rows.len(), rows.len() - 1);
    for (r, jr) in rows[1..].iter().zip(json_rows) {
        for (key, field) in header.iter().zip(r) {
            let jv = &jr[key.as_str()];
            match jv {
                Value::Null => assert!(field.is_empty()),
                Value::Number(n) => {
                    assert_eq!(field.parse::<f64>().unwrap(), n.as_f64().unwrap(), "{key}")
                }
                Value::Bool(b) => assert_eq!(field, &b.to_string()),
                Value::String(s) => assert_eq!(field, s),
                other => panic!("unexpected {other}"),
            }
        }
    }
    assert_eq!(js["meta"]["coherence_length_m"], "infinite");
}

#[test]
fn sweep_absent_rows_are_empty_fields() {
    let o = run(&[
        "sweep",
        "--n-core",
        "2.0",
        "--n-sub",
        "1.5",
        "--n-cover",
        "1.0",
        "--min",
        "10nm",
        "--max",
        "1um",
        "--points",
        "12",
        "--lambda0",
        "1550nm",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let rows = csv_rows(&stdout(&o));
    assert_eq!(rows[1][1..], ["", "", "", "", ""]);
    assert!(!rows.last().unwrap()[1].is_empty());
    let o = run(&[
        "sweep",
        "--n-core",
        "2.0",
        "--n-sub",
        "1.5",
        "--n-cover",
        "1.0",
        "--min",
        "10nm",
        "--max",
        "1um",
        "--points",
        "12",
        "--lambda0",
        "1550nm",
        "--emit",
        "json",
    ]);
    assert_eq!(json(&o)["rows"][0]["n_eff"], Value::Null);
}

#[test]
fn find_limit_footer_matches_closed_form() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), SYMMETRIC_CONFIG);
    let text = stdout(&run(&["sweep", "--config", &cfg, "--find-limit"]));
    let crossing: f64 = footer(&text, "fuzziness_crossover_m")
        .unwrap()
        .parse()
        .unwrap();
    let closed: f64 = footer(&text, "definability_limit_m")
        .unwrap()
        .parse()
        .unwrap();
    assert!((crossing - 41.12e-9).abs() < 0.01e-9, "{crossing:e}");
    assert!((closed - 41.12e-9).abs() < 0.01e-9);
    let js = json(&run(&[
        "sweep",
        "--config",
        &cfg,
        "--find-limit",
        "--emit",
        "json",
    ]));
    assert_eq!(
        js["footer"]["fuzziness_crossover_m"].as_f64(),
        Some(crossing)
    );
}

#[test]
fn stamp_is_opt_in() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), SYMMETRIC_CONFIG);
    let text = stdout(&run(&["sweep", "--config", &cfg, "--stamp"]));
    assert!(text.lines().any(|l| l.starts_with("# timestamp_unix=")));
}

#[test]
fn config_errors_carry_context() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "{\n  \"structure\": {\"kind\": \"slab\"},\n}");
    let o = run(&["sweep", "--config", &cfg]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("line"), "{}", stderr(&o));

    let bad_unit = SYMMETRIC_CONFIG.replace("\"1nm\"", "\"1\"");
    let cfg = write_config(dir.path(), &bad_unit);
    let o = run(&["sweep", "--config", &cfg]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("no length unit"), "{}", stderr(&o));

    let bad_range = SYMMETRIC_CONFIG.replace("\"points\": 50", "\"points\": 1");
    let cfg = write_config(dir.path(), &bad_range);
    let o = run(&["sweep", "--config", &cfg]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("range.points"), "{}", stderr(&o));

    let o = run(&["sweep", "--config", "/nonexistent/run.json"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn fiber_sweep_through_flags() {
    let o = run(&[
        "sweep",
        "--structure",
        "fiber",
        "--n-core",
        "1.5",
        "--n-clad",
        "1.45",
        "--family",
        "he11",
        "--min",
        "10nm",
        "--max",
        "5um",
        "--points",
        "20",
        "--preset",
        "sld-1550",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("# swept_parameter=a"));
    assert!(text.contains("# source=sld-1550"));
    let rows = csv_rows(&text);
    assert_eq!(rows.len(), 21);
    assert!(rows[1..].iter().all(|r| !r[1].is_empty()));
}
