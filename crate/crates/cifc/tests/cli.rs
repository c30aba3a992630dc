use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn cifc(args: &[&str], config: &str, dir: &Path) -> Output {
    let cfg = dir.join("config.json");
    std::fs::write(&cfg, config).unwrap();
    Command::new(env!("CARGO_BIN_EXE_cifc"))
        .args(args)
        .arg("--config")
        .arg(&cfg)
        .arg("--out")
        .arg(dir.join("out"))
        .output()
        .unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn read(dir: &Path, name: &str) -> String {
    std::fs::read_to_string(dir.join("out").join(name)).unwrap()
}

fn rows(csv: &str) -> Vec<(f64, f64)> {
    csv.lines()
        .skip(1)
        .map(|l| {
            let (a, b) = l.split_once(',').unwrap();
            (a.parse().unwrap(), b.parse().unwrap())
        })
        .collect()
}

const UNIT_CHANNEL: &str = r#"{"channel": {"a_re": 0, "b_re": 2, "p1": 1, "p2": 1}}"#;

#[test]
fn gaussian_region_writes_four_frontiers() {
    let tmp = tempfile::tempdir().unwrap();
    let o = cifc(&["gaussian", "region"], UNIT_CHANNEL, tmp.path());
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    for f in ["outer.csv", "inner.csv", "tdma.csv", "tdma_x2.csv"] {
        let text = read(tmp.path(), f);
        assert!(text.starts_with("r1,r2\n"), "{f}");
        assert!(!text.contains('\r'));
    }
    let outer = rows(&read(tmp.path(), "outer.csv"));
    let near = |p: (f64, f64)| {
        outer
            .iter()
            .any(|q| (q.0 - p.0).abs() < 1e-5 && (q.1 - p.1).abs() < 1e-5)
    };
    assert!(near((1.0, 1.58496)));
    assert!(near((0.0, 10f64.log2())));
    let tdma2 = rows(&read(tmp.path(), "tdma_x2.csv"));
    assert!((tdma2[0].1 - 2.0 * 10f64.log2()).abs() < 1e-8);
    let meta: Value = serde_json::from_str(&read(tmp.path(), "region.json")).unwrap();
    assert!(meta["additive_gap_bits"].as_f64().unwrap() <= 1.0);
}

#[test]
fn literal_cross_terms_change_the_inner_frontier() {
    let tmp = tempfile::tempdir().unwrap();
    let literal =
        r#"{"channel": {"a_re": 1, "b_re": 2, "p1": 10, "p2": 1}, "cross_terms": "literal"}"#;
    assert_eq!(code(&cifc(&["gaussian", "region"], literal, tmp.path())), 0);
    let lit = read(tmp.path(), "inner.csv");
    let std_cfg = r#"{"channel": {"a_re": 1, "b_re": 2, "p1": 10, "p2": 1}}"#;
    assert_eq!(code(&cifc(&["gaussian", "region"], std_cfg, tmp.path())), 0);
    assert_ne!(lit, read(tmp.path(), "inner.csv"));
}

#[test]
fn zero_power_collapses_to_origin() {
    let tmp = tempfile::tempdir().unwrap();
    let o = cifc(
        &["gaussian", "region"],
        r#"{"channel": {"b_re": 3, "p1": 0, "p2": 0}}"#,
        tmp.path(),
    );
    assert_eq!(code(&o), 0);
    for f in ["outer.csv", "inner.csv", "tdma.csv", "tdma_x2.csv"] {
        assert_eq!(
            read(tmp.path(), f),
            "r1,r2\n0.000000000,0.000000000\n",
            "{f}"
        );
    }
}

#[test]
fn weak_regime_exits_two() {
    let tmp = tempfile::tempdir().unwrap();
    let o = cifc(
        &["gaussian", "region"],
        r#"{"channel": {"b_re": 0.5, "p1": 1, "p2": 1}}"#,
        tmp.path(),
    );
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("weak"));
    let sweep = r#"{"sweep": {"abs_b": [0.9]}}"#;
    assert_eq!(
        code(&cifc(&["gaussian", "gap-sweep"], sweep, tmp.path())),
        2
    );
}

#[test]
fn single_channel_sweep_has_one_row() {
    let tmp = tempfile::tempdir().unwrap();
    let o = cifc(
        &[
            "gaussian",
            "gap-sweep",
            "--alpha-grid",
            "64",
            "--r1-grid",
            "64",
        ],
        UNIT_CHANNEL,
        tmp.path(),
    );
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("1 channels"));
    let csv = read(tmp.path(), "gap_sweep.csv");
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(
        lines[0],
        "a_re,a_im,abs_b,p1,p2,additive_gap_bits,mult_gap,worst_alpha,worst_r1"
    );
    let summary: Value = serde_json::from_str(&read(tmp.path(), "gap_sweep.json")).unwrap();
    assert_eq!(summary["channels"], 1);
    assert_eq!(summary["alpha_grid"], 64);
    assert_eq!(summary["certified"], true);
}

#[test]
fn corrupted_inner_bound_fails_certification() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = r#"{"inner_penalty_bits": 0.6, "alpha_grid_size": 64, "r1_grid_size": 64}"#;
    let o = cifc(&["gaussian", "gap-sweep"], cfg, tmp.path());
    assert_eq!(code(&o), 3);
    assert!(stdout(&o).contains("NOT certified"));
}

#[test]
fn config_and_io_errors() {
    let tmp = tempfile::tempdir().unwrap();
    assert_eq!(
        code(&cifc(&["gaussian", "region"], "{\"nope\": 1}", tmp.path())),
        2
    );
    assert_eq!(code(&cifc(&["gaussian", "region"], "{}", tmp.path())), 2);
    let missing = Command::new(env!("CARGO_BIN_EXE_cifc"))
        .args(["gaussian", "region", "--config"])
        .arg(tmp.path().join("absent.json"))
        .output()
        .unwrap();
    assert_eq!(code(&missing), 1);
}

#[test]
fn dm_verify_needs_a_seed_and_respects_the_cap() {
    let tmp = tempfile::tempdir().unwrap();
    let small = r#"{"dm": {"samples": 10, "fm_instances": 2, "u_draws": 2}}"#;
    assert_eq!(code(&cifc(&["dm", "verify"], small, tmp.path())), 2);
    let big = r#"{"seed": 1, "dm": {"alphabets": [8, 8, 2, 2]}}"#;
    assert_eq!(code(&cifc(&["dm", "verify"], big, tmp.path())), 2);
}

#[test]
fn dm_verify_reports_deterministic_triple() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = r#"{"dm": {
        "channel": {"kind": "deterministic", "nx1": 2, "nx2": 2, "ny1": 2, "ny2": 2,
                    "f1": [0, 1, 1, 0], "f2": [0, 1, 0, 1]},
        "samples": 50, "fm_instances": 5, "u_draws": 10}}"#;
    let o = cifc(&["dm", "verify", "--seed", "9"], cfg, tmp.path());
    assert_eq!(code(&o), 0);
    assert!(
        stdout(&o).contains("thm2 triple (1.000000000, 1.000000000, 2.000000000)"),
        "{}",
        stdout(&o)
    );
    let report: Value = serde_json::from_str(&read(tmp.path(), "dm_verify.json")).unwrap();
    assert_eq!(report["failed"], 0);
    assert_eq!(report["channel_triple"]["c"], 2.0);
}

#[test]
fn dm_verify_ternary_cognitive_input() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = r#"{"seed": 5, "dm": {"alphabets": [3, 2, 2, 2], "samples": 200, "fm_instances": 10, "u_draws": 10}}"#;
    let o = cifc(&["dm", "verify"], cfg, tmp.path());
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains(" 0 failed"));
}

#[test]
fn parallel_pipes_frontier_is_the_unit_corner() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = r#"{"dm": {
        "channel": {"kind": "deterministic", "nx1": 2, "nx2": 2, "ny1": 2, "ny2": 2,
                    "f1": [0, 0, 1, 1], "f2": [0, 1, 0, 1]},
        "families": ["thm2"], "sampler": {"kind": "grid", "denominator": 4}}}"#;
    assert_eq!(code(&cifc(&["dm", "region"], cfg, tmp.path())), 0);
    let meta: Value = serde_json::from_str(&read(tmp.path(), "thm2.json")).unwrap();
    assert_eq!(meta["hull_vertices"], serde_json::json!([[1.0, 1.0]]));
    assert_eq!(meta["raw_vertices"], serde_json::json!([[1.0, 1.0]]));
    assert_eq!(
        read(tmp.path(), "thm2_hull.csv"),
        "r1,r2\n0.000000000,1.000000000\n1.000000000,1.000000000\n1.000000000,0.000000000\n"
    );
    let triples: Value = serde_json::from_str(&read(tmp.path(), "thm2_triples.json")).unwrap();
    assert_eq!(triples.as_array().unwrap().len(), 35);
}

#[test]
fn constant_channel_frontier_is_the_origin() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = r#"{"seed": 3, "dm": {
        "channel": {"kind": "deterministic", "nx1": 2, "nx2": 2, "ny1": 1, "ny2": 1,
                    "f1": [0, 0, 0, 0], "f2": [0, 0, 0, 0]},
        "families": ["thm1", "thm2", "outer3", "rtd5"], "sampler": {"kind": "dirichlet", "samples": 50}}}"#;
    assert_eq!(code(&cifc(&["dm", "region"], cfg, tmp.path())), 0);
    for fam in ["thm1", "thm2", "outer3", "rtd5"] {
        assert_eq!(
            read(tmp.path(), &format!("{fam}_hull.csv")),
            "r1,r2\n0.000000000,0.000000000\n",
            "{fam}"
        );
    }
}

#[test]
fn capacity_and_outer_frontiers_are_byte_identical() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = r#"{"seed": 11, "dm": {
        "channel": {"kind": "table", "nx1": 2, "nx2": 2, "ny1": 2, "ny2": 3,
                    "f1": [0, 1, 1, 1],
                    "y2_kernel": [0.7, 0.2, 0.1, 0.1, 0.8, 0.1, 0.3, 0.3, 0.4, 0.0, 0.5, 0.5]},
        "families": ["thm1", "outer3"], "sampler": {"kind": "dirichlet", "samples": 400}}}"#;
    assert_eq!(code(&cifc(&["dm", "region"], cfg, tmp.path())), 0);
    for suffix in ["hull.csv", "raw.csv"] {
        let a = read(tmp.path(), &format!("thm1_{suffix}"));
        let b = read(tmp.path(), &format!("outer3_{suffix}"));
        assert_eq!(a, b, "{suffix}");
        assert!(rows(&a).len() > 2);
    }
    let meta: Value = serde_json::from_str(&read(tmp.path(), "thm1.json")).unwrap();
    assert_eq!(meta["u_card"], 5);
    assert_eq!(meta["seed"], 11);
}

#[test]
fn deterministic_family_rejects_noisy_channel() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = r#"{"dm": {
        "channel": {"kind": "table", "nx1": 1, "nx2": 2, "ny1": 1, "ny2": 2,
                    "f1": [0, 0], "y2_kernel": [0.5, 0.5, 0.5, 0.5]},
        "families": ["thm2"], "sampler": {"kind": "grid", "denominator": 2}}}"#;
    assert_eq!(code(&cifc(&["dm", "region"], cfg, tmp.path())), 2);
}

#[test]
fn dirichlet_region_needs_a_seed() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = r#"{"dm": {"channel": {"kind": "linear", "n11": 1, "n12": 1, "n21": 1, "n22": 1}}}"#;
    assert_eq!(code(&cifc(&["dm", "region"], cfg, tmp.path())), 2);
    assert_eq!(
        code(&cifc(&["dm", "region", "--seed", "4"], cfg, tmp.path())),
        0
    );
}
