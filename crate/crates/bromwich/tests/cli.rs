use std::fs;
use std::path::PathBuf;
use std::process::Command;

use bromwich::cli::{run, EXIT_NOT_CONVERGED};
use bromwich::formats::parse_pole_list;
use bromwich::harness::{self, Heights};
use bromwich::output;
use bromwich::parse::{parse_complex, parse_grid};
use bromwich_core::contour::default_rectangle;
use bromwich_core::{FunctionSpec, InverseKind, QuadratureSpec, TransformKind};

fn golden(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name);
    fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn binary(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_bromwich"))
        .args(args)
        .output()
        .unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn in_process(args: &[&str]) -> (i32, String, String) {
    let (mut stdout, mut stderr) = (Vec::new(), Vec::new());
    let argv = std::iter::once("bromwich").chain(args.iter().copied());
    let code = run(argv, &mut stdout, &mut stderr);
    (
        code,
        String::from_utf8(stdout).unwrap(),
        String::from_utf8(stderr).unwrap(),
    )
}

fn q() -> QuadratureSpec {
    QuadratureSpec::default()
}

/// Runs the binary, checks it against the golden file and returns stdout.
fn check_golden(args: &[&str], file: &str) -> String {
    let (code, stdout, stderr) = binary(args);
    assert_eq!(code, 0, "{stderr}");
    assert_eq!(stdout, golden(file), "{args:?}");
    stdout
}

#[test]
fn transform_matches_golden_and_library() {
    let stdout = check_golden(
        &[
            "transform",
            "--func",
            "exp:gamma=1",
            "--kind",
            "laplace",
            "--z",
            "1+0i,0+0i,2-1i",
        ],
        "transform_exp.csv",
    );
    let zs: Vec<_> = ["1+0i", "0+0i", "2-1i"]
        .iter()
        .map(|z| parse_complex(z).unwrap())
        .collect();
    let rows = harness::transform_grid(
        &FunctionSpec::exp(1.0).unwrap(),
        TransformKind::Laplace,
        &zs,
        &q(),
    )
    .unwrap();
    assert_eq!(stdout, output::transform_csv(&rows));
    // 1/(1+z) at z = 1
    let first = stdout.lines().nth(1).unwrap();
    let re: f64 = first.split(',').nth(2).unwrap().parse().unwrap();
    assert!((re - 0.5).abs() < 1e-12);
}

#[test]
fn invert_matches_golden_and_library() {
    let stdout = check_golden(
        &[
            "invert",
            "--poles",
            "[[-1,0,1,0]]",
            "--kind",
            "laplace",
            "--contour",
            "rect",
            "--x",
            "-2,0,2",
        ],
        "invert_rect.csv",
    );
    let t = parse_pole_list("[[-1,0,1,0]]").unwrap();
    let rect = default_rectangle(&t).unwrap();
    let rows = harness::invert_grid(
        &t,
        InverseKind::LaplaceKernel,
        &rect,
        &[-2.0, 0.0, 2.0],
        &q(),
    )
    .unwrap();
    assert_eq!(stdout, output::invert_csv(&rows));
    let at_minus_two: f64 = stdout
        .lines()
        .nth(1)
        .unwrap()
        .split(',')
        .nth(1)
        .unwrap()
        .parse()
        .unwrap();
    assert!((at_minus_two - 7.3890561).abs() < 1e-7);
}

#[test]
fn roundtrip_matches_golden_and_library() {
    let args = [
        "roundtrip",
        "--func",
        "power:gamma=0.5",
        "--kind",
        "mellin",
        "--grid",
        "0.25:4:5",
    ];
    let stdout = check_golden(&args, "roundtrip_power.csv");
    let report = harness::roundtrip(
        &FunctionSpec::power(0.5).unwrap(),
        InverseKind::MellinKernel,
        &parse_grid("0.25:4:5").unwrap(),
        true,
        &q(),
        harness::RECTANGLE_TOL,
    )
    .unwrap();
    assert_eq!(stdout, output::roundtrip_csv(&report));
    let mut strict = args.to_vec();
    strict.push("--strict");
    assert_eq!(binary(&strict).0, 0);
}

#[test]
fn delta_check_matches_golden_and_library() {
    let stdout = check_golden(
        &["delta-check", "--func", "exp:gamma=1", "--x", "1"],
        "delta_exp.csv",
    );
    let table = harness::delta_check(
        1.0,
        &FunctionSpec::exp(1.0).unwrap(),
        &[20.0, 40.0, 80.0],
        &q(),
    )
    .unwrap();
    assert_eq!(stdout, output::delta_csv(&table));
}

#[test]
fn sweep_matches_golden_and_library() {
    let stdout = check_golden(
        &[
            "sweep",
            "--poles",
            "[[-1,0,1,0]]",
            "--kind",
            "laplace",
            "--arg",
            "-2",
            "--heights",
            "5,10,20",
        ],
        "sweep_single.csv",
    );
    let t = parse_pole_list("[[-1,0,1,0]]").unwrap();
    let sweep = harness::invariance_sweep(
        t.as_rational().unwrap(),
        InverseKind::LaplaceKernel,
        -2.0,
        &[0.1, 0.5, 1.0],
        &Heights::Absolute(vec![5.0, 10.0, 20.0]),
        &q(),
    )
    .unwrap();
    assert_eq!(stdout, output::sweep_csv(&sweep));
}

#[test]
fn cauchy_check_matches_golden_and_library() {
    let stdout = check_golden(
        &[
            "cauchy-check",
            "--func",
            "mixedexp:g1=1,g2=2",
            "--z",
            "0+0i,1-2i",
        ],
        "cauchy_mixed.csv",
    );
    let t = bromwich_core::xform::analytic_transform(
        &FunctionSpec::mixed_exp(1.0, 2.0).unwrap(),
        TransformKind::Laplace,
    )
    .unwrap();
    let rect = default_rectangle(&t).unwrap();
    let zs = [
        parse_complex("0+0i").unwrap(),
        parse_complex("1-2i").unwrap(),
    ];
    let rows = harness::cauchy_sweep(t.as_rational().unwrap(), &rect, &zs, &q()).unwrap();
    assert_eq!(stdout, output::cauchy_csv(&rows));
}

#[test]
fn in_process_run_matches_binary() {
    let args = [
        "invert",
        "--poles",
        "[[-0.5,0,1,0]]",
        "--kind",
        "mellin",
        "--y",
        "0.25,4",
    ];
    assert_eq!(in_process(&args), binary(&args));
}

#[test]
fn parse_errors_exit_with_two() {
    let (code, stdout, stderr) = binary(&[
        "transform",
        "--func",
        "exp:gamma=",
        "--kind",
        "laplace",
        "--z",
        "1",
    ]);
    assert_eq!(code, 2);
    assert!(stdout.is_empty());
    assert!(stderr.contains("column 11"), "{stderr}");
    assert_eq!(
        in_process(&[
            "transform",
            "--func",
            "exp:gamma=1",
            "--kind",
            "laplace",
            "--z",
            "1+2j"
        ])
        .0,
        2
    );
    assert_eq!(
        in_process(&[
            "roundtrip",
            "--func",
            "exp:gamma=1",
            "--kind",
            "laplace",
            "--grid",
            "0:1"
        ])
        .0,
        2
    );
    assert_eq!(in_process(&["no-such-command"]).0, 2);
}

#[test]
fn validation_errors_exit_with_two() {
    // Mellin kernel needs positive arguments
    assert_eq!(
        in_process(&[
            "invert",
            "--poles",
            "[[-0.5,0,1,0]]",
            "--kind",
            "mellin",
            "--y",
            "-1"
        ])
        .0,
        2
    );
    // no rectangle without poles
    let (code, _, stderr) = in_process(&[
        "invert",
        "--transform",
        r#"{"form":"gamma"}"#,
        "--kind",
        "mellin",
        "--x",
        "1",
    ]);
    assert_eq!(code, 2);
    assert!(stderr.contains("rational"), "{stderr}");
    assert_eq!(
        in_process(&[
            "invert",
            "--poles",
            "[[-1,0,1,0]]",
            "--kind",
            "laplace",
            "--x",
            "1",
            "--quad",
            r#"{"panel_order":1}"#
        ])
        .0,
        2
    );
    assert_eq!(
        in_process(&[
            "roundtrip",
            "--func",
            "exp:gamma=1",
            "--kind",
            "laplace",
            "--x",
            "1",
            "--tol",
            "-1"
        ])
        .0,
        2
    );
}

#[test]
fn strict_mode_reports_missed_tolerance() {
    // the right line alone cannot see x < 0
    let args = [
        "roundtrip",
        "--func",
        "exp:gamma=1",
        "--kind",
        "laplace",
        "--contour",
        "line",
        "--height",
        "50",
        "--x",
        "-1",
    ];
    let (code, stdout, stderr) = in_process(&args);
    assert_eq!(code, 0);
    assert!(stdout.starts_with("arg,truth,recovered,abs_err,rel_err\n"));
    assert!(stderr.contains("warning"));
    let mut strict = args.to_vec();
    strict.push("--strict");
    assert_eq!(in_process(&strict).0, EXIT_NOT_CONVERGED);
}

#[test]
fn json_summary_and_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("rows.csv");
    let out_str = out.to_str().unwrap();
    let (code, stdout, _) = in_process(&[
        "roundtrip",
        "--func",
        "exp:gamma=1",
        "--kind",
        "laplace",
        "--x",
        "-3,-1,0,1,3",
        "--json",
        "--out",
        out_str,
    ]);
    assert_eq!(code, 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(doc["command"], "roundtrip");
    assert_eq!(doc["passed"], true);
    assert_eq!(doc["rows"].as_array().unwrap().len(), 5);
    assert!(doc["wall_time_s"].as_f64().unwrap() >= 0.0);
    let csv = fs::read_to_string(&out).unwrap();
    assert_eq!(csv.lines().count(), 6);

    // without --json the table goes only to the file
    let (_, stdout, _) = in_process(&[
        "invert",
        "--poles",
        "[[-1,0,1,0]]",
        "--kind",
        "laplace",
        "--x",
        "0",
        "--out",
        out_str,
    ]);
    assert!(stdout.is_empty());
    assert!(fs::read_to_string(&out)
        .unwrap()
        .starts_with("arg,value,err_est\n"));
}

#[test]
fn config_file_is_overridden_by_flags() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("config.json");
    fs::write(
        &config,
        r#"{"tol": 1e-30, "strict": true, "quad": {"panel_order": 12}}"#,
    )
    .unwrap();
    let config = config.to_str().unwrap();
    let base = [
        "roundtrip",
        "--func",
        "exp:gamma=1",
        "--kind",
        "laplace",
        "--x",
        "-2,2",
        "--config",
        config,
    ];
    // an unattainable tolerance from the config fails under its strict setting
    assert_eq!(in_process(&base).0, EXIT_NOT_CONVERGED);
    let mut relaxed = base.to_vec();
    relaxed.extend(["--tol", "1e-6"]);
    assert_eq!(in_process(&relaxed).0, 0);

    fs::write(dir.path().join("bad.json"), r#"{"colour": "red"}"#).unwrap();
    let bad = dir.path().join("bad.json");
    assert_eq!(
        in_process(&[
            "transform",
            "--func",
            "exp:gamma=1",
            "--kind",
            "laplace",
            "--z",
            "1",
            "--config",
            bad.to_str().unwrap()
        ])
        .0,
        2
    );
}

#[test]
fn coarser_quadrature_settings_still_agree() {
    let args = [
        "invert",
        "--poles",
        "[[-1,0,1,0]]",
        "--kind",
        "laplace",
        "--x",
        "1",
    ];
    let (_, a, _) = in_process(&args);
    let mut coarse = args.to_vec();
    coarse.extend(["--quad", r#"{"panel_order":8,"rel_tol":1e-8}"#]);
    let (code, b, _) = in_process(&coarse);
    assert_eq!(code, 0);
    let value = |s: &str| {
        s.lines()
            .nth(1)
            .unwrap()
            .split(',')
            .nth(1)
            .unwrap()
            .parse::<f64>()
            .unwrap()
    };
    assert!((value(&a) - value(&b)).abs() < 1e-7);
    assert!((value(&a) - (-1.0f64).exp()).abs() < 1e-12);
}

#[test]
fn help_and_version_exit_zero() {
    let (code, stdout, _) = in_process(&["--help"]);
    assert_eq!(code, 0);
    for cmd in [
        "transform",
        "invert",
        "roundtrip",
        "delta-check",
        "sweep",
        "cauchy-check",
    ] {
        assert!(stdout.contains(cmd), "{cmd}");
    }
    assert_eq!(in_process(&["--version"]).0, 0);
}
