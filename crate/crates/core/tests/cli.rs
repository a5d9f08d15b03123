use std::path::Path;

use contactband::cli::{run_with, EXIT_NUMERICAL, EXIT_OK, EXIT_USAGE, EXIT_VALIDATION};
use contactband::output::Table;
use contactband::record::Record;

fn run(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("contactband").chain(args.iter().copied());
    let code = run_with(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn run_to(dir: &Path, name: &str, args: &[&str]) -> (i32, String) {
    let path = dir.join(name);
    let mut full: Vec<&str> = args.to_vec();
    let p = path.to_str().unwrap().to_string();
    full.extend(["-o", &p]);
    let (code, _, err) = run(&full);
    let text = std::fs::read_to_string(&path).unwrap_or_default();
    assert!(code != EXIT_OK || !text.is_empty(), "{err}");
    (code, text)
}

#[test]
fn bound_states_example() {
    let dir = tempfile::tempdir().unwrap();
    let (code, text) = run_to(
        dir.path(),
        "bs.csv",
        &[
            "bound-states",
            "--class",
            "hermitian",
            "--alpha",
            "-2",
            "--beta",
            "1",
            "--gamma",
            "3",
            "--delta",
            "-2",
        ],
    );
    assert_eq!(code, EXIT_OK);
    let t = Table::from_csv(&text).unwrap();
    assert_eq!(
        t.columns(),
        ["index", "re_kappa", "im_kappa", "re_E", "im_E"]
    );
    assert_eq!(t.column_f64("re_kappa").unwrap(), vec![3.0, 1.0]);
    assert_eq!(t.column_f64("re_E").unwrap(), vec![-4.5, -0.5]);
}

#[test]
fn pitchfork_example_has_401_rows() {
    let (code, out, _) = run(&[
        "pitchfork",
        "--alpha-r",
        "-1",
        "--beta",
        "1",
        "--alpha-i",
        "0:2:401",
    ]);
    assert_eq!(code, EXIT_OK);
    let t = Table::from_csv(&out).unwrap();
    assert_eq!(t.len(), 401);
    let ai = t.column_f64("alpha_i").unwrap();
    let count = t.column_f64("admissible_count").unwrap();
    // alpha_I = 0 puts one root at kappa = 0; above alpha_I = 1 the pair is complex
    assert_eq!(count[0], 1.0);
    assert_eq!(count[100], 2.0);
    assert_eq!(count[400], 2.0);
    assert_eq!(t.column_f64("re_kappa_minus").unwrap()[400], 1.0);
    assert!(t.column_f64("im_kappa_plus").unwrap()[400] > 1.0);
    let j = ai.iter().position(|&a| a == 1.0).unwrap();
    assert_eq!(t.column_f64("re_kappa_plus").unwrap()[j], 1.0);
}

#[test]
fn bands_example_writes_regime_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "bands",
        "--class",
        "pt",
        "--alpha-r",
        "-1",
        "--alpha-i",
        "0.8",
        "--beta",
        "1",
        "--ell",
        "4",
        "--nk",
        "201",
    ];
    let (code, text) = run_to(dir.path(), "bands.csv", &args);
    assert_eq!(code, EXIT_OK);
    let t = Table::from_csv(&text).unwrap();
    assert_eq!(
        t.columns(),
        ["band", "k", "re_kappa", "im_kappa", "re_E", "im_E", "residual"]
    );
    let bands = t.column_f64("band").unwrap();
    assert_eq!(bands.iter().filter(|&&b| b == 0.0).count(), 201);
    assert!(bands.contains(&1.0));
    assert!(t.column_f64("residual").unwrap().iter().all(|&r| r < 1e-10));

    let sidecar = std::fs::read_to_string(dir.path().join("bands.csv.regime")).unwrap();
    let rec: Record = sidecar.parse().unwrap();
    assert_eq!(rec.get("regime"), Some("real_bands"));
    assert!(rec.get_f64("real_fraction").unwrap() > 0.999);
}

#[test]
fn validation_failure_exits_2_with_report() {
    let (code, _, err) = run(&[
        "bound-states",
        "--alpha",
        "2",
        "--beta",
        "1",
        "--gamma",
        "5",
        "--delta",
        "2",
    ]);
    assert_eq!(code, EXIT_VALIDATION);
    assert!(err.contains("αδ − βγ"), "{err}");

    let (code, _, _) = run(&[
        "bands", "--alpha", "1", "--beta", "1", "--delta", "2", "--ell", "-1",
    ]);
    assert_eq!(code, EXIT_VALIDATION);
    let (code, _, _) = run(&[
        "scatter", "--alpha", "1", "--beta", "0", "--gamma", "0", "--delta", "1", "--k", "0:1",
    ]);
    assert_eq!(code, EXIT_VALIDATION);
}

#[test]
fn numerical_failure_exits_1() {
    // the free contact has no bound states and hence no bands
    let (code, _, err) = run(&[
        "bands", "--alpha", "1", "--beta", "0", "--gamma", "0", "--delta", "1", "--ell", "2",
    ]);
    assert_eq!(code, EXIT_NUMERICAL, "{err}");
}

#[test]
fn usage_errors_exit_64_and_help_exits_0() {
    assert_eq!(run(&["bound-states", "--frobnicate"]).0, EXIT_USAGE);
    assert_eq!(run(&[]).0, EXIT_USAGE);
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("bound-states"));
}

#[test]
fn scatter_and_eigen_tables() {
    let (code, out, _) = run(&[
        "scatter", "--alpha", "1", "--beta", "0", "--gamma", "2", "--delta", "1", "--k", "0.5:2:4",
    ]);
    assert_eq!(code, EXIT_OK);
    let t = Table::from_csv(&out).unwrap();
    assert_eq!(t.len(), 4);
    let (rt, it) = (t.column_f64("re_t").unwrap(), t.column_f64("im_t").unwrap());
    let (rr, ir) = (t.column_f64("re_r").unwrap(), t.column_f64("im_r").unwrap());
    for j in 0..4 {
        let flux = rt[j].powi(2) + it[j].powi(2) + rr[j].powi(2) + ir[j].powi(2);
        assert!((flux - 1.0).abs() < 1e-12);
    }

    let (code, out, _) = run(&[
        "smatrix-eigen",
        "--class",
        "pt",
        "--alpha-r",
        "0",
        "--alpha-i",
        "2",
        "--beta",
        "1",
        "--gamma",
        "3",
        "--k",
        "1:3:3",
    ]);
    assert_eq!(code, EXIT_OK);
    let t = Table::from_csv(&out).unwrap();
    assert_eq!(t.columns().last().unwrap(), "broken");
    assert!(t
        .column_f64("broken")
        .unwrap()
        .iter()
        .all(|&b| b == 0.0 || b == 1.0));
}

#[test]
fn json_output_carries_meta() {
    let (code, out, _) = run(&[
        "bands",
        "--class",
        "pt",
        "--alpha-r",
        "-1",
        "--alpha-i",
        "0.5",
        "--beta",
        "1",
        "--ell",
        "8",
        "--nk",
        "21",
        "--format",
        "json",
    ]);
    assert_eq!(code, EXIT_OK);
    let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["meta"]["regime"], "real_bands");
    assert!(doc["meta"]["residual_max"].as_f64().unwrap() < 1e-10);
    // the shallow band reaches the continuum edge; the deep one spans the zone
    let band = doc["columns"]["band"].as_array().unwrap();
    assert_eq!(band.iter().filter(|b| b.as_i64() == Some(0)).count(), 21);
    assert_eq!(
        doc["meta"]["unbound_points"].as_u64().unwrap() as usize,
        42 - band.len()
    );
}

#[test]
fn regimes_compares_exact_and_narrow_band() {
    let (code, out, _) = run(&[
        "regimes",
        "--class",
        "pt",
        "--alpha-r",
        "-1",
        "--alpha-i",
        "0.5",
        "--beta",
        "1",
        "--ell",
        "12",
    ]);
    assert_eq!(code, EXIT_OK);
    let t = Table::from_csv(&out).unwrap();
    assert_eq!(t.len(), 2);
    assert_eq!(t.rows()[0][1].to_string(), "real_bands");
    assert_eq!(t.rows()[1][1].to_string(), "real_bands");
}

#[test]
fn dirac_scan_touches_at_zone_centre() {
    let (code, out, _) = run(&[
        "dirac-scan",
        "--kappa-bar",
        "1",
        "--varepsilon",
        "1",
        "--f",
        "-1",
        "--ell",
        "5",
        "--nk",
        "11",
    ]);
    assert_eq!(code, EXIT_OK);
    let t = Table::from_csv(&out).unwrap();
    let (k, gap) = (t.column_f64("k").unwrap(), t.column_f64("gap").unwrap());
    let j = k.iter().position(|&v| v == 0.0).unwrap();
    assert_eq!(gap[j], 0.0);
    assert!(gap.iter().enumerate().all(|(i, &g)| i == j || g > 0.0));
    assert_eq!(
        run(&["dirac-scan", "--kappa-bar", "1", "--ell", "5"]).0,
        EXIT_VALIDATION
    );
}

#[test]
fn reruns_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "bands",
        "--class",
        "pt",
        "--alpha-r",
        "-1",
        "--alpha-i",
        "1.3",
        "--beta",
        "1",
        "--ell",
        "6",
        "--nk",
        "101",
    ];
    let (_, a) = run_to(dir.path(), "a.csv", &args);
    let (_, b) = run_to(dir.path(), "b.csv", &args);
    assert_eq!(a, b);
}

#[test]
fn csv_round_trip_preserves_values() {
    let (_, out, _) = run(&[
        "pitchfork",
        "--alpha-r",
        "-1",
        "--beta",
        "1",
        "--alpha-i",
        "0:2:41",
    ]);
    let t = Table::from_csv(&out).unwrap();
    assert_eq!(Table::from_csv(&t.to_csv()).unwrap(), t);
}

#[test]
fn figures_are_written_deterministically() {
    let (d1, d2) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    for d in [&d1, &d2] {
        let (code, _, _) = run(&["figures", "--out-dir", d.path().to_str().unwrap()]);
        assert_eq!(code, EXIT_OK);
    }
    for name in [
        "fig1.csv",
        "fig2a.csv",
        "fig2b.csv",
        "fig2c.csv",
        "fig2d.csv",
        "figures.meta",
    ] {
        let a = std::fs::read(d1.path().join(name)).unwrap();
        assert_eq!(a, std::fs::read(d2.path().join(name)).unwrap(), "{name}");
    }
    let fig2a =
        Table::from_csv(&std::fs::read_to_string(d1.path().join("fig2a.csv")).unwrap()).unwrap();
    assert!(fig2a
        .column_f64("im_E_plus")
        .unwrap()
        .iter()
        .all(|&v| v == 0.0));
    // offset about zero: the two real bands are mirror images
    let (p, m) = (
        fig2a.column_f64("re_E_plus").unwrap(),
        fig2a.column_f64("re_E_minus").unwrap(),
    );
    assert!(p.iter().zip(&m).all(|(a, b)| (a + b).abs() < 1e-12));
    let meta: Record = std::fs::read_to_string(d1.path().join("figures.meta"))
        .unwrap()
        .parse()
        .unwrap();
    assert_eq!(meta.get("fig2b.varepsilon_squared"), Some("0.5"));
    assert_eq!(meta.get("fig2d.transition"), Some("above"));
}
