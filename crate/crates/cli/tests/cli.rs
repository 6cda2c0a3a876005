use std::path::Path;
use std::process::{Command, Output};

fn egs(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_egs"))
        .args(args)
        .output()
        .expect("egs runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn column(csv: &str, idx: usize) -> Vec<f64> {
    csv.lines()
        .skip(1)
        .map(|l| l.split(',').nth(idx).unwrap().parse().unwrap())
        .collect()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn forecast_single_ends_near_eighty() {
    let o = egs(&["forecast", "--model", "single"]);
    assert!(o.status.success());
    let csv = stdout(&o);
    assert!(csv.starts_with("time_yr,T_out_C,model\n"));
    assert!(!csv.contains('\r'));
    let temps = column(&csv, 1);
    assert_eq!(temps.len(), 200);
    assert!(temps.windows(2).all(|w| w[1] <= w[0]));
    assert!((temps.last().unwrap() - 79.8).abs() < 0.1);
    let times = column(&csv, 0);
    assert!((times[0] - 0.005).abs() < 1e-9);
    assert_eq!(*times.last().unwrap(), 50.0);
}

#[test]
fn forecast_two_face_reference() {
    let o = egs(&["forecast", "--model", "gringarten_ref"]);
    let temps = column(&stdout(&o), 1);
    assert!((temps.last().unwrap() - 94.6).abs() < 0.1);
}

#[test]
fn two_steps_give_two_rows() {
    for extra in [&[][..], &["--linear-time"][..]] {
        let mut args = vec!["forecast", "--steps", "2"];
        args.extend_from_slice(extra);
        let o = egs(&args);
        assert_eq!(stdout(&o).lines().count(), 3);
    }
    let o = egs(&["forecast", "--steps", "2", "--linear-time"]);
    assert_eq!(column(&stdout(&o), 0), vec![25.0, 50.0]);
}

#[test]
fn table2_defaults_and_variants() {
    let o = egs(&["table2"]);
    let csv = stdout(&o);
    assert_eq!(csv.lines().count(), 9);
    let last: Vec<f64> = csv
        .lines()
        .last()
        .unwrap()
        .split(',')
        .map(|v| v.parse().unwrap())
        .collect();
    assert_eq!(last[0], 80.0);
    assert!((last[1] - 54.214).abs() / 54.214 < 0.005);
    assert!((last[2] - 27.107).abs() / 27.107 < 0.005);
    assert_eq!(last[3], 40.0);

    let o = egs(&["table2", "--spacings", "40"]);
    let row: Vec<f64> = stdout(&o)
        .lines()
        .nth(1)
        .unwrap()
        .split(',')
        .map(|v| v.parse().unwrap())
        .collect();
    assert_eq!(row[0], 40.0);
    assert!((row[1] - 13.553).abs() < 0.01 && (row[2] - 6.777).abs() < 0.01);
    assert_eq!(row[3], 20.0);

    let o = egs(&["table2", "--spacings", ""]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 1);

    assert!(!egs(&["table2", "--spacings", "-5"]).status.success());
}

#[test]
fn compare_single_and_two_face() {
    let o = egs(&["compare", "--models", "single,gringarten_ref"]);
    assert!(o.status.success());
    let report = stderr(&o);
    let gap_line = report
        .lines()
        .find(|l| l.starts_with("max pairwise gap at 50 yr"))
        .unwrap();
    let gap: f64 = gap_line
        .split(": ")
        .nth(1)
        .unwrap()
        .split(' ')
        .next()
        .unwrap()
        .parse()
        .unwrap();
    assert!((gap - 14.8).abs() < 0.2, "{gap}");
    assert!(report.contains("not gated"));
}

#[test]
fn compare_spacings_order() {
    let o = egs(&[
        "compare",
        "--fractures",
        "10",
        "--faces",
        "2",
        "--models",
        "multi_slab:40,multi_slab:80",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let csv = stdout(&o);
    assert!(csv.starts_with("time_yr,T_multi_slab_40m_C,T_multi_slab_80m_C\n"));
    // Inversion ringing ahead of the sharper 40 m front is a few mK; allow
    // 0.1% of the 235 degC span.
    for (a, b) in column(&csv, 1).iter().zip(column(&csv, 2)) {
        assert!(b >= *a - 0.235, "{a} vs {b}");
    }
}

#[test]
fn identical_models_have_no_gap() {
    let o = egs(&["compare", "--models", "single,single", "--steps", "10"]);
    assert!(stderr(&o).contains("max pairwise gap at 50 yr: 0 degC"));
}

#[test]
fn compare_needs_two_models() {
    let o = egs(&["compare", "--models", "single"]);
    assert!(!o.status.success());
}

#[test]
fn report_goes_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let rep = dir.path().join("report.txt");
    let out = dir.path().join("wide.csv");
    let o = egs(&[
        "compare",
        "--models",
        "single,gringarten_ref",
        "--steps",
        "5",
        "--out",
        p(&out),
        "--report",
        p(&rep),
    ]);
    assert!(o.status.success());
    assert!(std::fs::read_to_string(&rep).unwrap().contains("onset_yr"));
    assert_eq!(std::fs::read_to_string(&out).unwrap().lines().count(), 6);
}

#[test]
fn invalid_scenario_lists_violations_and_writes_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let text = include_str!("../data/valles_caldera.json")
        .replace("\"aperture\": 0.00127", "\"aperture\": 0.0")
        .replace(
            "\"injection_temperature\": 65.0",
            "\"injection_temperature\": 350.0",
        );
    let sc = dir.path().join("bad.json");
    std::fs::write(&sc, text).unwrap();
    let out = dir.path().join("out.csv");
    let o = egs(&["forecast", "--scenario", p(&sc), "--out", p(&out)]);
    assert!(!o.status.success());
    let err = stderr(&o);
    assert!(err.contains("2 violation(s)"));
    assert!(err.contains("fractures.aperture"));
    assert!(err.contains("fluid.injection_temperature"));
    assert!(!out.exists());
}

#[test]
fn unknown_scenario_key_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let text = include_str!("../data/valles_caldera.json")
        .replace("\"count\": 1,", "\"count\": 1, \"wells\": 2,");
    let sc = dir.path().join("extra.json");
    std::fs::write(&sc, text).unwrap();
    let o = egs(&["forecast", "--scenario", p(&sc)]);
    assert!(!o.status.success());
    assert!(stderr(&o).contains("unknown field"));
}

#[test]
fn slab_without_spacing_is_invalid() {
    let dir = tempfile::tempdir().unwrap();
    let text = include_str!("../data/valles_caldera.json").replace("\"spacing\": 40.0,", "");
    let sc = dir.path().join("nospacing.json");
    std::fs::write(&sc, text).unwrap();
    let o = egs(&[
        "forecast",
        "--scenario",
        p(&sc),
        "--model",
        "multi_slab",
        "--fractures",
        "10",
    ]);
    assert!(!o.status.success());
    assert!(stderr(&o).contains("fractures.spacing"));
}

#[test]
fn narrow_slab_reports_inversion_failure_without_output() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out.csv");
    let o = egs(&[
        "forecast",
        "--model",
        "multi_slab",
        "--fractures",
        "10",
        "--faces",
        "2",
        "--spacing-m",
        "5",
        "--out",
        p(&out),
    ]);
    assert!(!o.status.success());
    assert!(stderr(&o).contains("admissible band"));
    assert!(!out.exists());
}

#[test]
fn bad_stehfest_order() {
    let o = egs(&["forecast", "--stehfest-n", "22"]);
    assert!(!o.status.success());
    assert!(stderr(&o).contains("Stehfest order"));
}

#[test]
fn zeinali_rates_decrease() {
    let at50 = |rate: &str| {
        let o = egs(&[
            "forecast",
            "--scenario",
            concat!(env!("CARGO_MANIFEST_DIR"), "/data/zeinali.json"),
            "--model",
            "multi_slab",
            "--rate-bpd",
            rate,
            "--steps",
            "2",
        ]);
        assert!(o.status.success(), "{}", stderr(&o));
        *column(&stdout(&o), 1).last().unwrap()
    };
    let (a, b, c) = (at50("40"), at50("80"), at50("160"));
    assert!(a > b && b > c);
}

const COARSE: [&str; 8] = [
    "--nx",
    "40",
    "--ny",
    "80",
    "--stretch",
    "1.08",
    "--time-steps",
    "400",
];

#[test]
fn oracle_single_fracture() {
    let dir = tempfile::tempdir().unwrap();
    let snap = dir.path().join("snap.csv");
    let mut args = vec![
        "oracle",
        "--probe-yr",
        "1,10,50",
        "--snapshot-yr",
        "10",
        "--snapshot-out",
        p(&snap),
    ];
    args.extend(COARSE);
    let o = egs(&args);
    assert!(o.status.success(), "{}", stderr(&o));
    let csv = stdout(&o);
    assert!(csv.starts_with("time_yr,T_oracle_C,T_analytic_C,deviation_C,deviation_pct_span\n"));
    for pct in column(&csv, 4) {
        assert!(pct.abs() < 2.0);
    }
    let snap = std::fs::read_to_string(&snap).unwrap();
    assert!(snap.starts_with("x_m,y_m,T_C\n"));
    assert_eq!(snap.lines().count(), 1 + 41 * 81);
    assert!(stderr(&o).contains("energy"));
}

#[test]
fn oracle_empty_probes_give_header_only() {
    let mut args = vec!["oracle", "--probe-yr", ""];
    args.extend(COARSE);
    let o = egs(&args);
    assert!(o.status.success());
    assert_eq!(
        stdout(&o),
        "time_yr,T_oracle_C,T_analytic_C,deviation_C,deviation_pct_span\n"
    );
}

#[test]
fn oracle_slab_mode() {
    let mut args = vec![
        "oracle",
        "--fractures",
        "10",
        "--faces",
        "2",
        "--spacing-m",
        "40",
        "--probe-yr",
        "10,25,50",
    ];
    args.extend(COARSE);
    let o = egs(&args);
    assert!(o.status.success(), "{}", stderr(&o));
    for pct in column(&stdout(&o), 4) {
        assert!(pct.abs() < 2.0);
    }
    assert!(stderr(&o).contains("Laplace slab model"));
}

#[test]
fn oracle_rejects_bad_grid_and_slab_without_array() {
    let o = egs(&["oracle", "--stretch", "1.5"]);
    assert!(!o.status.success());
    assert!(stderr(&o).contains("stretch"));
    let o = egs(&["oracle", "--mode", "slab"]);
    assert!(!o.status.success());
}

#[test]
fn convert_units() {
    let o = egs(&["convert", "3280", "ft", "m"]);
    assert_eq!(stdout(&o), "999.744 m\n");
    let o = egs(&["convert", "0.05", "in", "m"]);
    assert_eq!(stdout(&o), "0.00127 m\n");
    let o = egs(&["convert", "1", "ft", "s"]);
    assert!(!o.status.success());
    assert!(stderr(&o).contains("different dimensions"));
    assert!(!egs(&["convert", "1", "furlong", "m"]).status.success());
}

#[test]
fn repeated_runs_are_byte_identical() {
    let a = egs(&[
        "compare",
        "--models",
        "single,gringarten_ref,multi_slab:40",
        "--fractures",
        "10",
        "--faces",
        "2",
    ]);
    let b = egs(&[
        "compare",
        "--models",
        "single,gringarten_ref,multi_slab:40",
        "--fractures",
        "10",
        "--faces",
        "2",
    ]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stderr, b.stderr);
}
