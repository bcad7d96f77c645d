use std::process::{Command, Output};

use serde_json::Value;

fn shellzeta(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_shellzeta"))
        .args(args)
        .env_remove("SHELLZETA_PRECISION")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = shellzeta(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    serde_json::from_str(&stdout(args)).unwrap()
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

#[test]
fn table1_defaults() {
    let text = stdout(&["table1"]);
    assert!(!text.contains('\r'));
    let rows = csv_rows(&text);
    assert_eq!(
        rows[0],
        [
            "label",
            "x",
            "prime_count",
            "log_density_sum",
            "m_value",
            "mode",
            "flags"
        ]
    );
    assert_eq!(
        rows[1][..6],
        ["integers", "100", "25", "29.99144", "-0.94812622482360", "float"]
    );
    assert_eq!(
        rows[2][..6],
        ["integers", "200", "46", "50.04329", "-0.97060984525939", "float"]
    );
    assert_eq!(rows[1][6], "");
}

#[test]
fn table1_single_small_limit() {
    let rows = csv_rows(&stdout(&["table1", "--limits", "2"]));
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[1][2], "1");
    assert_eq!(rows[1][4], "-0.25000000000000");
}

#[test]
fn descending_limits_exit_with_two() {
    let out = shellzeta(&["table1", "--limits", "100,50"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("ascending"));
}

#[test]
fn bad_inputs_exit_with_two() {
    for args in [
        vec!["residual", "--x", "3"],
        vec!["residual", "0,0", "--x", "3"],
        vec!["table1", "--precision", "quad"],
        vec!["table1", "--s", "0.5"],
        vec!["table2", "--powers", "0"],
        vec!["mseries", "shell:3", "--x", "3", "--depth", "1"],
    ] {
        assert_eq!(shellzeta(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn unwritable_output_exits_with_one() {
    let out = shellzeta(&["table1", "--out", "/nonexistent-dir/t.csv"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn table2_single_power() {
    let rows = csv_rows(&stdout(&["table2", "--powers", "2", "--limits", "100"]));
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[1][0], "shell:2");
    assert_eq!(rows[1][4], "-0.70856869191073");
}

#[test]
fn table2_reports_count_differences_as_flags() {
    let rows = csv_rows(&stdout(&["table2"]));
    assert_eq!(rows.len(), 9);
    let p2 = &rows[1];
    assert_eq!(p2[2], "45");
    assert!(p2[6].contains("prime_count_differs_from=44"), "{}", p2[6]);
    let p7 = &rows[7];
    assert_eq!(p7[2], "24");
    assert!(!p7[6].contains("prime_count"));
}

#[test]
fn degenerate_power_is_flagged() {
    let rows = csv_rows(&stdout(&["table2", "--powers", "1", "--limits", "10"]));
    assert_eq!(rows[1][0], "shell:1");
    assert_eq!(rows[1][2], "0");
    assert!(rows[1][6].contains("empty_product"));
    assert!(rows[1][6].contains("log_terms_skipped=9"));
}

#[test]
fn csv_output_is_deterministic() {
    let a = stdout(&["table2", "--limits", "10:200:10"]);
    let b = stdout(&["table2", "--limits", "10:200:10"]);
    assert_eq!(a.as_bytes(), b.as_bytes());
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.csv");
    stdout(&["table2", "--limits", "10:200:10", "--out", path.to_str().unwrap()]);
    assert_eq!(std::fs::read_to_string(path).unwrap(), a);
}

#[test]
fn exact_and_float_tables_agree() {
    for command in ["table1", "table2"] {
        let float = csv_rows(&stdout(&[command]));
        let exact = csv_rows(&stdout(&[command, "--precision", "exact"]));
        for (f, e) in float.iter().zip(&exact).skip(1) {
            assert_eq!(e[5], "exact");
            let gap = (f[4].parse::<f64>().unwrap() - e[4].parse::<f64>().unwrap()).abs();
            assert!(gap <= 1e-13, "{command} {f:?}");
            assert_eq!(f[..4], e[..4]);
        }
    }
}

#[test]
fn precision_environment_default_and_flag_override() {
    let run = |args: &[&str]| {
        let out = Command::new(env!("CARGO_BIN_EXE_shellzeta"))
            .args(args)
            .env("SHELLZETA_PRECISION", "exact")
            .output()
            .unwrap();
        String::from_utf8(out.stdout).unwrap()
    };
    assert!(run(&["table1", "--limits", "10"]).contains(",exact,"));
    assert!(run(&["table1", "--limits", "10", "--precision", "float"]).contains(",float,"));
}

#[test]
fn config_file_is_overridden_by_flags() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.toml");
    std::fs::write(&path, "powers = [3]\nlimits = \"100,200\"\nformat = \"json\"\n").unwrap();
    let config = path.to_str().unwrap();
    let rows: Value = serde_json::from_str(&stdout(&["table2", "--config", config])).unwrap();
    assert_eq!(rows.as_array().unwrap().len(), 2);
    assert_eq!(rows[0]["m_value"], "-0.05016737946525");
    assert_eq!(rows[0]["x"], "100");
    assert_eq!(rows[0]["prime_count"], "42");
    let csv = stdout(&["table2", "--config", config, "--format", "csv", "--limits", "100"]);
    assert_eq!(csv.lines().count(), 2);
}

#[test]
fn figure_series() {
    let rows = csv_rows(&stdout(&["figure-data"]));
    assert_eq!(rows[0], ["label", "x", "m_value"]);
    assert_eq!(rows.len(), 11);
    assert_eq!(rows[1], ["integers", "100", "-0.94812622482360"]);
    assert_eq!(rows[10], ["shell:7", "200", "-0.00006682330851"]);

    let ints_only = csv_rows(&stdout(&["figure-data", "--powers", ""]));
    assert_eq!(ints_only.len(), 3);

    let grid = csv_rows(&stdout(&["figure-data", "--limits", "10:200:10"]));
    assert_eq!(grid.len(), 1 + 5 * 20);
    for series in grid[1..].chunks(20) {
        let m: Vec<f64> = series.iter().map(|r| r[2].parse().unwrap()).collect();
        assert!(m.windows(2).all(|w| w[1] <= w[0]), "{}", series[0][0]);
    }
}

#[test]
fn residual_reports() {
    let r = json(&["residual", "shell:3", "--x", "3", "--exact"]);
    assert_eq!(r["m_value"]["value"], "-517/17689");
    assert_eq!(r["zeta_partial"]["value"], "159/133");
    assert_eq!(r["start_index"], "2");

    let r = json(&["residual", "--poly", "integers", "--x", "100"]);
    assert_eq!(r["m_value"]["value"], "-0.94812622482360");
    assert_eq!(r["mode"], "float");

    let r = json(&["residual", "1", "--x", "4"]);
    assert_eq!(r["empty_product"], true);
}

#[test]
fn mseries_report() {
    let r = json(&["mseries", "shell:3", "--x", "3", "--depth", "2", "--exact"]);
    assert_eq!(r["partial_sum"]["value"], "-543/17689");
    assert_eq!(r["depth"], 2);
    let terms = r["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 1);
    assert_eq!(terms[0]["d"], 2);
    assert_eq!(terms[0]["sign"], -1);
}

#[test]
fn compare_reports_and_exits_zero() {
    let r = json(&["compare", "shell:3", "--x", "3", "--exact"]);
    assert_eq!(r["deviation"]["value"], "1/2527");
    assert_eq!(r["verdict"], "SYSTEMATIC_GAP");

    let r = json(&["compare", "integers", "--x", "2", "--exact"]);
    assert_eq!(r["verdict"], "MATCH");

    let r = json(&["compare", "shell:3", "--x", "8", "--exact"]);
    assert_eq!(r["deviation"]["numerator"], "111044920832040402");
    assert_eq!(r["deviation"]["denominator"], "77089026890140104931");

    let r = json(&["compare", "shell:3", "--x", "8"]);
    assert_eq!(r["verdict"], "SYSTEMATIC_GAP");
}

#[test]
fn single_shot_commands_refuse_csv() {
    assert_eq!(
        shellzeta(&["residual", "shell:3", "--x", "3", "--format", "csv"])
            .status
            .code(),
        Some(2)
    );
}
