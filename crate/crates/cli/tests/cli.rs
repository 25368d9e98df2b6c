use std::fs;
use std::process::{Command, Output};

const C3: &str = r#"{"kind":"ambient","n":3,"edges":[[0,1],[1,2],[2,0]],"omega":[0,1]}"#;
const BOX_10: &str = r#"{"kind":"box","d":2,"lo":[0,0],"hi":[9,9]}"#;

fn polylap(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polylap")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("valid JSON on stdout")
}

#[test]
fn c3_spectrum() {
    let out = polylap(&["spectrum", "--domain", C3, "--order", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "{\"eigenvalues\":[3.00000000000e0,9.00000000000e0],\"residual_max\":null}\n");
}

#[test]
fn square_spectrum_as_csv_with_vectors() {
    let dom = r#"{"kind":"box","d":2,"lo":[0,0],"hi":[1,1]}"#;
    let out = polylap(&["spectrum", "--domain", dom, "--format", "csv"]);
    assert_eq!(
        stdout(&out),
        "k,eigenvalue\n1,2.00000000000e0\n2,4.00000000000e0\n3,4.00000000000e0\n4,6.00000000000e0\n"
    );
    let out = polylap(&["spectrum", "--domain", dom, "--vectors"]);
    assert!(json(&out)["residual_max"].as_f64().unwrap() < 1e-12);
}

#[test]
fn path_spectrum_matches_closed_form() {
    let out = polylap(&["spectrum", "--domain", r#"{"kind":"box","d":1,"lo":[0],"hi":[9]}"#]);
    let ev = json(&out)["eigenvalues"].as_array().unwrap().clone();
    assert_eq!(ev.len(), 10);
    for (j, v) in ev.iter().enumerate() {
        let want = 2.0 - 2.0 * ((j + 1) as f64 * std::f64::consts::PI / 11.0).cos();
        assert!((v.as_f64().unwrap() - want).abs() < 1e-10);
    }
}

#[test]
fn bounds_pass_on_the_square() {
    for l in ["1", "2"] {
        let out = polylap(&["bounds", "--domain", BOX_10, "--order", l]);
        assert_eq!(out.status.code(), Some(0), "l = {l}");
        let report = json(&out);
        assert_eq!(report["omega_size"], 100);
        assert!(!report["rows"].as_array().unwrap().is_empty());
    }
}

#[test]
fn bounds_beyond_the_caps_are_not_applicable() {
    let out = polylap(&["bounds", "--domain", BOX_10, "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 101);
    assert!(lines.last().unwrap().ends_with("NA,NA,NA"));
}

#[test]
fn c3_order_comparison_has_zero_gap() {
    let out = polylap(&["compare-orders", "--domain", C3]);
    assert_eq!(out.status.code(), Some(0));
    let rows = json(&out)["rows"].as_array().unwrap().clone();
    assert_eq!(rows[1]["gap"].as_f64(), Some(0.0));
}

#[test]
fn exhaustion_and_its_errors() {
    let out = polylap(&["exhaustion", "-d", "1", "--order", "2", "--sizes", "10,20,40"]);
    assert_eq!(out.status.code(), Some(0));
    let steps = json(&out)["steps"].as_array().unwrap().clone();
    assert_eq!(steps.len(), 3);
    assert!(steps.iter().all(|s| s["lam1_pow"].as_f64().unwrap() < s["lam"].as_f64().unwrap()));
    let out = polylap(&["exhaustion", "--sizes", "20,10"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn fourier_check_passes_and_rejects_coarse_grids() {
    let dom = r#"{"kind":"ball","d":2,"center":[0,0],"r":3}"#;
    let out = polylap(&["fourier-check", "--domain", dom, "--order", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["pass"], true);
    let out = polylap(&["fourier-check", "--domain", dom, "--grid", "5"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("need N >= 13"));
}

#[test]
fn fig1_outputs_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let run = |tag: &str| {
        let svg = dir.path().join(format!("{tag}.svg"));
        let csv = dir.path().join(format!("{tag}.csv"));
        let out = polylap(&[
            "fig1",
            "--n",
            "25,50,100",
            "--plot",
            svg.to_str().unwrap(),
            "--out",
            csv.to_str().unwrap(),
            "--format",
            "csv",
        ]);
        assert_eq!(out.status.code(), Some(0));
        (fs::read_to_string(svg).unwrap(), fs::read_to_string(csv).unwrap())
    };
    let (svg_a, csv_a) = run("a");
    let (svg_b, csv_b) = run("b");
    assert_eq!(svg_a, svg_b);
    assert_eq!(csv_a, csv_b);
    assert_eq!(svg_a.matches("<polyline").count(), 1);
    assert_eq!(svg_a.matches("class=\"reference\"").count(), 1);
    assert_eq!(csv_a.lines().count(), 4);
}

#[test]
fn domain_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c3.json");
    fs::write(&path, C3).unwrap();
    let out = polylap(&["spectrum", "--domain", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let missing = dir.path().join("missing.json");
    assert_eq!(polylap(&["spectrum", "--domain", missing.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn usage_errors_exit_with_2() {
    assert_eq!(polylap(&["spectrum", "--domain", "{\"kind\":\"torus\"}"]).status.code(), Some(2));
    assert_eq!(polylap(&["spectrum"]).status.code(), Some(2));
    assert_eq!(polylap(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(polylap(&["bounds", "--domain", C3]).status.code(), Some(2));
}

#[test]
fn thread_cap_from_environment() {
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_polylap"))
            .args(["fig1", "--n", "10,20"])
            .env("POLYLAP_THREADS", threads)
            .output()
            .unwrap()
    };
    let one = run("1");
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, run("3").stdout);
    assert_eq!(run("zero").status.code(), Some(2));
}
