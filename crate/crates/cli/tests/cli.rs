use std::process::{Command, Output};

fn isochk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_isochk")).args(args).output().expect("run isochk")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn tmp(name: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("isochk-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn exit_codes() {
    assert_eq!(isochk(&["analyze", "-H", "1/2*(x^2"]).status.code(), Some(2));
    assert_eq!(isochk(&["analyze", "-H", "x^3", "--samples", "2"]).status.code(), Some(3));
    assert_eq!(isochk(&["period", "-H", "x^2 + 2*x*y + y^2"]).status.code(), Some(3));
    assert_eq!(isochk(&["jacobian", "--f", "x^2", "--g", "y"]).status.code(), Some(3));
    assert_eq!(isochk(&["singular", "-H", "1/2*x^2"]).status.code(), Some(3));
    assert_eq!(isochk(&["period", "-H", "1/2*x^2 + 1/2*y^2", "--samples", "1"]).status.code(), Some(2));
    assert_eq!(isochk(&["period", "-H", "1/2*x^2 + 1/2*y^2", "--iso-tol", "0"]).status.code(), Some(2));
    // Every level lies beyond the saddle at h = 1/54: no cycle to follow.
    let o = isochk(&["period", "-H", "1/2*x^2 + 1/2*y^2 + x^3", "--h-min", "0.05", "--h-max", "0.1", "--samples", "2", "--ray", "0"]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn text_outputs() {
    let o = isochk(&["necessary", "-H", "1/2*x^2+1/2*y^2+x^4+y^4"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().next().unwrap(), "FAILS multiplicity condition: max multiplicity 1 < 2 ⇒ not isochronous");

    let o = isochk(&["jacobian", "--f", "x", "--g", "y+x^2"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim_end(), "Jacobian constant 1; common zeros: 1; single-intersection criterion: met");

    let o = isochk(&["singular", "-H", "1/2*x^2+1/2*y^2+x^3"]);
    let s = stdout(&o);
    assert!(s.contains("(-1/3, 0): H = 1/54\n") && s.contains("(0, 0): H = 0 (on H = 0)\n"), "{s}");

    let o = isochk(&["analyze", "-H", "1/2*x^2+1/2*y^2+x^3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("overall: not isochronous (numeric)\n"));
}

#[test]
fn period_csv_rows() {
    let path = tmp("linear.csv");
    let o = isochk(&["period", "-H", "1/2*x^2+1/2*y^2", "--samples", "8", "--ray", "0", "--csv", path.to_str().unwrap()]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("h_re,h_im,T_re,T_im,drift"));
    let rows: Vec<Vec<f64>> = lines.map(|l| l.split(',').map(|v| v.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 8);
    for r in rows {
        assert!((r[2] - std::f64::consts::TAU).abs() < 1e-9 && r[3].abs() < 1e-9);
    }
}

#[test]
fn scaled_input_periods_map_back() {
    // H = x² + y² has period π at every level.
    let o = isochk(&["period", "-H", "x^2 + y^2", "--samples", "3", "--ray", "0", "--ray", "-45", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let entries = v["report"]["samples"]["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 6);
    for e in entries {
        let t = &e["sample"]["T"];
        assert!((t["re"].as_f64().unwrap() - std::f64::consts::PI).abs() < 1e-9);
    }
    let h3 = &entries[3]["h"];
    assert!((h3["re"].as_f64().unwrap() - 1e-3 * std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
    assert!((h3["im"].as_f64().unwrap() + 1e-3 * std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
}

#[test]
fn json_report_embeds_config() {
    let path = tmp("shear.json");
    let o = isochk(&["analyze", "-H", "1/2*x^2+1/2*(y+x^2)^2", "--json", path.to_str().unwrap()]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["schema"], "isochk/1");
    assert_eq!(v["config"]["command"], "analyze");
    assert_eq!(v["config"]["samples"], 8);
    assert_eq!(v["config"]["rays"], serde_json::json!([0.0, 60.0]));
    assert_eq!(v["report"]["overall"]["verdict"], "numerically_isochronous");
    assert_eq!(v["report"]["multiplicity"]["max_multiplicity"], 4);
}

#[test]
fn identical_runs_are_byte_identical() {
    let a = tmp("run-a.json");
    let b = tmp("run-b.json");
    for p in [&a, &b] {
        let o = isochk(&["analyze", "-H", "1/2*x^2+1/2*(y+x^2)^2", "--json", p.to_str().unwrap()]);
        assert!(o.status.success());
    }
    let (ja, jb) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    // The output path itself is part of the echoed configuration.
    let strip = |v: Vec<u8>| String::from_utf8(v).unwrap().replace("run-a", "run").replace("run-b", "run");
    assert_eq!(strip(ja), strip(jb));
    let o1 = isochk(&["analyze", "-H", "1/2*x^2+1/2*(y+x^2)^2", "--format", "json"]);
    let o2 = isochk(&["analyze", "-H", "1/2*x^2+1/2*(y+x^2)^2", "--format", "json"]);
    assert_eq!(o1.stdout, o2.stdout);
}
