use std::process::{Command, Output};

use fockseries::{Rational, Series};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fockseries"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn npoint_json_embeds_both_series() {
    let o = run(&["npoint", "--lambda", "2", "--mu", "1,1", "--z-order", "8"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let g = Series::from_json(&v["G"].to_string()).unwrap();
    // G = ς(2z)/4 = sinh(z)/2
    let odd: Vec<Rational> = (0..=8).map(|k| g.coeff(&[k])).collect();
    let want = [0, 1, 0, 1, 0, 1, 0, 1, 0]
        .iter()
        .enumerate()
        .map(|(k, &b)| {
            if b == 0 {
                Rational::zero()
            } else {
                &Rational::new(1, 2) / &Rational::factorial(k as u32)
            }
        });
    assert_eq!(odd, want.collect::<Vec<_>>());
    let f = Series::from_json(&v["F"].to_string()).unwrap();
    // F• = ς(z)ς(2z)/4 off the diagonal
    assert_eq!(f.coeff(&[0]), Rational::zero());
    assert_eq!(f.coeff(&[2]), Rational::new(1, 2));
}

#[test]
fn trace_csv_rows() {
    let o = run(&[
        "trace",
        "--factors",
        "chern",
        "--points",
        "1",
        "--q-order",
        "4",
        "--format",
        "csv",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("exponent_vector,value"));
    let rows: Vec<&str> = lines.collect();
    assert!(rows.contains(&"0|1,1/1"));
    assert!(rows.contains(&"0|2,4/1"));
    assert!(rows.contains(&"2|2,1/1"));
}

#[test]
fn trace_routes_agree() {
    let base = [
        "trace",
        "--factors",
        "epsilon0",
        "--points",
        "2",
        "--q-order",
        "3",
        "--z-order",
        "3",
        "--format",
        "csv",
    ];
    let direct = run(&base);
    let mut formula = base.to_vec();
    formula.extend(["--method", "formula"]);
    let formula = run(&formula);
    assert_eq!(direct.status.code(), Some(0));
    assert_eq!(stdout(&direct), stdout(&formula));
}

#[test]
fn tau_json_is_a_series() {
    let o = run(&[
        "tau",
        "--m",
        "-1",
        "--K",
        "2",
        "--total-degree",
        "2",
        "--n-max",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let s = Series::from_json(&stdout(&o)).unwrap();
    assert_eq!(s.constant_term(), Rational::one());
    // order t1 t2 s1 s2 x0 x1 x2; c^(−1)_0 = 1/2
    assert_eq!(s.coeff(&[0, 0, 0, 0, 1, 0, 0]), Rational::new(1, 2));
    assert_eq!(s.coeff(&[1, 0, 1, 0, 0, 0, 0]), Rational::one());
}

#[test]
fn verify_suites_exit_zero() {
    let o = run(&["verify", "--suite", "all", "--max-n", "4"]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v.as_array().unwrap().iter().all(|c| c["pass"] == true));
    let o = run(&["verify", "--suite", "toda", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().skip(1).all(|l| l.ends_with(",true")));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["npoint", "--lambda", "2"]).status.code(), Some(2));
    assert_eq!(
        run(&["npoint", "--lambda", "x", "--mu", "1"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["npoint", "--lambda", "2", "--mu", "1,1", "--z-order", "0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(run(&["verify", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    let o = run(&["trace", "--q-order", "4", "--n-max", "2"]);
    assert_eq!(o.status.code(), Some(3));
    let e: serde_json::Value =
        serde_json::from_str(String::from_utf8_lossy(&o.stderr).trim()).unwrap();
    assert_eq!(e["error"], "window");
    assert!(e["message"].as_str().unwrap().contains("q-window"));
}

#[test]
fn output_is_deterministic_and_seed_is_ignored() {
    let a = run(&[
        "npoint",
        "--lambda",
        "2,1",
        "--mu",
        "1,1,1",
        "--points",
        "2",
        "--z-order",
        "3",
    ]);
    let b = run(&[
        "npoint",
        "--lambda",
        "2,1",
        "--mu",
        "1,1,1",
        "--points",
        "2",
        "--z-order",
        "3",
        "--seed",
        "7",
    ]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn config_file_supplies_defaults() {
    let dir = std::env::temp_dir().join(format!("fockseries-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("run.conf");
    std::fs::write(
        &path,
        "lambda = \"2\"\nmu = [1, 1]\nz-order = 3\nformat = \"csv\"\n",
    )
    .unwrap();
    let p = path.to_str().unwrap();
    let o = run(&["--config", p, "npoint"]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    assert_eq!(stdout(&o), "exponent_vector,value\n1,1/2\n3,1/12\n");
    // flags win over the file
    let o = run(&["--config", p, "npoint", "--z-order", "1"]);
    assert_eq!(stdout(&o), "exponent_vector,value\n1,1/2\n");
    std::fs::remove_dir_all(&dir).unwrap();
}
