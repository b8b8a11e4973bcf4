use std::process::{Command, Output};

use entangle::commsim::Ledger;
use entangle_cli::CliError;

fn entangle(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_entangle"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = entangle(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

/// CSV output as (header, rows).
fn csv(args: &[&str]) -> (Vec<String>, Vec<Vec<String>>) {
    let text = stdout(args);
    let mut lines = text
        .lines()
        .map(|l| l.split(',').map(str::to_string).collect::<Vec<_>>());
    let header = lines.next().unwrap();
    (header, lines.collect())
}

fn column(header: &[String], rows: &[Vec<String>], name: &str) -> Vec<String> {
    let idx = header
        .iter()
        .position(|h| h == name)
        .unwrap_or_else(|| panic!("no {name}"));
    rows.iter().map(|r| r[idx].clone()).collect()
}

/// Σ_k C(n,k) p^{n-k} q^k log₂ C(n,k) over n ≤ 60, summed directly.
fn exact_yield(a2: f64, n: u64) -> f64 {
    let mut c = 1.0f64;
    let mut total = 0.0;
    for k in 0..=n {
        if k > 0 {
            c = c * (n - k + 1) as f64 / k as f64;
        }
        total += c * a2.powi((n - k) as i32) * (1.0 - a2).powi(k as i32) * c.log2();
    }
    total
}

#[test]
fn entropy_of_a_bell_pair_is_one() {
    let (h, rows) = csv(&["entropy", "--a2", "0.5"]);
    assert_eq!(column(&h, &rows, "entropy"), ["1.0"]);
    assert_eq!(column(&h, &rows, "entropy_density"), ["1.0"]);
}

#[test]
fn concentration_sweep_approaches_entropy() {
    let (h, rows) = csv(&["sweep", "concentrate", "--a2", "0.3", "--n", "10,100,1000"]);
    assert_eq!(column(&h, &rows, "n"), ["10", "100", "1000"]);
    let per_copy: Vec<f64> = column(&h, &rows, "expected_yield_per_copy")
        .iter()
        .map(|v| v.parse().unwrap())
        .collect();
    assert!((per_copy[0] - exact_yield(0.3, 10) / 10.0).abs() < 1e-12);
    assert!(per_copy.windows(2).all(|w| w[0] < w[1]));
    assert!(0.881_290_899_230_692_6 - per_copy[2] < 0.01);
    assert!(column(&h, &rows, "classical_bits").iter().all(|b| b == "0"));
}

#[test]
fn dilution_time_doubles_with_distance() {
    let args = [
        "compare-distance",
        "dilute",
        "--a2",
        "0.9",
        "--n",
        "50",
        "--rate",
        "1.1",
    ];
    let (h, rows) = csv(&[&args[..], &["--d", "1000,2000"]].concat());
    assert_eq!(column(&h, &rows, "ratio"), ["1.0", "2.0"]);
    assert_eq!(column(&h, &rows, "budget"), ["26", "26"]);
    assert_eq!(column(&h, &rows, "classical_bits"), ["52", "52"]);
}

#[test]
fn concentration_is_distance_independent() {
    let (h, rows) = csv(&[
        "compare-distance",
        "concentrate",
        "--a2",
        "0.3",
        "--n",
        "40",
        "--d",
        "10,1e6",
    ]);
    assert_eq!(column(&h, &rows, "elapsed_seconds"), ["0.0", "0.0"]);
    assert_eq!(column(&h, &rows, "distance_independent"), ["true", "true"]);
}

#[test]
fn output_is_reproducible_and_self_describing() {
    let args = [
        "sweep",
        "cycle",
        "--a2",
        "0.3",
        "--n",
        "20,200,2000",
        "--seed",
        "77",
    ];
    let first = stdout(&args);
    assert_eq!(first, stdout(&args));
    let (h, rows) = csv(&args);
    assert!(column(&h, &rows, "seed").iter().all(|s| s == "77"));
    assert!(column(&h, &rows, "a2").iter().all(|s| s == "0.3"));
    let shortfall: Vec<f64> = column(&h, &rows, "expected_per_copy_shortfall")
        .iter()
        .map(|v| v.parse().unwrap())
        .collect();
    assert!(shortfall[0] > shortfall[1] && shortfall[1] > shortfall[2]);
    assert_ne!(
        first,
        stdout(&[
            "sweep",
            "cycle",
            "--a2",
            "0.3",
            "--n",
            "20,200,2000",
            "--seed",
            "78"
        ])
    );
}

#[test]
fn sweep_point_zero_matches_single_run() {
    let (h, single) = csv(&["concentrate", "--a2", "0.4", "--n", "64", "--trials", "50"]);
    let (_, swept) = csv(&[
        "sweep",
        "concentrate",
        "--a2",
        "0.4",
        "--n",
        "64,8",
        "--trials",
        "50",
    ]);
    assert_eq!(single[0][1..], swept[0][1..]);
    assert_eq!(column(&h, &swept, "point"), ["0", "1"]);
}

#[test]
fn json_mirrors_csv() {
    let args = [
        "sweep", "dilute", "--a2", "0.9", "--n", "8,16", "--budget", "1,4",
    ];
    let (h, rows) = csv(&args);
    let json: serde_json::Value =
        serde_json::from_str(&stdout(&[&args[..], &["--format", "json"]].concat())).unwrap();
    let objects = json.as_array().unwrap();
    assert_eq!(objects.len(), rows.len());
    for (obj, row) in objects.iter().zip(&rows) {
        let keys: Vec<&String> = obj.as_object().unwrap().keys().collect();
        assert_eq!(keys.len(), h.len());
        for (name, value) in h.iter().zip(row) {
            let field = &obj[name.as_str()];
            match field {
                serde_json::Value::String(s) => assert_eq!(s, value),
                serde_json::Value::Null => assert!(value.is_empty()),
                other => assert_eq!(other.as_f64().unwrap(), value.parse::<f64>().unwrap()),
            }
        }
    }
}

#[test]
fn scenario_file_matches_flags() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.toml");
    std::fs::write(
        &path,
        "command = \"sweep\"\ntarget = \"concentrate\"\na2 = 0.3\nn = [10, 100]\ntrials = 20\nseed = 5\n",
    )
    .unwrap();
    let from_file = stdout(&["--scenario", path.to_str().unwrap()]);
    let from_flags = stdout(&[
        "sweep",
        "concentrate",
        "--a2",
        "0.3",
        "--n",
        "10,100",
        "--trials",
        "20",
        "--seed",
        "5",
    ]);
    assert_eq!(from_file, from_flags);
    let overridden = stdout(&["--scenario", path.to_str().unwrap(), "--seed", "6"]);
    assert_ne!(from_file, overridden);
}

#[test]
fn transcripts_parse_back_into_ledgers() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("teleport.txt");
    let (h, rows) = csv(&[
        "teleport",
        "--trials",
        "10",
        "--transcript",
        path.to_str().unwrap(),
    ]);
    let ledger = Ledger::from_transcript(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(ledger.total_bits(), 20);
    assert_eq!(ledger.total_rounds(), 10);
    assert_eq!(column(&h, &rows, "rounds"), ["10"]);

    let path = dir.path().join("sweep.txt");
    let (h, rows) = csv(&[
        "sweep",
        "dilute",
        "--a2",
        "0.7",
        "--n",
        "10,20,30",
        "--rate",
        "1.2",
        "--transcript",
        path.to_str().unwrap(),
    ]);
    let ledger = Ledger::from_transcript(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let bits: u64 = column(&h, &rows, "classical_bits")
        .iter()
        .map(|b| b.parse::<u64>().unwrap())
        .sum();
    assert_eq!(ledger.total_bits(), bits);
    assert_eq!(ledger.total_rounds(), 3);
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        &["entropy"][..],
        &["entropy", "--a2", "-0.1"],
        &["concentrate", "--a2", "0.3", "--n", "10,20"],
        &["dilute", "--a2", "0.3", "--n", "10"],
        &["cycle", "--a2", "0.0", "--n", "10"],
        &["teleport", "--trials", "0"],
        &["--scenario", "/nonexistent/scenario.toml"],
        &["sweep", "teleport"],
        &["concentrate", "--a2", "0.3", "--n", "2000000"],
    ] {
        let out = entangle(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
        assert!(out.stdout.is_empty());
    }
}

#[test]
fn library_errors_map_to_exit_codes() {
    let usage: CliError = entangle::Error::DegenerateCycle.into();
    assert_eq!(usage.exit_code(), 2);
    let breach: CliError = entangle::Error::Invariant("x".into()).into();
    assert_eq!(breach.exit_code(), 1);
}
