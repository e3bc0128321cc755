use std::process::{Command, Output};

fn selfpow(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_selfpow"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn point_queries() {
    let o = selfpow(&["count", "--p", "7", "--a", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "2");

    assert_eq!(
        stdout(&selfpow(&["sym", "--p", "7", "--oracle"])),
        "10\noracle 10 agrees\n"
    );
    assert_eq!(stdout(&selfpow(&["fixed", "--p", "11"])).trim(), "1");
    assert_eq!(stdout(&selfpow(&["crocker", "--p", "7"])).trim(), "4");
    assert_eq!(
        stdout(&selfpow(&["orderclass", "--p", "7", "--t", "2"])).trim(),
        "3"
    );
    assert!(stdout(&selfpow(&["lift", "--p", "7", "--a", "2"]))
        .starts_with("x = 38 (mod 42), verified = true"));
    assert_eq!(
        stdout(&selfpow(&["hist", "--p", "5"])),
        "a,count\n1,2\n2,1\n3,0\n4,1\n"
    );
}

#[test]
fn structured_reports() {
    let o = selfpow(&["orderclass", "--p", "7", "--t", "1", "--decompose"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("direct 2 decomposed 2\n"));

    let o = selfpow(&["zd", "--p", "7", "--a", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("identity 2 direct 2"));

    let o = selfpow(&["garaev", "--p", "7", "--set", "1,2,4"]);
    assert!(stdout(&o).starts_with("|A| = 3, |A+A| = 6, |A*A| = 3, lhs = 18"));

    let o = selfpow(&["sparse", "--q", "7", "--terms", "1:3,-1:0"]);
    assert!(stdout(&o).starts_with("Q = 3, delta = 3, main term = 6.000000"));
}

#[test]
fn scan_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("n1.csv");
    let o = selfpow(&[
        "scan",
        "--metric",
        "n1",
        "--pmin",
        "2",
        "--pmax",
        "11",
        "--out",
        out.to_str().unwrap(),
        "--workers",
        "2",
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let text = std::fs::read_to_string(&out).unwrap();
    let rows: Vec<Vec<&str>> = text.lines().map(|l| l.split(',').collect()).collect();
    assert_eq!(rows[0], ["p", "metric", "value", "eff_exp", "elapsed_ms"]);
    let ps: Vec<&str> = rows[1..].iter().map(|r| r[0]).collect();
    assert_eq!(ps, ["2", "3", "5", "7", "11"]);
    assert_eq!(&rows[4][..4], ["7", "n1", "2", "0.356207"]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("reference exponent 1/3"));
}

#[test]
fn verify_exit_codes() {
    let o = selfpow(&["verify", "--plimit", "100"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().skip(1).all(|l| l.starts_with("PASS")));

    assert_eq!(selfpow(&["verify", "--plimit", "2"]).status.code(), Some(2));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(
        selfpow(&["count", "--p", "8", "--a", "1"]).status.code(),
        Some(2)
    );
    assert_eq!(selfpow(&["bogus"]).status.code(), Some(2));
    assert_eq!(
        selfpow(&["orderclass", "--p", "7", "--t", "4"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        selfpow(&[
            "scan",
            "--metric",
            "orderclass",
            "--pmin",
            "2",
            "--pmax",
            "10",
            "--out",
            "/dev/null"
        ])
        .status
        .code(),
        Some(2)
    );
    assert_eq!(
        selfpow(&[
            "scan",
            "--metric",
            "m",
            "--pmin",
            "2",
            "--pmax",
            "10",
            "--out",
            "/nonexistent/dir/x.csv"
        ])
        .status
        .code(),
        Some(2)
    );
    assert_eq!(
        selfpow(&["sparse", "--q", "7", "--terms", "1:1"])
            .status
            .code(),
        Some(2)
    );
}
