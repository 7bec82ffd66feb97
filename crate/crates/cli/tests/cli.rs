//! End-to-end runs of the `hypergeom` binary.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hypergeom"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn factorial_membership() {
    let o = run(&["membership", "--f", "1", "--g", "x", "--u0", "1", "--target", "120"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("t = 120: Yes(5)"), "{}", stdout(&o));

    let o = run(&[
        "membership",
        "--f",
        "1",
        "--g",
        "x",
        "--target",
        "120",
        "--target",
        "100",
        "--format",
        "text",
    ]);
    let text = stdout(&o);
    let records: Vec<&str> = text
        .split("membership-verdict v1")
        .filter(|r| !r.trim().is_empty())
        .collect();
    assert_eq!(records.len(), 2);
    assert!(records[0].contains("outcome = yes") && records[0].contains("witness = 5"));
    assert!(records[1].contains("outcome = no"));
}

#[test]
fn sextic_pair_has_no_asymmetric_prime() {
    let o = run(&[
        "asymmetry",
        "--f",
        "(x^4-10*x^2+1)*x^2",
        "--g",
        "(x^2-2)*(x^2-3)*(x^2-6)",
        "--pmax",
        "10000",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("no asymmetric Hensel prime"), "{out}");
    assert!(out.contains("asymmetric 0"), "{out}");
}

#[test]
fn telescoping_terms() {
    let o = run(&[
        "terms", "--f", "x+2", "--g", "x+1", "--u0", "1", "--n", "10", "--format", "csv",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("# hypergeom terms v1"));
    assert_eq!(lines.next(), Some("n,u_n"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 11);
    // u_n = 2 / (n + 2)
    for (n, row) in rows.iter().enumerate() {
        let want = match 2 % (n + 2) {
            0 => format!("{n},1"),
            _ if (n + 2) % 2 == 0 => format!("{n},1/{}", (n + 2) / 2),
            _ => format!("{n},2/{}", n + 2),
        };
        assert_eq!(*row, want);
    }
    assert_eq!(rows[10], "10,1/6");
}

#[test]
fn exit_codes() {
    let o = run(&["terms", "--f", "x", "--g", "1", "--n", "3"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("InvalidF"));

    let o = run(&["valuation", "--f", "1", "--g", "x", "--p", "4", "--nmax", "3"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("NotPrime"));

    let o = run(&["terms", "--f", "x^2 +", "--g", "1", "--n", "3"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("ParseError"));

    assert_eq!(run(&["terms", "--f", "x+1"]).status.code(), Some(2));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
}

#[test]
fn spec_files() {
    let dir = std::env::temp_dir().join(format!("hypergeom-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("seqs.txt");
    std::fs::write(
        &path,
        "# two records\nf = x + 2; g = x + 1\nf = x^2 - 2; g = x^2 - 3; u0 = 1\n",
    )
    .unwrap();
    let p = path.to_str().unwrap();

    let o = run(&["validate", "--spec", p, "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().filter(|l| l.contains(",true,")).count(), 2);

    let o = run(&["asymmetry", "--spec", p, "--record", "1", "--format", "text"]);
    let out = stdout(&o);
    assert!(
        out.starts_with("asymmetry-certificate v1\np = 7\nm_f = 2\nm_g = 0\n"),
        "{out}"
    );

    let o = run(&[
        "padic", "identity", "--spec", p, "--record", "1", "--p", "23", "--s", "2", "--format", "text",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("direct = -1\ndigit_formula = -1"));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn csv_is_deterministic() {
    let args = [
        "height",
        "--f",
        "x^2-2*x-1",
        "--g",
        "x^2-3",
        "--nmax",
        "200",
        "--stride",
        "10",
        "--p",
        "7",
        "--format",
        "csv",
    ];
    let a = stdout(&run(&args));
    let b = stdout(&run(&args));
    assert_eq!(a, b);
    assert!(a.starts_with("# hypergeom height v1\nn,height_float,valuation_p\n"));

    let args = [
        "equidist",
        "--delta",
        "2",
        "--plimit",
        "20000",
        "--format",
        "csv",
        "--threads",
        "3",
    ];
    assert_eq!(stdout(&run(&args)), stdout(&run(&args)));
}

#[test]
fn classify_and_regularize() {
    let o = run(&["classify", "--f", "x^2-2*x-1", "--g", "x^2-3", "--format", "csv"]);
    let out = stdout(&o);
    assert!(out.contains("\n2,01,7\n") && out.contains("\n3,10,11\n"), "{out}");

    let o = run(&["regularize", "--f", "x+2", "--g", "x+1", "--format", "text"]);
    let out = stdout(&o);
    assert!(
        out.contains("f_tilde = 1\ng_tilde = 1\n") && out.contains("q = (2) / (x + 2)"),
        "{out}"
    );
}
