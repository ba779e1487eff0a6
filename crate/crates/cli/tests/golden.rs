//! Byte-level golden outputs: the wire formats are part of the contract and
//! must not drift across machines or versions.

use std::process::Command;

fn run(args: &[&str]) -> String {
    let out = Command::new(env!("CARGO_BIN_EXE_maxvar"))
        .args(args)
        .output()
        .expect("binary runs");
    assert!(out.status.success(), "exit: {:?}", out.status);
    String::from_utf8(out.stdout).expect("utf-8")
}

#[test]
fn field_descriptor_golden() {
    let got = run(&["field", "info", "--p", "3", "--d", "2"]);
    let expect = "{\n  \"p\": 3,\n  \"d\": 2,\n  \"modulus\": [\n    1,\n    0,\n    1\n  ],\n  \"size\": 9\n}\n";
    assert_eq!(got, expect);
}

#[test]
fn count_report_golden() {
    let got = run(&[
        "variety", "count", "--p", "2", "--f", "1", "--n", "2", "--case", "1", "--k", "2",
    ]);
    let expect = concat!(
        "{\n",
        "  \"spec\": {\n    \"p\": 2,\n    \"f\": 1,\n    \"n\": 2,\n    \"case\": 1\n  },\n",
        "  \"k\": 2,\n",
        "  \"total\": 16,\n",
        "  \"per_component\": {\n    \"0\": 8,\n    \"1\": 8\n  },\n",
        "  \"predicted\": 16,\n",
        "  \"match\": true,\n",
        "  \"method\": \"fiber\"\n",
        "}\n"
    );
    assert_eq!(got, expect);
}

#[test]
fn zeta_csv_golden() {
    let got = run(&[
        "variety", "zeta", "--p", "2", "--f", "1", "--n", "2", "--case", "1", "--kmax", "3",
    ]);
    assert_eq!(
        got,
        "k,counted,predicted,match\n1,16,16,true\n2,16,16,true\n3,160,160,true\n"
    );
}

#[test]
fn gauss_report_golden() {
    let got = run(&["chars", "gauss", "--q", "2", "--k", "2"]);
    let expect = concat!(
        "{\n",
        "  \"q\": 2,\n  \"k\": 2,\n",
        "  \"b\": [\n    1,\n    0\n  ],\n",
        "  \"value\": -8,\n  \"expected\": -8,\n  \"match\": true\n",
        "}\n"
    );
    assert_eq!(got, expect);
}

#[test]
fn betti_csv_golden() {
    let got = run(&[
        "variety", "betti", "--p", "2", "--f", "1", "--n", "4", "--case", "2", "--format", "csv",
    ]);
    assert_eq!(
        got,
        "d,n1,degree,count,dim,sign\n1,4,6,2,1,1\n2,2,4,2,16,1\n4,1,3,12,64,-1\n"
    );
}

#[test]
fn exit_codes() {
    // Usage error: 2.
    let out = Command::new(env!("CARGO_BIN_EXE_maxvar"))
        .args(["frobnicate"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    // Everything skipped by a zero budget: 3.
    let out = Command::new(env!("CARGO_BIN_EXE_maxvar"))
        .args([
            "suite",
            "--suite",
            "zeta",
            "--budget-ops",
            "0",
            "--out",
            "/dev/null",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}
