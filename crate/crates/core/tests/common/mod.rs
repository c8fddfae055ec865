//! Shared helpers for the integration tests.
#![allow(dead_code)]

use std::path::PathBuf;
use std::process::Command;

pub fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests")
}

pub fn qpath(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_qpath"))
        .current_dir(root())
        .args(args)
        .output()
        .expect("binary runs")
}

/// (golden file, argv)
pub const CASES: &[(&str, &[&str])] = &[
    (
        "mz_eval.txt",
        &["eval", "data/mz.qpd", "--circuit", "mz", "--input", "0"],
    ),
    (
        "mz_eval_1.txt",
        &["eval", "data/mz.qpd", "--circuit", "mz", "--input", "1"],
    ),
    (
        "mz_paths_0_1.txt",
        &[
            "paths",
            "data/mz.qpd",
            "--circuit",
            "mz",
            "--input",
            "0",
            "--output",
            "1",
        ],
    ),
    (
        "mz_paths_free.txt",
        &["paths", "data/mz.qpd", "--circuit", "mz", "--input", "0"],
    ),
    (
        "mz_sample.txt",
        &[
            "sample",
            "data/mz.qpd",
            "--circuit",
            "mz",
            "--input",
            "0",
            "--shots",
            "1000",
            "--seed",
            "7",
        ],
    ),
    (
        "mz_verify.txt",
        &["verify", "data/mz.qpd", "--circuit", "mz"],
    ),
    (
        "mz_dot.txt",
        &["dot", "data/mz.qpd", "--circuit", "mz", "--input", "0"],
    ),
    (
        "mz_dot_roles.txt",
        &[
            "dot",
            "data/mz.qpd",
            "--circuit",
            "mz",
            "--input",
            "0",
            "--mirror-roles",
        ],
    ),
    (
        "hadamard_contract.txt",
        &["contract", "data/hadamard.qpd", "--network"],
    ),
    (
        "hadamard_eval.txt",
        &[
            "eval",
            "data/hadamard.qpd",
            "--circuit",
            "hs",
            "--input",
            "0",
        ],
    ),
    (
        "hadamard_paths.txt",
        &[
            "paths",
            "data/hadamard.qpd",
            "--circuit",
            "hs",
            "--input",
            "1",
        ],
    ),
    (
        "hadamard_sample.txt",
        &[
            "sample",
            "data/hadamard.qpd",
            "--circuit",
            "hs",
            "--input",
            "1",
            "--shots",
            "500",
            "--seed",
            "11",
        ],
    ),
    (
        "hadamard_verify.txt",
        &["verify", "data/hadamard.qpd", "--circuit", "hs"],
    ),
    (
        "hadamard_dot.txt",
        &[
            "dot",
            "data/hadamard.qpd",
            "--circuit",
            "hs",
            "--input",
            "1",
        ],
    ),
    (
        "hadamard_test_re.txt",
        &[
            "hadamard-test",
            "data/hadamard.qpd",
            "--gate",
            "S",
            "--state",
            "psi",
            "--part",
            "re",
            "--shots",
            "100000",
            "--seed",
            "42",
        ],
    ),
    (
        "hadamard_test_im.txt",
        &[
            "hadamard-test",
            "data/hadamard.qpd",
            "--gate",
            "S",
            "--state",
            "psi",
            "--part",
            "im",
            "--shots",
            "100000",
            "--seed",
            "42",
        ],
    ),
    (
        "hadamard_test_mirror.txt",
        &[
            "hadamard-test",
            "data/hadamard.qpd",
            "--gate",
            "M",
            "--state",
            "plus",
            "--part",
            "re",
            "--shots",
            "100000",
            "--seed",
            "5",
        ],
    ),
];

/// Compares every case; returns the names of mismatches.
pub fn check_goldens() -> Vec<String> {
    let bless = std::env::var_os("QPATH_BLESS").is_some();
    let mut failures = Vec::new();
    for (name, args) in CASES {
        let out = qpath(args);
        let path = root().join("golden").join(name);
        if !out.status.success() {
            failures.push(format!("{name}: exit {:?}", out.status.code()));
            continue;
        }
        if bless {
            std::fs::write(&path, &out.stdout).unwrap();
        }
        match std::fs::read(&path) {
            Ok(expected) if expected == out.stdout => {}
            Ok(_) => failures.push(format!("{name}: output differs")),
            Err(e) => failures.push(format!("{name}: {e}")),
        }
    }
    failures
}
