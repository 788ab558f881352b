//! Shared helpers for running the `qeuler` binary in tests.

#![allow(dead_code)]

use std::path::PathBuf;
use std::process::{Command, Output};

pub struct GoldenCase {
    pub file: &'static str,
    pub args: &'static [&'static str],
}

/// Fixed invocations whose stdout is pinned byte-for-byte under `tests/golden`.
pub const GOLDEN_CASES: &[GoldenCase] = &[
    GoldenCase {
        file: "compute_euler_number_0.json",
        args: &["compute", "euler-number", "--n", "0"],
    },
    GoldenCase {
        file: "compute_euler_number_1.json",
        args: &["compute", "euler-number", "--n", "1"],
    },
    GoldenCase {
        file: "compute_euler_number_3_at_4.json",
        args: &["compute", "euler-number", "--n", "3", "--q", "4"],
    },
    GoldenCase {
        file: "compute_classical_euler_1.json",
        args: &["compute", "classical-euler", "--n", "1"],
    },
    GoldenCase {
        file: "compute_euler_poly_2_1.json",
        args: &["compute", "euler-poly", "--n", "2", "--x", "1"],
    },
    GoldenCase {
        file: "compute_bernstein_1_2_2.json",
        args: &["compute", "bernstein", "--k", "1", "--n", "2", "--x", "2"],
    },
    GoldenCase {
        file: "compute_integral_reflected.json",
        args: &[
            "compute",
            "integral-closed-form",
            "--power-n",
            "1",
            "--base",
            "1/q",
            "--reflected",
        ],
    },
    GoldenCase {
        file: "compute_integral_bernstein.json",
        args: &["compute", "integral-closed-form", "--bernstein", "1:2,1:2"],
    },
    GoldenCase {
        file: "table_0_2.json",
        args: &["table", "--n", "0..2"],
    },
    GoldenCase {
        file: "table_0_3_at_1.csv",
        args: &["table", "--n", "0..3", "--q", "1", "--csv"],
    },
    GoldenCase {
        file: "verify_t1.json",
        args: &["verify", "--id", "T1", "--n-max", "5"],
    },
    GoldenCase {
        file: "verify_e8printed.json",
        args: &["verify", "--id", "E8printed", "--n-max", "3"],
    },
    GoldenCase {
        file: "verify_t9printed.json",
        args: &["verify", "--id", "T9printed", "--s-max", "2", "--t9-n-max", "2"],
    },
    GoldenCase {
        file: "convergence_3_4_power_1.json",
        args: &["convergence", "--p", "3", "--q", "4", "--power-n", "1", "--max-N", "4"],
    },
    GoldenCase {
        file: "convergence_5_6_power_2.csv",
        args: &[
            "convergence",
            "--p",
            "5",
            "--q",
            "6",
            "--power-n",
            "2",
            "--max-N",
            "3",
            "--csv",
        ],
    },
];

pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden")
}

pub fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qeuler"))
        .args(args)
        .output()
        .expect("spawn qeuler")
}

pub fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

/// Compare one case against its golden file; `Err` carries a short reason.
pub fn check_golden(case: &GoldenCase) -> Result<(), String> {
    let out = run(case.args);
    if exit_code(&out) != 0 {
        return Err(format!("{}: exit {}", case.file, exit_code(&out)));
    }
    let expected = std::fs::read(golden_dir().join(case.file)).map_err(|e| format!("{}: {e}", case.file))?;
    if out.stdout != expected {
        return Err(format!("{}: output differs from golden file", case.file));
    }
    Ok(())
}

/// `(args, expected exit code)` pairs covering every documented code.
pub const EXIT_CASES: &[(&[&str], i32)] = &[
    (&["compute", "euler-number", "--n", "2"], 0),
    (&["verify", "--id", "T1", "--n-max", "3"], 0),
    (&["verify", "--id", "E8printed", "--n-max", "2"], 0),
    (&["verify", "--id", "bogus"], 2),
    (&["table", "--n", "5..3"], 2),
    (&["table", "--n", "x"], 2),
    (&["compute", "bernstein", "--k", "3", "--n", "2", "--x", "0"], 2),
    (&["compute", "euler-number", "--n", "1", "--q", "abc"], 2),
    (&["compute", "euler-number"], 2),
    (
        &["convergence", "--p", "2", "--q", "3", "--power-n", "1", "--max-N", "3"],
        2,
    ),
    (
        &["convergence", "--p", "3", "--q", "5", "--power-n", "1", "--max-N", "3"],
        2,
    ),
    (
        &["convergence", "--p", "9", "--q", "4", "--power-n", "1", "--max-N", "3"],
        2,
    ),
    (&["convergence", "--p", "3", "--q", "4", "--max-N", "3"], 2),
    (
        &[
            "convergence",
            "--p",
            "3",
            "--q",
            "4",
            "--power-n",
            "2",
            "--measure",
            "1/q",
            "--max-N",
            "2",
        ],
        3,
    ),
    (&["compute", "integral-closed-form", "--bernstein", "1:2,0:2"], 3),
    (&["frobnicate"], 2),
];
