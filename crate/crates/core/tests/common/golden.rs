//! Fixture-driven CLI cases. Outputs live in `tests/golden/<name>.out`;
//! run with `UPDATE_GOLDEN=1` to rewrite them.

use std::path::{Path, PathBuf};
use std::process::Command;

pub struct Case {
    pub name: &'static str,
    pub args: &'static [&'static str],
    pub exit: i32,
}

pub const CASES: &[Case] = &[
    Case {
        name: "spectrum_cos1_json",
        args: &["spectrum", "--input", "fixtures/cos1.json", "--order", "3"],
        exit: 0,
    },
    Case {
        name: "spectrum_cos1_csv",
        args: &[
            "spectrum",
            "--input",
            "fixtures/cos1.json",
            "--order",
            "3",
            "--format",
            "csv",
        ],
        exit: 0,
    },
    Case {
        name: "spectrum_t5_csv",
        args: &[
            "spectrum",
            "--input",
            "fixtures/t5.json",
            "--order",
            "6",
            "--format",
            "csv",
        ],
        exit: 0,
    },
    Case {
        name: "bounds_square_csv",
        args: &[
            "bounds",
            "--input",
            "fixtures/square.json",
            "--order",
            "5",
            "--format",
            "csv",
        ],
        exit: 0,
    },
    Case {
        name: "bounds_t5_csv",
        args: &[
            "bounds",
            "--input",
            "fixtures/t5.json",
            "--order",
            "6",
            "--format",
            "csv",
        ],
        exit: 0,
    },
    Case {
        name: "bounds_worked_json",
        args: &[
            "bounds",
            "--input",
            "fixtures/worked.json",
            "--order",
            "4",
            "--grid",
            "256",
        ],
        exit: 0,
    },
    Case {
        name: "bounds_malformed",
        args: &["bounds", "--input", "fixtures/malformed.json"],
        exit: 2,
    },
    Case {
        name: "band_design_worked",
        args: &[
            "band-design",
            "--input",
            "fixtures/worked.json",
            "--j",
            "3",
            "--q",
            "2",
        ],
        exit: 0,
    },
    Case {
        name: "band_design_eq11",
        args: &[
            "band-design",
            "--input",
            "fixtures/worked.json",
            "--j",
            "3",
            "--q",
            "2",
            "--n-extrema",
            "4",
        ],
        exit: 0,
    },
    Case {
        name: "band_design_bad_q",
        args: &[
            "band-design",
            "--input",
            "fixtures/worked.json",
            "--j",
            "3",
            "--q",
            "0.5",
        ],
        exit: 2,
    },
    Case {
        name: "band_design_attained",
        args: &[
            "band-design",
            "--input",
            "fixtures/center_const.json",
            "--j",
            "3",
            "--q",
            "2",
        ],
        exit: 0,
    },
    Case {
        name: "band_verify_center",
        args: &[
            "band-verify",
            "--input",
            "fixtures/center_const.json",
            "--band",
            "fixtures/band_worked.json",
            "--grid",
            "256",
        ],
        exit: 0,
    },
    Case {
        name: "band_verify_unchanged",
        args: &[
            "band-verify",
            "--input",
            "fixtures/worked.json",
            "--band",
            "fixtures/band_worked.json",
            "--grid",
            "256",
        ],
        exit: 1,
    },
    Case {
        name: "band_verify_clamped",
        args: &[
            "band-verify",
            "--input",
            "fixtures/clamped.json",
            "--band",
            "fixtures/band_worked.json",
            "--grid",
            "256",
        ],
        exit: 0,
    },
    Case {
        name: "clamp_worked",
        args: &[
            "clamp",
            "--input",
            "fixtures/worked.json",
            "--band",
            "fixtures/band_worked.json",
            "--grid",
            "256",
        ],
        exit: 0,
    },
    Case {
        name: "plot_cos1",
        args: &["plot", "--input", "fixtures/cos1.json", "--grid", "8"],
        exit: 0,
    },
    Case {
        name: "plot_band",
        args: &[
            "plot",
            "--input",
            "fixtures/clamped.json",
            "--band",
            "fixtures/band_worked.json",
            "--grid",
            "16",
        ],
        exit: 0,
    },
    Case {
        name: "plot_wake_empty",
        args: &["plot", "--input", "fixtures/wake_empty.json", "--grid", "4"],
        exit: 0,
    },
    Case {
        name: "plot_t5",
        args: &["plot", "--input", "fixtures/t5.json", "--grid", "11"],
        exit: 0,
    },
];

pub fn tests_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests")
}

pub struct Run {
    pub code: i32,
    pub stdout: Vec<u8>,
    pub stderr: String,
}

pub fn run(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_harmonic-bounds"))
        .args(args)
        .current_dir(tests_dir())
        .output()
        .expect("binary runs");
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: out.stdout,
        stderr: String::from_utf8_lossy(&out.stderr).into_owned(),
    }
}

/// Run one case and compare it with its golden file, returning a description of any mismatch.
pub fn check(case: &Case) -> Result<(), String> {
    let first = run(case.args);
    let second = run(case.args);
    if first.code != case.exit {
        return Err(format!(
            "exit {} (want {}): {}",
            first.code, case.exit, first.stderr
        ));
    }
    if first.stdout != second.stdout || first.code != second.code {
        return Err("output differs between identical runs".into());
    }
    let path = tests_dir()
        .join("golden")
        .join(format!("{}.out", case.name));
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &first.stdout).map_err(|e| e.to_string())?;
        return Ok(());
    }
    let want = std::fs::read(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    if want != first.stdout {
        return Err(format!("stdout differs from {}", path.display()));
    }
    Ok(())
}
