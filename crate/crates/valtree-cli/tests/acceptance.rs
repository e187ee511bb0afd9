//! Acceptance run: the nine criteria, one pass/fail line each. Criterion 9 also
//! checks the command-line binary: its `selftest` report must match the in-process
//! report byte for byte, and every golden transcript must be reproduced twice.

mod common;

use std::fs;
use std::process::ExitCode;

use common::{golden_path, run, transcript, GOLDENS};
use valtree::selftest::{render, run_all, CriterionResult};

fn cli_determinism(in_process: &str) -> Result<String, String> {
    let (code, out, err) = run(&["selftest"]);
    if code != 0 || out != in_process {
        return Err(format!(
            "`valtree selftest` differs from the in-process report (exit {code}): {err}"
        ));
    }
    for g in GOLDENS {
        let want = fs::read_to_string(golden_path(g.name)).map_err(|e| format!("golden {}: {e}", g.name))?;
        if !want.starts_with(&format!("exit: {}\n", g.exit)) {
            return Err(format!("golden {} records the wrong exit code", g.name));
        }
        for round in 1..=2 {
            if transcript(g) != want {
                return Err(format!("golden {} differs on run {round}", g.name));
            }
        }
    }
    Ok(format!("selftest report and {} goldens byte-stable", GOLDENS.len()))
}

fn main() -> ExitCode {
    let mut results = run_all();
    // the report the binary must reproduce is the one before the CLI check is folded in
    let report = render(&results);
    if let Some(r) = results.iter_mut().find(|r| r.id == 9) {
        let cli = cli_determinism(&report);
        let CriterionResult { passed, detail, .. } = r;
        match cli {
            Ok(d) => *detail = format!("{detail}; {d}"),
            Err(e) => {
                *passed = false;
                *detail = format!("{detail}; {e}");
            }
        }
    }
    print!("{}", render(&results));
    if results.iter().all(|r| r.passed) {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
