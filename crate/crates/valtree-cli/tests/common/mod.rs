//! Golden CLI cases shared by the CLI tests and the acceptance run.

use std::path::PathBuf;
use std::process::Command;

pub struct Golden {
    pub name: &'static str,
    pub args: &'static [&'static str],
    pub exit: i32,
}

pub const GOLDENS: &[Golden] = &[
    Golden {
        name: "invariants_cusp",
        args: &["invariants", "--branch", "n=2; y=t^3"],
        exit: 0,
    },
    Golden {
        name: "desing_cusp_dot",
        args: &["desing", "--branch", "n=2; y=t^3", "--dot"],
        exit: 0,
    },
    Golden {
        name: "mult_x2_y3",
        args: &["mult", "--ideal", "x^2, y^3"],
        exit: 0,
    },
    Golden {
        name: "mult_m_m2",
        args: &["mult", "--ideal", "x, y", "--ideal", "x^2, x*y, y^2"],
        exit: 0,
    },
    Golden {
        name: "skp_json",
        args: &["skp", "--branch", "n=2; y=t^3+t^5", "--json"],
        exit: 0,
    },
    Golden {
        name: "desing_pair_json",
        args: &[
            "desing",
            "--branch",
            "n=2; y=t^3",
            "--branch",
            "n=2; y = t^3 + 1/2*t^5 - 5/8*t^7",
            "--json",
        ],
        exit: 0,
    },
    Golden {
        name: "desing_equi",
        args: &["desing-equi", "--equi", "tests/data/tangential.json"],
        exit: 0,
    },
    Golden {
        name: "desing_poly",
        args: &["desing", "--poly", "(y^2 - x^3)*(y - x)"],
        exit: 0,
    },
    Golden {
        name: "classical",
        args: &[
            "classical",
            "--branch",
            "n=4; y=t^6+t^7",
            "--branch",
            "n=2; y=t^3",
            "--jobs",
            "2",
        ],
        exit: 0,
    },
    Golden {
        name: "ideal_factor_json",
        args: &["ideal-factor", "--ideal", "x^2, x*y, y^2", "--json"],
        exit: 0,
    },
    Golden {
        name: "ideal_factor_text",
        args: &["ideal-factor", "--ideal", "x^2, y^3"],
        exit: 0,
    },
    Golden {
        name: "closure_xy",
        args: &["closure", "--ideal", "x^2, y^2", "--poly", "x*y"],
        exit: 0,
    },
    Golden {
        name: "closure_x",
        args: &["closure", "--ideal", "x^2, y^2", "--poly", "x"],
        exit: 0,
    },
    Golden {
        name: "eggers",
        args: &["eggers", "--branch", "n=2; y=t^3", "--branch", "n=2; y=t^3+t^5"],
        exit: 0,
    },
    Golden {
        name: "classmeasure",
        args: &["classmeasure", "--branch", "n=2; y=t^3"],
        exit: 0,
    },
    Golden {
        name: "wedge",
        args: &["wedge", "--branch", "n=2; y=t^3", "--branch", "n=1; x=0"],
        exit: 0,
    },
    Golden {
        name: "eval_skp_file",
        args: &[
            "eval",
            "--skp",
            "tests/data/skp_t2_t3t5.json",
            "--poly",
            "y^2 - x^3 - 2*x^4",
        ],
        exit: 0,
    },
    Golden {
        name: "not_primary",
        args: &["mult", "--ideal", "y^2 - x^3"],
        exit: 1,
    },
    Golden {
        name: "missing_input",
        args: &["desing"],
        exit: 2,
    },
    Golden {
        name: "dot_misuse",
        args: &["skp", "--branch", "n=2; y=t^3", "--dot"],
        exit: 2,
    },
];

pub fn crate_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

/// Runs the binary from the crate directory with a clean truncation setting.
pub fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_valtree"))
        .args(args)
        .current_dir(crate_dir())
        .env_remove("VALTREE_TRUNC")
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).expect("utf-8 stdout"),
        String::from_utf8(out.stderr).expect("utf-8 stderr"),
    )
}

pub fn golden_path(name: &str) -> PathBuf {
    crate_dir().join("tests/golden").join(format!("{name}.txt"))
}

/// What a golden file records: exit code, stdout, and stderr.
pub fn transcript(g: &Golden) -> String {
    let (code, out, err) = run(g.args);
    format!("exit: {code}\n--- stdout\n{out}--- stderr\n{err}")
}
