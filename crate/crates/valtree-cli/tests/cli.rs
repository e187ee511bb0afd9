mod common;

use std::fs;

use common::{golden_path, run, transcript, GOLDENS};

/// Set `VALTREE_BLESS=1` to rewrite the golden files after a reviewed change.
#[test]
fn goldens_match() {
    let bless = std::env::var_os("VALTREE_BLESS").is_some();
    for g in GOLDENS {
        let got = transcript(g);
        let path = golden_path(g.name);
        if bless {
            fs::write(&path, &got).unwrap();
            continue;
        }
        let want = fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden {}", path.display()));
        assert_eq!(got, want, "golden {} differs", g.name);
        assert!(
            got.starts_with(&format!("exit: {}\n", g.exit)),
            "{}: wrong exit code",
            g.name
        );
    }
}

#[test]
fn cusp_invariants_report() {
    let (code, out, _) = run(&["invariants", "--branch", "n=2; y=t^3"]);
    assert_eq!(code, 0);
    assert!(out.contains("α = ∞\n"));
    assert!(out.contains("m = 2\n"));
    assert!(out.contains("semigroup: 2, 3\n"));
}

#[test]
fn cusp_dot_has_three_weighted_vertices() {
    let (code, out, _) = run(&["desing", "--branch", "n=2; y=t^3", "--dot"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("graph dualgraph {"));
    for w in ["(2,1)", "(3,1)", "(5,2)"] {
        assert_eq!(out.matches(w).count(), 1, "{w}");
    }
    assert_eq!(out.matches("[label=\"E").count(), 3);
}

#[test]
fn multiplicity_of_x2_y3() {
    assert_eq!(run(&["mult", "--ideal", "x^2, y^3"]), (0, "6\n".into(), String::new()));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["no-such-verb"]).0, 2);
    assert_eq!(run(&["mult"]).0, 2);
    assert_eq!(run(&["mult", "--ideal", "x", "--ideal", "y", "--ideal", "x, y"]).0, 2);
    assert_eq!(run(&["skp", "--branch", "n=0; y=t"]).0, 1);
    assert_eq!(
        run(&["eval", "--skp", "tests/data/does-not-exist.json", "--poly", "x"]).0,
        2
    );
    assert_eq!(run(&["ideal-factor", "--ideal", "x^2 +"]).0, 1);
    assert_eq!(run(&["skp", "--poly", "y^2 - 2*x^3"]).0, 1);
}

#[test]
fn truncation_flag_and_environment() {
    let base = run(&["skp", "--branch", "n=2; y=t^3+t^5"]);
    let flag = run(&["skp", "--branch", "n=2; y=t^3+t^5", "--trunc", "4"]);
    assert_eq!(base, flag);
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_valtree"))
        .args(["skp", "--branch", "n=2; y=t^3"])
        .env("VALTREE_TRUNC", "many")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn json_outputs_parse_back() {
    let (_, out, _) = run(&["skp", "--branch", "n=3; y=t^4", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let s = valtree::io::skp_from_json(&v).unwrap();
    assert_eq!(s, valtree::skp::skp_of_branch(&"n=3; y=t^4".parse().unwrap()).unwrap());
    let (_, out, _) = run(&["desing", "--branch", "n=2; y=t^3", "--json"]);
    let g = valtree::io::graph_from_json(&serde_json::from_str(&out).unwrap()).unwrap();
    assert_eq!(g.len(), 3);
}
