//! End-to-end checks of the `reslat` binary: exit codes, JSON round
//! trips, and the reproduction presets.

use std::path::PathBuf;
use std::process::{Command, Output};

fn reslat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_reslat"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("reslat-cli-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn build_emits_valid_json_that_reloads_equal() {
    let out = reslat(&["build", "wajsberg", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let alg = reslat::algebra::FiniteAlgebra::from_json(&text).unwrap();
    assert!(alg.validate().passed());
    assert_eq!(alg.size(), 4);
    // re-serialize byte-identically
    assert_eq!(alg.to_json().trim(), text.trim());
}

#[test]
fn check_exit_codes() {
    let dir = tmp("check");
    let k4_path = dir.join("k4.json");
    let k4 = reslat(&["named", "K4"]);
    std::fs::write(&k4_path, stdout(&k4)).unwrap();

    // satisfied equation: exit 0
    let ok = reslat(&["check", k4_path.to_str().unwrap(), "--named", "K1"]);
    assert_eq!(ok.status.code(), Some(0), "{}", stdout(&ok));

    // counterexample: exit 1, labeled assignment printed
    let bad = reslat(&["check", k4_path.to_str().unwrap(), "--named", "P"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).contains("counterexample"));
    assert!(stdout(&bad).contains("="));

    // parsed equation text works too
    let parsed = reslat(&["check", k4_path.to_str().unwrap(), "--eq", "x = x"]);
    assert_eq!(parsed.status.code(), Some(0));

    // usage errors: exit 2
    let neither = reslat(&["check", k4_path.to_str().unwrap()]);
    assert_eq!(neither.status.code(), Some(2));
    let syntax = reslat(&["check", k4_path.to_str().unwrap(), "--eq", "x +"]);
    assert_eq!(syntax.status.code(), Some(2));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn malformed_json_is_a_usage_error() {
    let dir = tmp("badjson");
    let path = dir.join("bad.json");
    std::fs::write(&path, "{\"size\": 2}").unwrap();
    let out = reslat(&["con", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn unknown_subcommand_is_a_usage_error() {
    let out = reslat(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn iso_agrees_and_disagrees() {
    let dir = tmp("iso");
    let a = dir.join("a.json");
    let b = dir.join("b.json");
    std::fs::write(&a, stdout(&reslat(&["build", "wajsberg", "2"]))).unwrap();
    std::fs::write(&b, stdout(&reslat(&["build", "godel", "3"]))).unwrap();
    let same = reslat(&["iso", a.to_str().unwrap(), a.to_str().unwrap()]);
    assert_eq!(same.status.code(), Some(0));
    assert!(stdout(&same).contains("isomorphic"));
    let diff = reslat(&["iso", a.to_str().unwrap(), b.to_str().unwrap()]);
    assert_eq!(diff.status.code(), Some(1));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn sum_prod_kexpand_pipeline() {
    let dir = tmp("pipeline");
    let two = dir.join("two.json");
    std::fs::write(&two, stdout(&reslat(&["build", "two"]))).unwrap();
    let l2 = dir.join("l2.json");
    std::fs::write(&l2, stdout(&reslat(&["build", "wajsberg", "2"]))).unwrap();

    let sum = reslat(&["sum", two.to_str().unwrap(), l2.to_str().unwrap()]);
    assert_eq!(sum.status.code(), Some(0));
    let sum_alg = reslat::algebra::FiniteAlgebra::from_json(&stdout(&sum)).unwrap();
    assert_eq!(sum_alg.size(), 4);

    let prod = reslat(&["prod", two.to_str().unwrap(), two.to_str().unwrap()]);
    let prod_alg = reslat::algebra::FiniteAlgebra::from_json(&stdout(&prod)).unwrap();
    assert_eq!(prod_alg.size(), 4);

    let sum_path = dir.join("sum.json");
    std::fs::write(&sum_path, stdout(&sum)).unwrap();
    let k = reslat(&["kexpand", sum_path.to_str().unwrap()]);
    assert_eq!(k.status.code(), Some(0));
    let k_alg = reslat::algebra::FiniteAlgebra::from_json(&stdout(&k)).unwrap();
    assert_eq!(k_alg.size(), 16);
    assert!(reslat::kexpansion::is_k_lattice(&k_alg));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn con_reports_congruence_census() {
    let dir = tmp("con");
    let g3 = dir.join("g3.json");
    std::fs::write(&g3, stdout(&reslat(&["build", "godel", "3"]))).unwrap();
    let out = reslat(&["con", g3.to_str().unwrap(), "--blocks"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("congruences: 3"));
    assert!(text.contains("simple: false"));
    assert!(text.contains("subdirectly_irreducible: true"));
    assert!(text.contains("theta_0"));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn named_with_parameters_and_admissible_census() {
    let out = reslat(&["named", "K_{r,p}", "--r", "1", "--p", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let alg = reslat::algebra::FiniteAlgebra::from_json(&stdout(&out)).unwrap();
    assert_eq!(alg.size(), 13);

    let dir = tmp("admissible");
    let l3 = dir.join("l3.json");
    std::fs::write(&l3, stdout(&reslat(&["build", "wajsberg", "3"]))).unwrap();
    let census = reslat(&["admissible", l3.to_str().unwrap(), "--enumerate"]);
    assert_eq!(census.status.code(), Some(0));
    assert!(stdout(&census).contains("admissible_count=4"));

    // principal filter of a^1: the top two chain elements
    let carved = reslat(&["admissible", l3.to_str().unwrap(), "--filter", "2,3"]);
    assert_eq!(carved.status.code(), Some(0));
    assert!(stdout(&carved).contains("admissible_count=1"));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn subs_census_modes() {
    let dir = tmp("subs");
    let g3 = dir.join("g3.json");
    std::fs::write(&g3, stdout(&reslat(&["build", "godel", "3"]))).unwrap();
    let plain = reslat(&["subs", g3.to_str().unwrap()]);
    assert_eq!(plain.status.code(), Some(0));
    assert!(stdout(&plain).contains("subuniverses="));
    let iso = reslat(&["subs", g3.to_str().unwrap(), "--up-to-iso"]);
    assert!(stdout(&iso).contains("iso_classes="));
    // an integral algebra is its own negative cone
    let adm = reslat(&["subs", g3.to_str().unwrap(), "--admissible-only"]);
    assert!(stdout(&adm).contains("admissible_count=1"));
    // K(2) has two subalgebras above its cone: K3 and itself
    let k4 = dir.join("k4.json");
    std::fs::write(&k4, stdout(&reslat(&["named", "K4"]))).unwrap();
    let adm = reslat(&["subs", k4.to_str().unwrap(), "--admissible-only"]);
    assert!(stdout(&adm).contains("admissible_count=2"));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn poset_preset_emits_dot_and_json() {
    let dir = tmp("poset");
    let dot = dir.join("out.dot");
    let out = reslat(&["poset", "--preset", "gnpcl", "--dot", dot.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("\"covers\""));
    assert!(text.contains("V(K25)"));
    let dot_text = std::fs::read_to_string(&dot).unwrap();
    assert!(dot_text.starts_with("digraph"));
    assert!(dot_text.contains("\"V(K3)\" -> \"V(K4)\""));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn poset_from_generator_files() {
    let dir = tmp("posetgen");
    let a = dir.join("k4.json");
    std::fs::write(&a, stdout(&reslat(&["named", "K4"]))).unwrap();
    let b = dir.join("k8.json");
    std::fs::write(&b, stdout(&reslat(&["named", "K8"]))).unwrap();
    let out = reslat(&[
        "poset",
        "--generators",
        &format!("{},{}", a.display(), b.display()),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout(&out).contains("V(k4)"));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn reproduce_presets_write_manifests() {
    let dir = tmp("reproduce");
    for (preset, expect_pass) in [("figure-k-n-3", true), ("k8", true), ("two-plus-l2-poset", true)] {
        let out = reslat(&[
            "reproduce",
            preset,
            "--out-dir",
            dir.join(preset).to_str().unwrap(),
        ]);
        let manifest: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
        assert_eq!(manifest["passed"].as_bool(), Some(expect_pass), "{preset}");
        assert_eq!(out.status.code(), Some(if expect_pass { 0 } else { 1 }), "{preset}");
        assert!(!manifest["artifacts"].as_array().unwrap().is_empty());
    }
    // the l2l3 preset disagrees with its reference drawing by design
    let out = reslat(&[
        "reproduce",
        "l2l3-poset",
        "--out-dir",
        dir.join("l2l3").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    let manifest: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(manifest["passed"].as_bool(), Some(false));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn help_is_success() {
    let out = reslat(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
}
