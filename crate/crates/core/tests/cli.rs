//! Golden-file tests for the command line. Set `NCHOPF_BLESS=1` to rewrite
//! the files after an intended output change.

use std::path::PathBuf;
use std::process::Command;

use nc_hopf::cli::run;

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden")
}

fn check(name: &str, args: &[&str], code: i32) {
    let mut argv = vec!["nc-hopf"];
    argv.extend_from_slice(args);
    let out = run(argv);
    assert_eq!(out.code, code, "{name}: exit code, stderr: {}", out.stderr);
    let path = golden_dir().join(format!("{name}.txt"));
    if std::env::var_os("NCHOPF_BLESS").is_some() {
        std::fs::write(&path, &out.stdout).unwrap();
        return;
    }
    let want = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden file {}", path.display()));
    assert_eq!(out.stdout, want, "{name}: output differs from {}", path.display());
    // Identical invocations give byte-identical output.
    assert_eq!(run(std::iter::once("nc-hopf").chain(args.iter().copied())).stdout, out.stdout);
}

#[test]
fn enumeration() {
    check("enumerate_nc_4_count", &["enumerate", "nc", "--n", "4", "--count"], 0);
    check("enumerate_nc_4", &["enumerate", "nc", "--n", "4"], 0);
    check("enumerate_set_3", &["enumerate", "set", "--n", "3"], 0);
    check("enumerate_set_4_json", &["--json", "enumerate", "set", "--n", "4", "--count"], 0);
}

#[test]
fn partition_coproducts() {
    check("coproduct_nc_14_23", &["coproduct", "nc", "{1,4}{2,3}"], 0);
    check("coproduct_nc_15_2_34", &["coproduct", "nc", "{1,5}{2}{3,4}"], 0);
    check("coproduct_nc_12_3_4", &["coproduct", "nc", "{1,2}{3}{4}"], 0);
    check("coproduct_nc_1", &["coproduct", "nc", "{1}"], 0);
    check("coproduct_nc_12", &["coproduct", "nc", "{1,2}"], 0);
    check("coproduct_nc_13_2", &["coproduct", "nc", "{1,3}{2}"], 0);
    check("coproduct_nc_15_2_3_4", &["coproduct", "nc", "{1,5}{2}{3}{4}"], 0);
    check("coproduct_nc_14_23_left", &["coproduct", "nc", "{1,4}{2,3}", "--half", "left"], 0);
    check("coproduct_nc_14_23_right", &["coproduct", "nc", "{1,4}{2,3}", "--half", "right"], 0);
    check("coproduct_nc_14_23_json", &["--json", "coproduct", "nc", "{1,4}{2,3}"], 0);
    check("coproduct_decorated", &["coproduct", "decorated", "{1,3}{2}:a.b.a"], 0);
}

#[test]
fn word_coproducts() {
    check("coproduct_word_bar", &["coproduct", "word", "a1|a2"], 0);
    check("coproduct_word_bar_left", &["coproduct", "word", "a1|a2", "--half", "left"], 0);
    check("coproduct_word_a1a2a3", &["coproduct", "word", "a1.a2.a3"], 0);
    check("coproduct_word_reduced", &["coproduct", "word", "a1.a2.a3", "--reduced"], 0);
    check("split_a1a2", &["split", "a1.a2"], 0);
    check("split_a4_count", &["split", "a.a.a.a", "--count"], 0);
}

#[test]
fn transforms() {
    check("transform_classical_k2m_5", &["transform", "classical", "--direction", "k2m", "--symbolic", "--n", "5"], 0);
    check("transform_free_k2m_4", &["transform", "free", "--direction", "k2m", "--symbolic", "--n", "4"], 0);
    check("transform_free_m2k_4", &["transform", "free", "--direction", "m2k", "--symbolic", "--n", "4"], 0);
    check("transform_classical_m2k_4", &["transform", "classical", "--direction", "m2k", "--symbolic", "--n", "4"], 0);
    check("transform_free_semicircle", &["transform", "free", "--direction", "k2m", "--values", "0,1,0,0,0,0,0,0"], 0);
    check("transform_free_m2k_values", &["transform", "free", "--direction", "m2k", "--values", "1,2,5,14"], 0);
    check(
        "transform_multi_k2m_ab_3",
        &["transform", "multi", "--direction", "k2m", "--symbolic", "--n", "3", "--alphabet", "a,b"],
        0,
    );
    let last = run(["nc-hopf", "transform", "free", "--direction", "k2m", "--symbolic", "--n", "4"]).stdout;
    assert_eq!(last.lines().last(), Some("m_4 = k1^4 + 6*k1^2*k2 + 2*k2^2 + 4*k1*k3 + k4"));
}

#[test]
fn moebius_and_trees() {
    check("moebius_nc_4", &["moebius", "nc", "{1}{2}{3}{4}", "{1,2,3,4}"], 0);
    check("moebius_set_4", &["moebius", "set", "{1}{2}{3}{4}", "{1,2,3,4}"], 0);
    check("tree_14_23_567", &["tree", "{1,4}{2,3}{5,6,7}"], 0);
    check("tree_13_2_45", &["tree", "{1,3}{2}{4,5}"], 0);
    check("tree_14_23_567_coproduct", &["tree", "{1,4}{2,3}{5,6,7}", "--coproduct"], 0);
    check("tree_14_23_567_cuts", &["tree", "{1,4}{2,3}{5,6,7}", "--cuts"], 0);
    check("coproduct_tree_three_leaves", &["coproduct", "tree", "(()()())"], 0);
    check("tree_json", &["--json", "tree", "{1,3}{2}{4,5}"], 0);
}

#[test]
fn verification_suites() {
    check("verify_coassoc_5", &["verify", "coassoc", "--max-degree", "5"], 0);
    check("verify_keyrell_5", &["verify", "keyrell", "--max-degree", "5"], 0);
    // The tree check fails from n = 5 on; the report names the counterexamples.
    check("verify_tree_consistency_6", &["verify", "tree-consistency", "--max-degree", "6"], 1);
}

#[test]
fn error_codes() {
    let usage = run(["nc-hopf", "enumerate", "nc"]);
    assert_eq!(usage.code, 2);
    assert!(usage.stderr.contains("--n"));
    assert_eq!(run(["nc-hopf", "frobnicate"]).code, 2);
    assert_eq!(run(["nc-hopf", "enumerate", "nc", "--n", "3", "--bogus"]).code, 2);
    let domain = run(["nc-hopf", "moebius", "nc", "{1,3}{2,4}", "{1,2,3,4}"]);
    assert_eq!(domain.code, 1);
    assert!(domain.stderr.contains("non-crossing"));
    assert_eq!(run(["nc-hopf", "moebius", "set", "{1,2}", "{1}{2}"]).code, 1);
    assert_eq!(run(["nc-hopf", "enumerate", "nc", "--n", "20"]).code, 1);
    assert_eq!(run(["nc-hopf", "coproduct", "word", "a.b", "--alphabet", "a"]).code, 1);
    assert_eq!(run(["nc-hopf", "coproduct", "tree", "(()",]).code, 1);
    assert_eq!(run(["nc-hopf", "--help"]).code, 0);
}

#[test]
fn file_input() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("table.json");
    std::fs::write(&p, r#"{"alphabet":["a","b"],"truncation":2,"values":{"a":"1","b":"0","a.a":"2","a.b":"1/2","b.a":"1/2","b.b":"1"}}"#).unwrap();
    let out = run(["nc-hopf", "transform", "multi", "--direction", "m2k", "--in", p.to_str().unwrap()]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.contains("a.a = 1\n"));
    assert!(out.stdout.contains("a.b = 1/2\n"));
    let back = run(["nc-hopf", "--json", "transform", "multi", "--direction", "k2m", "--in", p.to_str().unwrap()]);
    assert_eq!(back.code, 0);
    assert!(back.stdout.starts_with("{\"alphabet\":[\"a\",\"b\"]"));

    let q = dir.path().join("partition.txt");
    std::fs::write(&q, "{1,4}{2,3}\n").unwrap();
    let direct = run(["nc-hopf", "coproduct", "nc", "{1,4}{2,3}"]);
    assert_eq!(run(["nc-hopf", "coproduct", "nc", "--in", q.to_str().unwrap()]), direct);
}

#[test]
fn environment_fallbacks() {
    let bin = env!("CARGO_BIN_EXE_nc-hopf");
    let out = Command::new(bin)
        .args(["transform", "free", "--direction", "k2m", "--symbolic"])
        .env("NCHOPF_TRUNCATION", "3")
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 3);
    let capped =
        Command::new(bin).args(["enumerate", "nc", "--n", "6", "--count"]).env("NCHOPF_MAX_N", "5").output().unwrap();
    assert_eq!(capped.status.code(), Some(1));
    let raised =
        Command::new(bin).args(["enumerate", "nc", "--n", "6", "--count"]).env("NCHOPF_MAX_N", "7").output().unwrap();
    assert_eq!(String::from_utf8(raised.stdout).unwrap(), "132\n");
}
