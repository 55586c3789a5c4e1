use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn sig_file(name: &str, text: &str) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn heisenberg_sig() -> PathBuf {
    sig_file("cli_w00010.json", r#"{"ell":[0,0,0,1,0],"generators":[["1"]]}"#)
}

fn super_sig() -> PathBuf {
    sig_file("cli_w00011.json", r#"{"ell":[0,0,0,1,1],"generators":[["1","0"]]}"#)
}

fn weyl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_weyl")).args(args).output().unwrap()
}

fn with_sig(sig: &Path, args: &[&str]) -> Output {
    let mut all = vec!["--sig", sig.to_str().unwrap()];
    all.extend_from_slice(args);
    weyl(&all)
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap().trim_end().to_string()
}

#[test]
fn validate_reports_signature() {
    let o = with_sig(&heisenberg_sig(), &["validate"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("ok:"));
}

#[test]
fn bracket_of_derivations_with_functions() {
    let o = with_sig(&heisenberg_sig(), &["bracket", "d1", "x[2]"]);
    assert_eq!(stdout(&o), "2*x[2]");
    let o = with_sig(&heisenberg_sig(), &["bracket", "x[1] d1", "x[-1] d1"]);
    assert_eq!(stdout(&o), "-2*d1");
}

#[test]
fn odd_product_reorders() {
    let o = with_sig(&super_sig(), &["eval", "q1 * s1"]);
    assert_eq!(stdout(&o), "1 - s1 q1");
}

#[test]
fn explicit_cocycle_values() {
    let o = with_sig(&heisenberg_sig(), &["cocycle", "phi0", "x[3]", "x[-3]"]);
    assert_eq!(stdout(&o), "3");
    let o = with_sig(&heisenberg_sig(), &["cocycle", "phi0", "x[2] d1", "x[-2] d1"]);
    assert_eq!(stdout(&o), "-1");
}

#[test]
fn p_functional_on_odd_factor() {
    let o = with_sig(&super_sig(), &["pfunc", "s1 q1"]);
    assert_eq!(stdout(&o), "1");
    let o = with_sig(&super_sig(), &["pfunc", "q1 s1"]);
    assert_eq!(stdout(&o), "-1");
}

#[test]
fn json_output_is_structured() {
    let o = with_sig(&heisenberg_sig(), &["--json", "bracket", "d1", "x[1]"]);
    assert_eq!(stdout(&o), r#"{"terms":[{"c":"1","alpha":["1"],"k":[0],"mu":[0]}]}"#);
}

#[test]
fn probe_reports_phi0_nontrivial() {
    let o = with_sig(&heisenberg_sig(), &["probe-trivial", "--cocycle", "phi0", "--mu-max", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("inconsistent"));
    let o = with_sig(&heisenberg_sig(), &["probe-trivial", "--cocycle", "zero"]);
    assert!(stdout(&o).starts_with("consistent"));
}

#[test]
fn normalize_coboundary_passes_check() {
    let h = heisenberg_sig();
    let table = sig_file(
        "cli_table.json",
        r#"{"entries":[{"monomial":{"alpha":["1"],"k":[0],"mu":[1]},"value":"2"},
                       {"monomial":{"alpha":["0"],"k":[0],"mu":[2]},"value":"-1/3"}]}"#,
    );
    let targets = sig_file("cli_targets.txt", "# sample monomials\nd1\nx[1] d1\nx[-2] d1^2\n");
    let spec = format!("coboundary:{}", table.display());
    let o = with_sig(&h, &["normalize", "--cocycle", &spec, "--targets", targets.to_str().unwrap(), "--check"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let out = stdout(&o);
    assert!(out.contains("f(d1) = "), "{out}");
    assert!(out.contains("0 violations"), "{out}");
}

#[test]
fn exit_codes_follow_error_kind() {
    assert_eq!(weyl(&["--help"]).status.code(), Some(0));
    assert_eq!(weyl(&["eval", "d1"]).status.code(), Some(1));
    assert_eq!(weyl(&["frobnicate"]).status.code(), Some(1));
    let h = heisenberg_sig();
    assert_eq!(with_sig(&h, &["eval", "d1 +"]).status.code(), Some(2));
    assert_eq!(with_sig(&h, &["eval", "d2"]).status.code(), Some(2));
    assert_eq!(with_sig(&h, &["eval", "x[1/2]"]).status.code(), Some(2));
    let bad = sig_file("cli_bad.json", r#"{"ell":[0,0,0,0,1],"generators":[]}"#);
    assert_eq!(with_sig(&bad, &["validate"]).status.code(), Some(3));
    // phi0 needs the (0,0,0,1,*) shape
    let other = sig_file("cli_w00020.json", r#"{"ell":[0,0,0,2,0],"generators":[["1","0"],["0","1"]]}"#);
    assert_eq!(with_sig(&other, &["cocycle", "phi0", "d1", "d2"]).status.code(), Some(4));
}

#[test]
fn selftest_output_is_deterministic() {
    let h = heisenberg_sig();
    let args = ["selftest", "--samples", "20", "--seed", "3"];
    let first = with_sig(&h, &args);
    let second = with_sig(&h, &args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
    assert!(!first.stdout.is_empty());
}
