//! End-to-end tests of the `catlevy` binary: exit codes, table contents
//! against independently computed values, and byte-determinism of stdout.

use std::io::Write;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_catlevy")).args(args).output().expect("binary runs")
}

fn fixture(name: &str) -> String {
    format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf-8 stderr")
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

// ---------------------------------------------------------------------------
// laws
// ---------------------------------------------------------------------------

#[test]
fn laws_pass_for_every_instance() {
    let out = run(&["laws", "--cases", "25"]);
    assert_eq!(exit_code(&out), 0, "{}", stderr(&out));
    let text = stdout(&out);
    for name in ["set", "vec", "veclin", "hilb", "prob", "qps-free", "mixvec"] {
        assert!(text.contains(&format!("coherence[{name}]")), "missing {name} in:\n{text}");
    }
    assert!(text.contains("need not be unique"), "mixvec note missing:\n{text}");
}

#[test]
fn laws_reject_an_unknown_instance() {
    let out = run(&["laws", "--instance", "bogus"]);
    assert_eq!(exit_code(&out), 2);
    assert!(stderr(&out).contains("unknown instance `bogus`"), "{}", stderr(&out));
}

#[test]
fn laws_emit_parseable_json() {
    let out = run(&["laws", "--instance", "prob", "--format", "json"]);
    assert_eq!(exit_code(&out), 0);
    let reports: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    assert_eq!(reports[0]["suite"], "coherence[prob]");
    assert_eq!(reports[0]["failures"].as_array().map(Vec::len), Some(0));
}

// ---------------------------------------------------------------------------
// levy
// ---------------------------------------------------------------------------

#[test]
fn walk_marginals_match_the_convolution_table() {
    let out = run(&["levy", &fixture("z2-walk.spec"), "--emit", "marginals"]);
    assert_eq!(exit_code(&out), 0, "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("t=2: P(0)=5/9, P(1)=4/9"), "{text}");
    assert!(text.contains("t=4: P(0)=41/81, P(1)=40/81"), "{text}");
}

#[test]
fn stdout_is_byte_deterministic() {
    let args = ["levy", &fixture("z2-walk.spec"), "--emit", "increments"];
    let first = run(&args);
    let second = run(&args);
    assert_eq!(exit_code(&first), 0);
    assert_eq!(first.stdout, second.stdout);
    assert!(!first.stdout.is_empty());
}

#[test]
fn walk_increments_are_stationary() {
    let out = run(&["levy", &fixture("z2-walk.spec"), "--emit", "increments"]);
    let text = stdout(&out);
    // j(s, t) depends only on t - s:
    assert!(text.contains("j(1,3): P(0)=5/9, P(1)=4/9"), "{text}");
    assert!(text.contains("j(0,2): P(0)=5/9, P(1)=4/9"), "{text}");
    assert!(text.contains("j(3,3): P(0)=1, P(1)=0"), "{text}");
}

#[test]
fn walk_verification_passes() {
    let out = run(&["levy", &fixture("z2-walk.spec"), "--emit", "verify"]);
    assert_eq!(exit_code(&out), 0, "{}\n{}", stdout(&out), stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("levy[prob/nat]: ok"), "{text}");
    assert!(text.contains("interval[prob/nat]: ok"), "{text}");
}

#[test]
fn horizon_flag_overrides_the_spec() {
    let out = run(&["levy", &fixture("z2-walk.spec"), "--emit", "marginals", "--horizon", "2"]);
    let text = stdout(&out);
    assert!(text.contains("horizon=2"), "{text}");
    assert!(text.contains("t=2:"), "{text}");
    assert!(!text.contains("t=3:"), "{text}");
}

#[test]
fn tensor_state_marginals_follow_the_fourier_transform() {
    let out = run(&["levy", &fixture("z2-walk-tensor.spec"), "--emit", "marginals"]);
    assert_eq!(exit_code(&out), 0, "{}", stderr(&out));
    let text = stdout(&out);
    // E[g^k] at time t is (1/3)^t for odd k and 1 for even k.
    assert!(text.contains("t=2: phi(1)=1, phi(g)=1/9, phi(g g)=1, phi(g g g)=1/9"), "{text}");
}

#[test]
fn free_increment_variances_add() {
    let out = run(&["levy", &fixture("free-brownian.spec"), "--emit", "increments"]);
    assert_eq!(exit_code(&out), 0, "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("j(0,2): phi(1)=1, phi(x)=0, phi(x x)=2, phi(x x x)=0"), "{text}");
    assert!(text.contains("j(1,3): phi(1)=1, phi(x)=0, phi(x x)=2"), "{text}");
}

#[test]
fn state_space_verification_passes_and_reports_json() {
    let out = run(&[
        "levy",
        &fixture("free-brownian.spec"),
        "--emit",
        "verify",
        "--format",
        "json",
    ]);
    assert_eq!(exit_code(&out), 0, "{}", stderr(&out));
    let reports: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    assert_eq!(reports.as_array().map(Vec::len), Some(2));
    assert_eq!(reports[0]["failures"].as_array().map(Vec::len), Some(0));
    assert_eq!(reports[1]["failures"].as_array().map(Vec::len), Some(0));
}

#[test]
fn a_non_semigroup_spec_fails_with_the_offending_times() {
    let out = run(&["levy", &fixture("broken-walk.spec"), "--emit", "marginals"]);
    assert_eq!(exit_code(&out), 1);
    assert!(stderr(&out).contains("(1, 1)"), "{}", stderr(&out));
}

#[test]
fn parse_errors_carry_line_numbers_and_exit_2() {
    let mut file = tempfile::NamedTempFile::new().expect("temp file");
    write!(file, "[monoid]\nkind = nat\nhorizon = oops\n").expect("write spec");
    let out = run(&["levy", file.path().to_str().expect("utf-8 path")]);
    assert_eq!(exit_code(&out), 2);
    let err = stderr(&out);
    assert!(err.contains("line 3"), "{err}");
}

#[test]
fn a_one_step_spec_without_a_horizon_needs_the_flag() {
    let mut file = tempfile::NamedTempFile::new().expect("temp file");
    write!(
        file,
        "[monoid]\nkind = nat\n\n[carrier]\ninstance = prob\norder = 2\n\n\
         [delta]\nrule = cyclic\n\n[phi]\nmu = 1/2 1/2\n"
    )
    .expect("write spec");
    let path = file.path().to_str().expect("utf-8 path").to_string();
    let out = run(&["levy", &path]);
    assert_eq!(exit_code(&out), 2);
    assert!(stderr(&out).contains("horizon"), "{}", stderr(&out));

    let out = run(&["levy", &path, "--emit", "marginals", "--horizon", "1"]);
    assert_eq!(exit_code(&out), 0, "{}", stderr(&out));
    assert!(stdout(&out).contains("t=1: P(0)=1/2, P(1)=1/2"), "{}", stdout(&out));
}

// ---------------------------------------------------------------------------
// uniprod
// ---------------------------------------------------------------------------

fn uniprod_rows(extra: &[&str]) -> String {
    let mut args = vec![
        "uniprod".to_string(),
        fixture("phi-a.fn"),
        fixture("phi-b.fn"),
        fixture("words.txt"),
    ];
    args.extend(extra.iter().map(|s| s.to_string()));
    let arg_refs: Vec<&str> = args.iter().map(String::as_str).collect();
    let out = run(&arg_refs);
    assert_eq!(exit_code(&out), 0, "{}", stderr(&out));
    stdout(&out)
}

#[test]
fn the_empty_word_evaluates_to_one_under_every_product() {
    let text = uniprod_rows(&[]);
    assert!(text.contains("1: tensor=1, free=1, boolean=1, monotone=1"), "{text}");
}

#[test]
fn single_color_words_agree_across_products() {
    let text = uniprod_rows(&[]);
    assert!(text.contains("a: tensor=1/2, free=1/2, boolean=1/2, monotone=1/2"), "{text}");
    assert!(text.contains("b: tensor=1/3, free=1/3, boolean=1/3, monotone=1/3"), "{text}");
}

#[test]
fn alternating_words_separate_the_products() {
    let text = uniprod_rows(&[]);
    // phi(abab) under the free product is
    //   phi(aa) phi(b)^2 + phi(a)^2 phi(bb) - phi(a)^2 phi(b)^2,
    // here 1/3·1/9 + 1/4·1/2 - 1/4·1/9 = 29/216.
    assert!(text.contains("a b a b: tensor=1/6, free=29/216, boolean=1/36, monotone=1/27"), "{text}");
    // boolean breaks the a-block on "a b a" while the other three keep it:
    assert!(text.contains("a b a: tensor=1/9, free=1/9, boolean=1/12, monotone=1/9"), "{text}");
}

#[test]
fn a_single_product_can_be_selected() {
    let text = uniprod_rows(&["--product", "boolean"]);
    assert!(text.contains("a b a: boolean=1/12"), "{text}");
    assert!(!text.contains("free="), "{text}");
}

#[test]
fn degree_overflow_names_the_word_and_exits_1() {
    let mut file = tempfile::NamedTempFile::new().expect("temp file");
    write!(file, "a a a a a\n").expect("write words");
    let out = run(&[
        "uniprod",
        &fixture("phi-a.fn"),
        &fixture("phi-b.fn"),
        file.path().to_str().expect("utf-8 path"),
    ]);
    assert_eq!(exit_code(&out), 1);
    assert!(stderr(&out).contains("degree"), "{}", stderr(&out));
}

#[test]
fn shared_generator_names_are_rejected() {
    let out = run(&[
        "uniprod",
        &fixture("phi-a.fn"),
        &fixture("phi-a.fn"),
        &fixture("words.txt"),
    ]);
    assert_eq!(exit_code(&out), 2);
    assert!(stderr(&out).contains("both functionals"), "{}", stderr(&out));
}
