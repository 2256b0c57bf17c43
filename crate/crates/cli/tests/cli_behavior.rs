//! Exercises the compiled binary the way a user would: the exit-code
//! contract, seed precedence, reference resolution through the flags, and
//! error handling for malformed invocations.

use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    format!("{}/fixtures/{}.wb", env!("CARGO_MANIFEST_DIR"), name)
}

fn run_with(args: &[&str], env_seed: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_cotilt"));
    cmd.args(args).env_remove("COTILT_SEED");
    if let Some(s) = env_seed {
        cmd.env("COTILT_SEED", s);
    }
    cmd.output().expect("binary spawns")
}

fn run(args: &[&str]) -> Output {
    run_with(args, None)
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("unparseable report ({e}): {}", String::from_utf8_lossy(&out.stdout))
    })
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn a_false_verdict_is_still_a_successful_run() {
    let out = run(&["tensorly-faithful", "--input", &fixture("ka3_f2"), "--json"]);
    assert_eq!(code(&out), 0);
    let rep = json_of(&out);
    assert_eq!(rep["faithful"]["value"], Value::Bool(false));
    assert!(rep["faithful"]["witness"]["simple"].is_number());
}

#[test]
fn an_unterminated_dimension_search_exits_inconclusive() {
    // The simple module over the dual numbers has infinite projective
    // dimension, so the search can only report a lower bound.
    let out = run(&["pd", "--module", "S(*)", "--input", &fixture("dualnum_f2"), "--json"]);
    assert_eq!(code(&out), 2);
    let rep = json_of(&out);
    let v = rep["pd"]["value"].as_str().expect("lower bound renders as a string");
    assert!(v.starts_with(">="), "{v}");
    assert!(rep["pd"]["status"].as_str().unwrap().starts_with("up_to_bound:"));
}

#[test]
fn input_problems_exit_three() {
    let missing = run(&["pd", "--module", "R", "--input", "/no/such/file.wb"]);
    assert_eq!(code(&missing), 3);
    assert!(String::from_utf8_lossy(&missing.stderr).contains("error"));

    let bad_ref = run(&["pd", "--module", "Nope", "--input", &fixture("ka3_f2")]);
    assert_eq!(code(&bad_ref), 3);

    let bad_theorem =
        run(&["verify", "--theorem", "T9.9", "--input", &fixture("dualnum_f2")]);
    assert_eq!(code(&bad_theorem), 3);

    let bad_flag = run(&["pd", "--nonsense"]);
    assert_eq!(code(&bad_flag), 3);

    let no_subcommand = run(&[]);
    assert_eq!(code(&no_subcommand), 3);
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(code(&run(&["--help"])), 0);
    assert_eq!(code(&run(&["--version"])), 0);
    assert_eq!(code(&run(&["verify", "--help"])), 0);
}

#[test]
fn explicit_seed_beats_the_environment() {
    let args =
        ["verify", "--theorem", "L2.6", "--input", &fixture("dualnum_f2"), "--catalog", "depth=2,extensions=4", "--json"];
    let mut with_flag = args.to_vec();
    with_flag.extend(["--seed", "1"]);
    let flag_only = run(&with_flag);
    let flag_and_env = run_with(&with_flag, Some("17"));
    assert_eq!(code(&flag_only), 0);
    assert_eq!(flag_only.stdout, flag_and_env.stdout);

    let mut seed17 = args.to_vec();
    seed17.extend(["--seed", "17"]);
    let env_only = run_with(&args, Some("17"));
    assert_eq!(run(&seed17).stdout, env_only.stdout);
}

#[test]
fn a_garbage_environment_seed_is_an_input_error() {
    let args = ["cotilting", "--input", &fixture("dualnum_f2")];
    assert_eq!(code(&run_with(&args, Some("squid"))), 3);
    // An explicit flag makes the environment irrelevant.
    let mut with_flag = args.to_vec();
    with_flag.extend(["--seed", "1"]);
    assert_eq!(code(&run_with(&with_flag, Some("squid"))), 0);
}

#[test]
fn ext_and_tor_agree_on_the_line_quiver() {
    // The arrow from vertex 1 to vertex 2 gives right modules a
    // one-dimensional Ext^1(S(2), S(1)), and the tensor route must
    // reproduce it degree by degree.
    let base = ["--input", &fixture("ka3_q"), "--bound", "4", "--json"];
    let mut ext = vec!["ext", "--module", "S(2)", "--against", "S(1)"];
    ext.extend(base);
    let mut tor = vec!["tor", "--module", "S(2)", "--against", "S(1)"];
    tor.extend(base);
    let ext_out = run(&ext);
    let tor_out = run(&tor);
    assert_eq!(code(&ext_out), 0);
    let dims =
        |o: &Output| json_of(o)["dims"].as_array().expect("dims array").to_vec();
    assert_eq!(dims(&ext_out), vec![0, 1, 0, 0, 0]);
    assert_eq!(dims(&ext_out), dims(&tor_out));
}

#[test]
fn bimodule_names_resolve_in_module_positions() {
    // C is declared as a bimodule over the sum P1 + P3 + S3; dimension
    // flags accept the name and act on the underlying module.
    let out = run(&["id", "--module", "C", "--input", &fixture("ka3_f2"), "--json"]);
    assert_eq!(code(&out), 0);
    let rep = json_of(&out);
    assert_eq!(rep["module"], Value::String("C".into()));
    assert_eq!(rep["id"]["value"], Value::from(1));
}

#[test]
fn reports_are_byte_stable_across_reruns() {
    let args = ["gorenstein-profile", "--input", &fixture("gamma_a2_f2"), "--json"];
    let first = run(&args);
    let second = run(&args);
    assert_eq!(code(&first), 0);
    assert_eq!(first.stdout, second.stdout);
}
