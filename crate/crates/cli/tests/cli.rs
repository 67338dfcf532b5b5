use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn jacquet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jacquet")).args(args).output().expect("spawn jacquet")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn schema(name: &str) -> jsonschema::Validator {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("schema").join(name);
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    let v: Value = serde_json::from_str(&text).expect("schema is JSON");
    jsonschema::validator_for(&v).expect("schema compiles")
}

/// Runs with `--json`, asserts `expect_code` and schema validity, returns the document.
fn json_run(schema_file: &str, args: &[&str], expect_code: i32) -> Value {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let o = jacquet(&full);
    assert_eq!(code(&o), expect_code, "{args:?}: {}", stderr(&o));
    let doc: Value = serde_json::from_slice(&o.stdout).expect("stdout is JSON");
    let v = schema(schema_file);
    let errs: Vec<String> = v.iter_errors(&doc).map(|e| format!("{} at {}", e, e.instance_path)).collect();
    assert!(errs.is_empty(), "{args:?} violates {schema_file}: {errs:#?}");
    assert_eq!(doc["schema_version"], "1");
    doc
}

#[test]
fn m_star_json() {
    let d = json_run("sum.schema.json", &["m-star", "d([0,1;rho])"], 0);
    assert_eq!(d["command"], "m-star");
    assert_eq!(d["terms"].as_array().unwrap().len(), 3);
}

#[test]
fn mu_star_json() {
    let d = json_run("sum.schema.json", &["mu-star", "d([1,1;rho0]) |x| sigma"], 0);
    let lefts: Vec<&str> = d["terms"].as_array().unwrap().iter().map(|t| t["left"].as_str().unwrap()).collect();
    assert_eq!(lefts, ["1", "nu^-1 rho0", "nu^1 rho0"]);
}

#[test]
fn mu_star_gspin_profile() {
    json_run("sum.schema.json", &["--profile", "gspin", "mu-star", "nu^1/2 rho x nu^3/2 rho |x| sigma"], 0);
}

#[test]
fn aubert_factorwise_json() {
    let d = json_run("aubert.schema.json", &["aubert", "z([-2,-1;rho0]) |x| sigma"], 0);
    assert_eq!(d["method"], "factorwise");
    assert_eq!(d["hat"], "d([1,2;rho0]) |x| sigma");
}

#[test]
fn aubert_bruteforce_matches_factorwise() {
    let d = json_run("aubert.schema.json", &["aubert", "z([-2,-1;rho0]) |x| sigma", "--bruteforce"], 0);
    assert_eq!(d["method"], "bruteforce");
    assert_eq!(d["matches_factorwise"], true);
    assert_eq!(d["sign"], 1);
    assert_eq!(d["hat"], "d([1,2;rho0]) |x| sigma");
    let terms = d["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 1);
    assert_eq!(terms[0]["coeff"], 1);
}

#[test]
fn aubert_bruteforce_cuspidal_gspin() {
    let d = json_run("aubert.schema.json", &["--profile", "gspin", "aubert", "nu^1 rho0 x nu^1/2 rho |x| sigma", "--bruteforce"], 0);
    assert_eq!(d["matches_factorwise"], true);
}

#[test]
fn dps_same_two_factors_with_warning() {
    let args = ["dps", "--family", "so-odd", "--alpha", "2", "--beta", "1", "--a", "1", "--b", "2", "--x", "4", "--same"];
    let d = json_run("dps.schema.json", &args, 0);
    assert_eq!(d["verdict"], "reducible");
    assert_eq!(d["length"], 2);
    assert_eq!(d["factors"].as_array().unwrap().len(), 2);
    assert_eq!(d["normalized"]["beta"], "2");
    let mut full = vec!["--json"];
    full.extend_from_slice(&args);
    let o = jacquet(&full);
    assert!(stderr(&o).contains("warning: --same sets beta = alpha"), "{}", stderr(&o));
}

#[test]
fn dps_distinct_and_negative_flags() {
    let d = json_run("dps.schema.json", &["dps", "--alpha", "2", "--beta", "1", "--a", "-1", "--b", "2", "--x", "3"], 0);
    assert_eq!(d["params"]["a"], "-1");
    let d = json_run("dps.schema.json", &["dps", "--family", "gspin", "--alpha", "1/2", "--beta", "1/2", "--a", "1/2", "--b", "3/2", "--x", "1/2"], 0);
    assert_eq!(d["params"]["family"], "gspin-odd");
}

#[test]
fn verify_claims_json() {
    let d = json_run("verify.schema.json", &["verify"], 0);
    assert_eq!(d["summary"]["fail"], 0);
    assert!(d["grid"].is_null());
    let d = json_run("verify.schema.json", &["verify", "--claims", "beta0.block-once.1-2,gspin.separation"], 0);
    assert_eq!(d["claims"].as_array().unwrap().len(), 2);
}

#[test]
fn verify_default_grid_passes() {
    let d = json_run("verify.schema.json", &["verify", "--grid", "default"], 0);
    let g = &d["grid"];
    assert!(g["tuples"].as_u64().unwrap() > 20_000);
    assert!(g["failures"].as_array().unwrap().is_empty());
    assert!(g["errors"].as_array().unwrap().is_empty());
}

#[test]
fn verify_mutated_grid_fails_with_exit_2() {
    let d = json_run("verify.schema.json", &["verify", "--grid", "small", "--mutate"], 2);
    assert!(!d["grid"]["failures"].as_array().unwrap().is_empty());
    let o = jacquet(&["verify", "--grid", "small", "--mutate"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn usage_errors_exit_1() {
    for args in [
        &["bogus"][..],
        &["m-star"],
        &["m-star", "nu^1 tau"],
        &["m-star", "d([2,1;rho])"],
        &["m-star", "d([0,1;rho]"],
        &["m-star", "nu^1/3 rho"],
        &["dps", "--alpha", "2", "--a", "1", "--b", "2", "--x", "4"],
        &["dps", "--alpha", "2", "--beta", "1", "--a", "1", "--b", "2", "--x", "1"],
        &["dps", "--alpha", "0.5", "--beta", "1", "--a", "1", "--b", "2", "--x", "1"],
        &["--profile", "nope", "m-star", "1"],
        &["verify", "--claims", "no.such.claim"],
        &["verify", "--grid", "alpha=3..1"],
        &["verify", "--mutate"],
    ] {
        let o = jacquet(args);
        assert_eq!(code(&o), 1, "{args:?}: {}", stderr(&o));
        assert!(o.stdout.is_empty(), "{args:?} wrote to stdout");
    }
}

#[test]
fn parse_errors_carry_position() {
    let o = jacquet(&["m-star", "d([2,1;rho])"]);
    assert!(stderr(&o).contains("1:3"), "{}", stderr(&o));
    let o = jacquet(&["m-star", "nu^1 tau"]);
    assert!(stderr(&o).contains("1:6") && stderr(&o).contains("unknown symbol"), "{}", stderr(&o));
}

#[test]
fn help_and_version_exit_0() {
    assert_eq!(code(&jacquet(&["--help"])), 0);
    assert_eq!(code(&jacquet(&["--version"])), 0);
}

#[test]
fn config_file_is_loaded() {
    let dir = std::env::temp_dir().join(format!("jacquet-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("cast.conf");
    std::fs::write(
        &path,
        "family = sp-even\ngl.chi = self-dual\ng.pi.rank = 0\ng.pi.reducibility.chi = 1/2\n",
    )
    .unwrap();
    let p = path.to_str().unwrap();
    let d = json_run("sum.schema.json", &["--config", p, "mu-star", "nu^1/2 chi |x| pi"], 0);
    let rights: Vec<&str> = d["terms"].as_array().unwrap().iter().map(|t| t["right"].as_str().unwrap()).collect();
    assert!(rights.contains(&"nu^1/2 chi |x| pi"), "{rights:?}");
    // The built-in names are gone under this table.
    let o = jacquet(&["--config", p, "m-star", "nu^1 rho"]);
    assert_eq!(code(&o), 1);

    std::fs::write(&path, "family = sp-even\ng.pi.reducibility.chi = 1/2\n").unwrap();
    let o = jacquet(&["--config", p, "m-star", "1"]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("cast.conf"), "{}", stderr(&o));
    let o = jacquet(&["--config", dir.join("missing.conf").to_str().unwrap(), "m-star", "1"]);
    assert_eq!(code(&o), 1);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn text_output_goes_to_stdout() {
    let o = jacquet(&["aubert", "z([-2,-1;rho0]) |x| sigma", "--bruteforce"]);
    assert_eq!(code(&o), 0);
    let out = String::from_utf8(o.stdout).unwrap();
    assert!(out.contains("d([1,2;rho0]) |x| sigma"), "{out}");
    assert!(o.stderr.is_empty());
}
