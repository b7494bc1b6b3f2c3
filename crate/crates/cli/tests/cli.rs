use apery_series::{parse_spec, SeriesSpec};
use serde_json::Value;
use std::process::{Command, Output};

fn apery(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_apery")).args(args).output().expect("binary runs")
}

fn code(args: &[&str]) -> i32 {
    apery(args).status.code().expect("exit code")
}

fn json(args: &[&str]) -> Value {
    let out = apery(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn re(v: &Value) -> f64 {
    v["value"]["re"].as_str().expect("decimal string").parse().unwrap()
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["eval", "o+:2 >= 0", "--digits", "20"]), 0);
    assert_eq!(code(&["eval", "q:2 > 0"]), 2);
    assert_eq!(code(&["eval", "o+:2 >="]), 2);
    assert_eq!(code(&["eval", "n:1 > 0"]), 2);
    assert_eq!(code(&["eval", "o+:2 >= 0", "--digits", "5"]), 2);
    assert_eq!(code(&["eval", "o+:2 >= 0", "--x2", "one half"]), 2);
    assert_eq!(code(&["eval", "o+:2 >= 0", "--x2", "-1/4"]), 2);
    assert_eq!(code(&["eval", "o+:2 >= 0", "--bogus"]), 2);
    assert_eq!(code(&["catalog", "--name", "zeta(0)"]), 2);
    assert_eq!(code(&["selftest", "--filter", "no such criterion"]), 2);
    // valid input the engines cannot handle
    assert_eq!(code(&["eval", "o+:2 >= 0", "--x2", "1/4", "--engine", "sums", "--digits", "20"]), 3);
    assert_eq!(code(&["cmzv", "o+:2 >= 0", "--x2", "1/4", "--digits", "20"]), 3);
    assert_eq!(code(&["cmzv", "n:2 >= o+:1 >= o-:1 > 0", "--digits", "20"]), 3);
    // a check that runs and fails
    assert_eq!(code(&["verify", "o+:3 >= 0", "--relation", "pi^3; G", "--digits", "30"]), 1);
}

#[test]
fn parsed_stage_round_trips() {
    for (text, extra) in [("o+:2 >= 0", vec![]), ("e:2 > o+:1 >= o-:2 > 0", vec!["--x2", "3/7"]), ("o-:3 > e:1 > 0", vec!["--bsq"])] {
        let mut args = vec!["compile", text, "--stage", "parsed", "--json"];
        args.extend(extra.iter().copied());
        let out = apery(&args);
        assert!(out.status.success());
        let emitted = SeriesSpec::from_json(std::str::from_utf8(&out.stdout).unwrap().trim()).unwrap();
        let mut want = parse_spec(text).unwrap();
        if extra.contains(&"--bsq") {
            want = want.with_binom_power(2);
        }
        if extra.contains(&"3/7") {
            want = want.with_x2((3, 7).into());
        }
        assert_eq!(emitted, want);
        let again = SeriesSpec::from_json(&emitted.to_json()).unwrap();
        assert_eq!(again, emitted);
    }
}

#[test]
fn catalan_value_and_polylogarithm_list() {
    let v = json(&["eval", "o+:2 >= 0", "--stage", "cmzv", "--json"]);
    assert!(v["value"]["re"].as_str().unwrap().starts_with("1.83193118835443803010920702986476822154"));
    assert_eq!(v["value"]["im"], "0");
    assert_eq!(v["engine"], "march");
    assert_eq!(v["terms"], 1);
    assert!(v["est_error"].as_str().unwrap().parse::<f64>().unwrap() < 1e-38);
    // 2 Im(Li_{1,1}(i,-i) + Li_{1,1}(-i,-i)) = -i (A - conj A) + ...
    let mut got: Vec<(String, Vec<u64>, Vec<String>)> = v["cmzv"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| {
            let s = t["s"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect();
            let z = t["z"].as_array().unwrap().iter().map(|x| x.as_str().unwrap().to_string()).collect();
            (t["coeff"].as_str().unwrap().to_string(), s, z)
        })
        .collect();
    got.sort();
    let mut want: Vec<(String, Vec<u64>, Vec<String>)> = [("-i", ["i", "-i"]), ("i", ["-i", "i"]), ("-i", ["-i", "-i"]), ("i", ["i", "i"])]
        .iter()
        .map(|(c, z)| (c.to_string(), vec![1, 1], z.iter().map(|s| s.to_string()).collect()))
        .collect();
    want.sort();
    assert_eq!(got, want);
}

#[test]
fn alias_n_gives_seven_zeta3() {
    let v = json(&["eval", "e:2 > o+:1 >= 0", "--alias-n", "--json"]);
    assert!(v["value"]["re"].as_str().unwrap().starts_with("8.41439832211715999779816713058014993"));
    let plain = json(&["eval", "e:2 > o+:1 >= 0", "--json"]);
    assert!((4.0 * re(&plain) - re(&v)).abs() < 1e-12);
}

#[test]
fn algebraic_point() {
    let v = json(&["eval", "o+:2 >= 0", "--x2", "1/4", "--json", "--digits", "20"]);
    assert!((re(&v) - 1.063459833).abs() < 1e-8);
}

#[test]
fn squared_flag() {
    let v = json(&["eval", "o+:4 >= e:1 > 0", "--bsq", "--json", "--digits", "20"]);
    assert!((re(&v) - 0.04433915814).abs() < 1e-8);
}

#[test]
fn limit_mode_reports_its_ladder() {
    let v = json(&["eval", "n:2 >= o+:1 >= o-:1 > 0", "--json", "--digits", "20"]);
    assert!((re(&v) - 7.79861732643).abs() < 1e-8);
    assert!(v["limit"]["ladder"].as_array().is_some_and(|l| l.len() >= 3));
}

#[test]
fn verify_against_direct_summation() {
    let out = apery(&["verify", "o-:2 > o+:1 >= 0", "--x2", "1/3", "--json", "--digits", "30"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["agree"], true);
}

#[test]
fn verify_finds_a_relation() {
    let v = json(&["verify", "n:2 > o+:1 >= 0", "--relation", "zeta(3); G; pi^3", "--json", "--digits", "40"]);
    let rel = v["relation"].as_array().unwrap();
    assert_eq!(rel.len(), 1);
    assert_eq!(rel[0]["coeff"], "7");
    assert_eq!(rel[0]["constant"], "zeta(3)");
}

#[test]
fn stages_print() {
    let out = apery(&["compile", "e:2 > o+:1 >= 0"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "coefficient (1)\n(1) [f1] w1 w20 | w1\n");
    let v = json(&["compile", "n:2 >= o+:1 >= o-:1 > 0", "--stage", "normalized", "--json"]);
    assert_eq!(v["contains_divergent_piece"], true);
    let v = json(&["compile", "o+:2 >= 0", "--stage", "x-alphabet", "--json"]);
    assert_eq!(v["terms"].as_array().unwrap().len(), 1);
    let v = json(&["compile", "o-:2 > 0", "--stage", "omega", "--json"]);
    assert!(!v["parts"].as_array().unwrap().is_empty());
}

#[test]
fn catalog_lookup() {
    let v = json(&["catalog", "--name", "G", "--digits", "50", "--json"]);
    assert_eq!(v["value"], "0.91596559417721901505460351493238411077414937428167");
    let names = json(&["catalog", "--json"]);
    assert!(names.as_array().unwrap().iter().any(|n| n == "ImLi_{4,1}(i,-1)"));
}

#[test]
fn selftest_filter_and_summary() {
    let v = json(&["selftest", "--filter", "squared", "--json"]);
    assert_eq!(v["pass"], true);
    let ids: Vec<u64> = v["criteria"].as_array().unwrap().iter().map(|c| c["id"].as_u64().unwrap()).collect();
    assert_eq!(ids, [7]);
}
