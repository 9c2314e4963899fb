use std::process::{Command, Output};

fn dessins(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dessins")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn genus_claims_match_golden_file() {
    let o = dessins(&["claims", "run", "--filter", "genus-*", "--json", "-"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), include_str!("golden/genus.json"));
}

#[test]
fn report_is_byte_stable() {
    let args = ["claims", "run", "--filter", "pair-*", "--json", "-"];
    let a = dessins(&args);
    let b = dessins(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["claims"].as_array().unwrap().len(), 4);
}

#[test]
fn timing_adds_milliseconds() {
    let o = dessins(&["claims", "run", "--filter", "genus-267*", "--json", "-", "--timing"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["claims"][0]["ms"].is_u64());
}

#[test]
fn unknown_claim_is_a_usage_error() {
    let o = dessins(&["claims", "run", "--filter", "nonexistent"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn cap_overrun_exits_with_three() {
    let o = dessins(&["claims", "run", "--filter", "hurwitz-555-a7", "--enumeration-cap", "10"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).starts_with("FAIL hurwitz-555-a7"));
}

#[test]
fn bad_arguments_exit_with_two() {
    assert_eq!(dessins(&["bogus"]).status.code(), Some(2));
    assert_eq!(dessins(&["spherical", "classify", "--group", "q9", "--type", "2,3,7"]).status.code(), Some(2));
    assert_eq!(dessins(&["dessin", "--class", "9"]).status.code(), Some(2));
}

#[test]
fn dessin_of_first_real_class() {
    let o = dessins(&["dessin", "--class", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let dot = stdout(&o);
    assert!(dot.starts_with("graph \"real class 1\" {") && dot.ends_with("}\n"));
    assert_eq!(dot.matches(" -- ").count(), 7);
    assert_eq!(dot.matches("fillcolor=black").count(), 5);
    assert_eq!(dot.lines().filter(|l| l.trim_start().starts_with('w') && !l.contains("--")).count(), 3);
}

#[test]
fn dessin_to_file() {
    let dir = std::env::temp_dir().join(format!("dessins-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("d.dot");
    let o = dessins(&["dessin", "--class", "2", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(&path).unwrap().matches(" -- ").count(), 7);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn spherical_classify_555() {
    let o = dessins(&["spherical", "classify", "--group", "a7", "--type", "5,5,5"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.starts_with("systems 5040\nbraid orbits 1\nambient classes 1\n"), "{s}");
}

#[test]
fn twocrit_classify_degree_seven() {
    let o = dessins(&["twocrit", "classify", "--degree", "7", "--type0", "2,2,1,1,1", "--type1", "3,2,2"]);
    let s = stdout(&o);
    assert!(s.starts_with("classes 2 real 2\n"));
    assert_eq!(s.matches("group A7").count(), 2);
}

#[test]
fn belyi_build_sqrt2() {
    let o = dessins(&["belyi", "build", "--genus", "3", "--minpoly", "x^2-2"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("polynomial   {0, 1, 2, 4, 9, 16, 25, 36, oo}"));
    assert!(s.ends_with("audit ok\n"));
    let j = dessins(&["belyi", "build", "--genus", "3", "--minpoly", "x^2-2", "--json"]);
    assert_eq!(j.status.code(), Some(0));
    assert_eq!(dessins(&["belyi", "build", "--genus", "3", "--minpoly", "x^^2"]).status.code(), Some(2));
}

#[test]
fn surface_check_s5_example() {
    let o = dessins(&["surface", "check", "--pair", "s5-example"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("S1: genera (241, 505) free true"));
    assert!(s.contains("S2: e 192 chi 48 K^2 384"));
    assert!(s.contains("S1: 1 -> Pi_241 x Pi_505 -> pi_1(S) -> G -> 1, |G| = 2520"));
    assert!(s.contains("first systems: S7-conjugate false same braid orbit false same S7 class false"));
}

#[test]
fn surface_check_s3_example_exports_presentation() {
    let dir = std::env::temp_dir().join(format!("dessins-pres-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("p.txt");
    let o = dessins(&["surface", "check", "--pair", "s3-example", "--export", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("6 cosets, 25 generators, 78 relators"));
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("< ") && text.trim_end().ends_with(" >"));
    std::fs::remove_dir_all(dir).unwrap();
}
