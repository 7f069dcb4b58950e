use std::process::{Command, Output};

use krh_core::invariants::Report;

fn krh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_krh")).args(args).env_remove("KRH_MAX_DEGREE").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn fixture(rel: &str) -> String {
    format!("{}/../../fixtures/{rel}", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn moy_dim_of_gammahat() {
    let o = krh(&["moy-dim", "--graph", &fixture("graphs/gammahat.g"), "--n", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "q^-2 + 2 + q^2");
}

#[test]
fn unknot_invariants_n3() {
    let o = krh(&["invariants", "--pd", &fixture("links/unknot-1.pd"), "--n", "3", "--potential", "gornik", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let r = Report::from_json(&stdout(&o)).unwrap();
    assert_eq!((r.gmax, r.gmin, r.s_n.as_deref()), (Some(2), Some(-2), Some("0")));
    assert!(r.all_pass());
}

#[test]
fn trefoil_table_matches_khovanov() {
    let o = krh(&["homology", "--braid", "s1 s1 s1", "--n", "2", "--potential", "slN", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let r = Report::from_json(&stdout(&o)).unwrap();
    // Kh of the right-handed trefoil with the homological degree negated
    assert_eq!(r.dims, vec![(-3, 9, 1), (-2, 5, 1), (0, 1, 1), (0, 3, 1)]);
}

#[test]
fn json_round_trips_and_is_deterministic() {
    let args = ["invariants", "--pd", "hopf.pd", "--n", "2", "--json"];
    let a = krh(&args);
    let b = krh(&args);
    assert_eq!(a.stdout, b.stdout);
    let r = Report::from_json(&stdout(&a)).unwrap();
    assert_eq!(r.to_json().trim(), stdout(&a).trim());
    assert_eq!(r.s_n, None);
}

#[test]
fn exit_codes() {
    assert_eq!(krh(&["homology", "--pd", "X[1,2"]).status.code(), Some(1));
    assert_eq!(krh(&["homology", "--braid", "s0"]).status.code(), Some(1));
    assert_eq!(krh(&["homology", "--pd", "unknot.pd", "--n", "1"]).status.code(), Some(2));
    assert_eq!(krh(&["homology", "--pd", "unknot.pd", "--potential", "1,2"]).status.code(), Some(2));
    assert_eq!(krh(&["homology", "--pd", "missing.pd"]).status.code(), Some(2));
    assert_eq!(krh(&["homology"]).status.code(), Some(2));
    assert_eq!(krh(&["verify", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(krh(&["invariants", "--pd", "hopf.pd", "--potential", "slN", "--chi", "1"]).status.code(), Some(2));
    // the ceiling never drops below the degree the engine starts from
    assert_eq!(krh(&["homology", "--pd", "trefoil.pd", "--truncation", "2"]).status.code(), Some(0));
    // a slice surface the bound rules out
    assert_eq!(krh(&["invariants", "--braid", "s1 s1 s1", "--chi", "1"]).status.code(), Some(3));
}

#[test]
fn verify_suites() {
    for suite in ["chi-identities", "moy-consistency", "gornik"] {
        let o = krh(&["verify", "--suite", suite, "--n", "2", "--json"]);
        assert_eq!(o.status.code(), Some(0), "{suite}: {}", stdout(&o));
        let r = Report::from_json(&stdout(&o)).unwrap();
        assert!(!r.checks.is_empty() && r.all_pass());
    }
}

#[test]
fn custom_potential_and_states() {
    let o = krh(&["homology", "--pd", "unknot-0.pd", "--n", "2", "--potential", "0,-3,0", "--json"]);
    let r = Report::from_json(&stdout(&o)).unwrap();
    assert_eq!(r.potential, "x^3 - 3*x");
    assert_eq!(r.dims.iter().map(|d| d.2).sum::<usize>(), 2);
    let o = krh(&["states", "--graph", "theta.g", "--n", "3"]);
    assert!(stdout(&o).starts_with("6 admissible states"));
    let o = krh(&["states", "--pd", "hopf.pd", "--n", "3"]);
    assert!(stdout(&o).starts_with("9 Gornik states"));
}
