mod common;

use common::{path, stable, value};
use pdot_eval::*;
use pdot_parser::{pretty_path, pretty_stable};
use pdot_syntax::Stable;

/// y -> nu(y'){b = nu(y''){c = lam(z: Top) z}},  x -> nu(x){a = y.b}
fn worked_store() -> Store {
    Store::new()
        .extend("y", value("nu(y' => b = nu(y'' => c: all(z: Top) Top = lam(z: Top) z))"))
        .extend("x", value("nu(x => a = y.b)"))
}

#[test]
fn variable_step_reads_the_store() {
    let s = worked_store();
    let d = lookup_step_derivation(&s, &path("x")).unwrap();
    assert_eq!(d.rule, LookupRule::Var);
    assert_eq!(d.to, Stable::Val(s.get("x").unwrap().clone()));
    assert_eq!(lookup_step(&s, &stable("z")), None);
}

#[test]
fn value_step_substitutes_the_prefix_for_self() {
    let s = worked_store();
    assert_eq!(lookup_step(&s, &stable("x.a")), Some(stable("y.b")));
    let s = Store::new().extend("o", value("nu(self => a = self.b; b = nu(z => c = self))"));
    assert_eq!(lookup_step(&s, &stable("o.a")), Some(stable("o.b")));
    // `self` inside the inner object is the outer one.
    assert_eq!(lookup_step(&s, &stable("o.b.c")), Some(stable("o")));
}

#[test]
fn no_step_selects_from_a_function_or_a_missing_label() {
    let s = Store::new().extend("f", value("lam(z: Top) z")).extend("o", value("nu(o => A = Top)"));
    assert_eq!(lookup_step(&s, &stable("f.a")), None);
    assert_eq!(lookup_step(&s, &stable("o.a")), None);
    assert_eq!(lookup_step_derivation(&s, &path("o").sel("A")), None);
    assert_eq!(lookup_step(&s, &stable("lam(z: Top) z")), None);
}

#[test]
fn worked_lookup_reproduces_every_table_row() {
    let s = worked_store();
    let (steps, outcome) = lookup_trace(&s, &stable("x.a.c"), DEFAULT_LOOKUP_FUEL);
    assert_eq!(outcome, LookupOutcome::Value(value("lam(z: Top) z")));
    let rows: Vec<(String, String, &str)> = steps
        .iter()
        .flat_map(|d| d.judgements())
        .map(|(p, s, r)| (pretty_path(p), pretty_stable(s), r.name()))
        .collect();
    let yv = pretty_stable(&Stable::Val(s.get("y").unwrap().clone()));
    let xv = pretty_stable(&Stable::Val(s.get("x").unwrap().clone()));
    let inner = pretty_stable(&stable("nu(y'' => c: all(z: Top) Top = lam(z: Top) z)"));
    let lam = "lam(z: Top) z".to_string();
    let expected = vec![
        ("x".to_string(), xv, "Lookup-Step-Var"),
        ("x.a".to_string(), "y.b".to_string(), "Lookup-Step-Val"),
        ("x.a.c".to_string(), "y.b.c".to_string(), "Lookup-Step-Path"),
        ("y".to_string(), yv, "Lookup-Step-Var"),
        ("y.b".to_string(), inner, "Lookup-Step-Val"),
        ("y.b.c".to_string(), lam, "Lookup-Step-Val"),
    ];
    assert_eq!(rows, expected);
    // Two transitive steps: x.a.c ~> y.b.c ~> the function.
    assert_eq!(steps.len(), 2);
}

#[test]
fn self_referential_field_is_a_cycle() {
    let s = Store::new().extend("x", value("nu(x => a = x.a)"));
    assert_eq!(lookup_star(&s, &stable("x.a"), DEFAULT_LOOKUP_FUEL), LookupOutcome::Cycle(vec![path("x.a")]));
    let s = Store::new().extend("x", value("nu(x => a = x.b; b = x.a)"));
    assert_eq!(lookup_star(&s, &stable("x.a"), DEFAULT_LOOKUP_FUEL), LookupOutcome::Cycle(vec![path("x.a"), path("x.b")]));
    assert_eq!(lookup_star(&s, &stable("x.b.c"), DEFAULT_LOOKUP_FUEL), LookupOutcome::Cycle(vec![path("x.b.c"), path("x.a.c")]));
}

#[test]
fn values_look_up_to_themselves() {
    let v = value("lam(z: Top) z");
    let (steps, outcome) = lookup_trace(&Store::new(), &Stable::Val(v.clone()), 0);
    assert!(steps.is_empty());
    assert_eq!(outcome, LookupOutcome::Value(v));
}

#[test]
fn dead_ends_and_fuel() {
    let s = worked_store();
    assert_eq!(lookup_star(&s, &stable("x.b"), 10), LookupOutcome::Stuck(path("x.b")));
    assert_eq!(lookup_star(&s, &stable("x.a.c"), 1), LookupOutcome::FuelOut);
    assert!(matches!(lookup_star(&s, &stable("x.a.c"), 2), LookupOutcome::Value(_)));
    // Growing paths never repeat, so only fuel stops them.
    let s = Store::new().extend("x", value("nu(x => a = x.a.a)"));
    assert_eq!(lookup_star(&s, &stable("x.a"), 50), LookupOutcome::FuelOut);
}
