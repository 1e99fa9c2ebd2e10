mod common;

use common::{env, path, term, ty};
use pdot_syntax::{Def, Path, Stable, Type};
use pdot_typing::*;

fn synth_ok(g: &Env, t: &str) -> Typed {
    match synth(g, &term(t), DEFAULT_FUEL) {
        Judgement::Yes(r) => {
            replay(g, &r.deriv).unwrap();
            r
        }
        Judgement::No(e) => panic!("{t}: {} {}", e.rule, e.message),
        Judgement::Unknown => panic!("{t}: unknown"),
    }
}

#[test]
fn variable_lookup() {
    let g = env(&[("x", "{a: Top}")]);
    let r = synth_ok(&g, "x");
    assert_eq!(r.ty, ty("{a: Top}"));
    assert!(check(&g, &term("x"), &ty("{a: Top}"), DEFAULT_FUEL).is_yes());
    let e = synth(&g, &term("y"), DEFAULT_FUEL);
    assert!(e.is_no());
}

#[test]
fn nested_object_identity() {
    let r = synth_ok(&Env::new(), "nu(x => a = nu(y => b = y.b))");
    assert_eq!(r.ty, ty("mu(x) {a: mu(y) {b: y.b.type}}"));
    let counts = r.deriv.rule_counts();
    for rule in ["{}-I", "Def-New", "Def-Path"] {
        assert!(counts.contains_key(rule), "{rule}: {}", r.deriv.render());
    }
}

#[test]
fn field_introduction_through_an_alias() {
    let g = env(&[("q", "{c: Top}"), ("p", "{a: q.type}")]);
    let d = match check(&g, &term("p"), &ty("{a: {c: Top}}"), DEFAULT_FUEL) {
        Judgement::Yes(d) => d,
        other => panic!("{}", other.verdict()),
    };
    replay(&g, &d).unwrap();
    let counts = d.rule_counts();
    for rule in ["Fld-I", "Sngl-Trans", "Fld-E"] {
        assert!(counts.contains_key(rule), "{rule}: {}", d.render());
    }
}

#[test]
fn application_substitutes_the_argument() {
    let g = env(&[("f", "all(y: {A: Bot .. Top}) y.A"), ("t", "mu(t) {A: Top .. Top}")]);
    assert_eq!(synth_ok(&g, "f t").ty, ty("t.A"));
    let g = env(&[("f", "all(y: {A: Bot .. Top}) y.A"), ("t", "{a: Top}")]);
    let e = synth(&g, &term("f t"), DEFAULT_FUEL);
    assert!(e.is_no(), "{}", e.verdict());
}

#[test]
fn lambda_and_check_against_wider_parameter() {
    let r = synth_ok(&Env::new(), "lam(x: Top) x");
    assert_eq!(r.ty, ty("all(x: Top) Top"));
    let d = check(&Env::new(), &term("lam(x: Top) x"), &ty("all(y: {a: Top}) Top"), DEFAULT_FUEL);
    assert!(d.is_yes());
}

#[test]
fn let_requires_the_variable_not_to_escape() {
    let e = synth(&Env::new(), &term("let x = nu(x => A = Top) in lam(y: x.A) y"), DEFAULT_FUEL);
    match e {
        Judgement::No(err) => assert_eq!(err.rule, "Let"),
        other => panic!("{}", other.verdict()),
    }
    synth_ok(&Env::new(), "let x = nu(x => A = Top) in [all(y: Top) Top] lam(y: x.A) y");
}

#[test]
fn let_avoids_the_bound_name_when_possible() {
    let r = synth_ok(&Env::new(), "let x = nu(x => a = x) in x.a");
    assert_eq!(r.ty, ty("mu(x) {a: x.type}"));
}

#[test]
fn type_member_definitions_need_equal_bounds() {
    let g = Env::new();
    let this = Path::var("self");
    let defs = vec![Def::ty("A", Type::Top)];
    assert!(check_defs(&g, &this, &defs, &ty("{A: Top .. Top}"), DEFAULT_FUEL).is_yes());
    let e = check_defs(&g, &this, &defs, &ty("{A: Bot .. Top}"), DEFAULT_FUEL);
    match e {
        Judgement::No(err) => assert_eq!(err.rule, "Def-Typ"),
        other => panic!("{}", other.verdict()),
    }
}

#[test]
fn path_definitions_need_a_singleton_declaration() {
    let g = env(&[("q", "{c: Top}"), ("self", "Top")]);
    let this = path("self");
    let defs = vec![Def::field("a", Stable::Path(path("q")))];
    let d = check_defs(&g, &this, &defs, &ty("{a: q.type}"), DEFAULT_FUEL);
    assert_eq!(d.yes().unwrap().rule.name(), "Def-Path");
    let e = check_defs(&g, &this, &defs, &ty("{a: {c: Top}}"), DEFAULT_FUEL);
    match e {
        Judgement::No(err) => assert_eq!(err.rule, "Def-Path"),
        other => panic!("{}", other.verdict()),
    }
}

#[test]
fn function_and_object_definitions() {
    let g = env(&[("self", "Top")]);
    let this = path("self");
    let lam = match term("lam(y: Top) y") {
        pdot_syntax::Term::Stable(s) => s,
        _ => unreachable!(),
    };
    let defs = vec![Def::field("f", lam)];
    let d = check_defs(&g, &this, &defs, &ty("{f: all(y: Top) Top}"), DEFAULT_FUEL);
    assert_eq!(d.yes().unwrap().rule.name(), "Def-All");
    assert!(check_defs(&g, &this, &defs, &ty("{f: {a: Top}}"), DEFAULT_FUEL).is_no());

    let obj = match term("nu(z => A = Top)") {
        pdot_syntax::Term::Stable(s) => s,
        _ => unreachable!(),
    };
    let defs = vec![Def::field("o", obj)];
    let d = check_defs(&g, &this, &defs, &ty("{o: mu(z) {A: Top .. Top}}"), DEFAULT_FUEL);
    assert_eq!(d.yes().unwrap().rule.name(), "Def-New");
    assert!(check_defs(&g, &this, &defs, &ty("{o: mu(z) {A: Bot .. Top}}"), DEFAULT_FUEL).is_no());
}

#[test]
fn missing_and_duplicate_members() {
    let g = env(&[("self", "Top")]);
    let this = path("self");
    let defs = vec![Def::ty("A", Type::Top)];
    assert!(check_defs(&g, &this, &defs, &ty("{A: Top .. Top} /\\ {B: Top .. Top}"), DEFAULT_FUEL).is_no());
    assert!(check_defs(&g, &this, &defs, &Type::Top, DEFAULT_FUEL).is_no());
    let two = vec![Def::ty("A", Type::Top), Def::ty("B", Type::Bot)];
    let d = check_defs(&g, &this, &two, &ty("{A: Top .. Top} /\\ {B: Bot .. Bot}"), DEFAULT_FUEL);
    assert_eq!(d.yes().unwrap().rule.name(), "AndDef-I");
}

#[test]
fn out_of_fuel_is_unknown_not_no() {
    let program = common::corpus("list_nil_head.pdot");
    assert!(typecheck(&program, 3).is_unknown());
    assert!(typecheck(&program, DEFAULT_FUEL).is_yes());
}

#[test]
fn cyclic_paths_only_get_singleton_or_top_types() {
    let g = env(&[("x", "mu(x) {a: x.a.type}")]);
    let facts = Checker::new(DEFAULT_FUEL).path_facts(&g, &path("x.a")).yes().unwrap();
    assert!(!facts.is_empty());
    for f in facts {
        assert!(matches!(f.ty, Type::Sngl(_) | Type::Top), "{:?}", f.ty);
    }
    for t in ["{b: Top}", "all(y: Top) Top", "Bot", "{A: Bot .. Top}"] {
        assert!(!check(&g, &term("x.a"), &ty(t), DEFAULT_FUEL).is_yes(), "{t}");
    }
}
