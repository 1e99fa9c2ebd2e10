mod common;

use common::{corpus, path, stable, value};
use pdot_eval::*;
use pdot_parser::parse_open_term;
use pdot_syntax::{Stable, Term};

fn at(store: Store, term: &str) -> Configuration {
    Configuration { store, term: parse_open_term(term).unwrap() }
}

fn stepped(c: &Configuration) -> Stepped {
    step(c, DEFAULT_LOOKUP_FUEL).unwrap().expect("a step")
}

#[test]
fn let_path_substitutes() {
    let s = stepped(&at(Store::new(), "let x = y.a in x.b"));
    assert_eq!(s.rules, vec![Rule::LetPath]);
    assert_eq!(s.config.term, Term::Stable(stable("y.a.b")));
    assert!(s.config.store.is_empty());
}

#[test]
fn let_value_allocates_fresh_names() {
    let c = at(Store::new(), "let x = nu(x => A = Top) in let x = nu(x => A = Bot) in x");
    let s1 = stepped(&c);
    assert_eq!(s1.rules, vec![Rule::LetValue]);
    assert!(s1.config.store.contains("x"));
    let s2 = stepped(&s1.config);
    let names: Vec<&str> = s2.config.store.bindings().into_iter().map(|(x, _)| x).collect();
    assert_eq!(names, ["x", "x$1"]);
    assert_eq!(s2.config.term, Term::Stable(stable("x$1")));
}

#[test]
fn apply_opens_the_body_with_the_argument() {
    let store = Store::new().extend("f", value("lam(z: Top) let w = z in w.a"));
    let s = stepped(&at(store, "f g"));
    assert_eq!(s.rules, vec![Rule::Apply]);
    assert_eq!(s.config.term, parse_open_term("let w = g in w.a").unwrap());
}

#[test]
fn apply_looks_through_paths() {
    let store = Store::new()
        .extend("y", value("nu(y' => b = nu(y'' => c: all(z: Top) Top = lam(z: Top) z))"))
        .extend("x", value("nu(x => a = y.b)"));
    let s = stepped(&at(store, "x.a.c q"));
    assert_eq!(s.config.term, Term::Stable(stable("q")));
}

#[test]
fn context_steps_under_let() {
    let store = Store::new().extend("f", value("lam(z: Top) z"));
    let s = stepped(&at(store, "let x = f g in [Top] x"));
    assert_eq!(s.rules, vec![Rule::Ctx, Rule::Apply]);
    assert_eq!(s.config.term, parse_open_term("let x = g in [Top] x").unwrap());
}

#[test]
fn applying_a_non_function_is_stuck() {
    let store = Store::new().extend("o", value("nu(o => A = Top)"));
    match step(&at(store.clone(), "o o"), DEFAULT_LOOKUP_FUEL) {
        Err(Stuck::NotAFunction { path: p, outcome: LookupOutcome::Value(_) }) => assert_eq!(p, path("o")),
        other => panic!("{other:?}"),
    }
    match step(&at(store, "o.a o"), DEFAULT_LOOKUP_FUEL) {
        Err(Stuck::NotAFunction { outcome: LookupOutcome::Stuck(_), .. }) => {}
        other => panic!("{other:?}"),
    }
}

#[test]
fn normal_forms_do_not_step() {
    assert!(step(&at(Store::new(), "x.a"), 10).unwrap().is_none());
    assert!(step(&at(Store::new(), "lam(z: Top) z"), 10).unwrap().is_none());
}

#[test]
fn extended_steps() {
    let store = Store::new().extend("x", value("nu(x => a = x)"));
    let (next, t) = extended_step(&at(store.clone(), "x.a"), 10).unwrap().unwrap();
    assert_eq!(t, Transition::Lookup(LookupRule::Val));
    assert_eq!(next.term, Term::Stable(stable("x")));
    assert!(extended_step(&at(store.clone(), "lam(z: Top) z"), 10).unwrap().is_none());
    let reducible = at(store.clone(), "let y = x in y");
    let (next, t) = extended_step(&reducible, 10).unwrap().unwrap();
    assert_eq!(t, Transition::Reduce(vec![Rule::LetPath]));
    assert_eq!(next.term, stepped(&reducible).config.term);
    assert!(matches!(extended_step(&at(store, "x.b"), 10), Err(Stuck::NoLookup(_))));
}

#[test]
fn a_bare_value_is_final() {
    let t = Term::Stable(Stable::Val(value("lam(z: Top) z")));
    let r = run(&t, DEFAULT_STEPS, DEFAULT_LOOKUP_FUEL);
    assert_eq!(r.outcome, RunOutcome::Value { value: value("lam(z: Top) z"), steps: 0 });
}

#[test]
fn chaining_ends_on_the_receiver_path() {
    let r = run(&corpus("chaining.pdot"), DEFAULT_STEPS, DEFAULT_LOOKUP_FUEL);
    let allocated = r.last.store.get("result").expect("result allocated").clone();
    assert_eq!(
        r.outcome,
        RunOutcome::NormalPath { path: path("result.incr.decr"), steps: 4, resolution: LookupOutcome::Value(allocated) }
    );
}

#[test]
fn worked_lookup_program_resolves_to_the_function() {
    let r = run(&corpus("lookup.pdot"), DEFAULT_STEPS, DEFAULT_LOOKUP_FUEL);
    assert_eq!(
        r.outcome,
        RunOutcome::NormalPath { path: path("x.a.c"), steps: 2, resolution: LookupOutcome::Value(value("lam(z: Top) z")) }
    );
}

#[test]
fn head_of_nil_diverges() {
    let r = run(&corpus("list_nil_head.pdot"), 10_000, DEFAULT_LOOKUP_FUEL);
    assert_eq!(r.outcome, RunOutcome::Diverged { fuel: 10_000 });
    // The loop has period one: the same application forever.
    assert_eq!(r.last.term, parse_open_term("result.head t").unwrap());
}

#[test]
fn zero_fuel_diverges_on_anything_reducible() {
    for name in ["chaining.pdot", "lookup.pdot", "list_nil_head.pdot"] {
        assert_eq!(run(&corpus(name), 0, DEFAULT_LOOKUP_FUEL).outcome, RunOutcome::Diverged { fuel: 0 }, "{name}");
    }
    // A program that is already a value needs no fuel.
    assert!(matches!(run(&corpus("compiler.pdot"), 0, DEFAULT_LOOKUP_FUEL).outcome, RunOutcome::Value { steps: 0, .. }));
}

fn lines(name: &str) -> Vec<String> {
    let (entries, _) = trace(&corpus(name), DEFAULT_STEPS, DEFAULT_LOOKUP_FUEL);
    entries.iter().map(|e| e.line()).collect()
}

#[test]
fn golden_trace_of_the_lookup_program() {
    assert_eq!(
        lines("lookup.pdot"),
        [
            "1  rule=Let-Value  term=let x = nu(x: {a: y.b.type}) { a = y.b } in [all(z: Top) Top] x.a.c",
            "2  rule=Let-Value  term=x.a.c",
            "3  rule=Lookup-Step-Path  term=y.b.c",
            "4  rule=Lookup-Step-Val  term=lam(z: Top) z",
        ]
    );
}

#[test]
fn golden_trace_of_chaining() {
    let obj = "nu(this: {incr: this.type} /\\ {decr: this.type}) { incr = this; decr = this }";
    assert_eq!(
        lines("chaining.pdot"),
        [
            "1  rule=Let-Value  term=let d = pkg.newD pkg in [pkg.D] d.incr.decr".to_string(),
            format!("2  rule=Ctx  term=let d = (let result = {obj} in result) in [pkg.D] d.incr.decr"),
            "3  rule=Ctx  term=let d = result in [pkg.D] d.incr.decr".to_string(),
            "4  rule=Let-Path  term=result.incr.decr".to_string(),
            "5  rule=Lookup-Step-Path  term=result.decr".to_string(),
            "6  rule=Lookup-Step-Val  term=result".to_string(),
            format!("7  rule=Lookup-Step-Var  term={obj}"),
        ]
    );
}

#[test]
fn traces_are_reproducible_and_stores_only_grow() {
    for name in ["chaining.pdot", "lookup.pdot", "list.pdot", "compiler.pdot", "list_nil_head.pdot"] {
        let t = corpus(name);
        let (a, _) = trace(&t, 500, DEFAULT_LOOKUP_FUEL);
        let (b, _) = trace(&t, 500, DEFAULT_LOOKUP_FUEL);
        assert_eq!(a.iter().map(|e| e.line()).collect::<Vec<_>>(), b.iter().map(|e| e.line()).collect::<Vec<_>>());
        for w in a.windows(2) {
            assert!(w[0].config.store.is_prefix_of(&w[1].config.store), "{name}");
        }
    }
}
