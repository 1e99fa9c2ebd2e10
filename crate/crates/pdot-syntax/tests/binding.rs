use pdot_syntax::*;

fn p(s: &str) -> Path {
    Path::from_dotted(s)
}

fn sngl(s: &str) -> Type {
    Type::Sngl(p(s))
}

#[test]
fn open_rec_body_with_path() {
    // {a: <self>.b.type}
    let body = Type::fld("a", Type::Sngl(Path::new(Var::Bound(0), vec!["b".into()])));
    assert_eq!(open(&body, &p("x")), Type::fld("a", sngl("x.b")));
}

#[test]
fn open_all_body_yields_projection_on_argument() {
    let body = Type::sel(Path::bound(0), "A");
    assert_eq!(open(&body, &p("q")), Type::sel(p("q"), "A"));
}

#[test]
fn open_without_slot_is_identity() {
    let body = Type::and(Type::Top, Type::sel(p("y"), "A"));
    assert_eq!(open(&body, &p("x.a")), body);
}

#[test]
fn open_respects_binder_depth() {
    // mu(z) {a: z.type} /\ {b: <outer>.type} under one binder: index 1 is the outer slot.
    let inner = Type::and(
        Type::fld("a", Type::Sngl(Path::bound(0))),
        Type::fld("b", Type::Sngl(Path::bound(1))),
    );
    let t = Type::rec("z", inner);
    let opened = open(&t, &p("x"));
    let expect = Type::rec(
        "z",
        Type::and(Type::fld("a", Type::Sngl(Path::bound(0))), Type::fld("b", sngl("x"))),
    );
    assert_eq!(opened, expect);
}

#[test]
fn subst_rewrites_prefix() {
    let t = Term::path(p("x.c"));
    assert_eq!(subst_name(&t, "x", &p("y.b")), Term::path(p("y.b.c")));
}

#[test]
fn subst_in_defs_replaces_self_with_field_path() {
    let defs = vec![Def::field("b", Stable::Path(p("y.b")))];
    let out = subst_name(&defs, "y", &p("p.a"));
    assert_eq!(out, vec![Def::field("b", Stable::Path(p("p.a.b")))]);
}

#[test]
fn subst_without_occurrence_is_identity() {
    assert_eq!(subst_name(&Type::Top, "x", &p("p")), Type::Top);
}

#[test]
fn free_names_excludes_bound() {
    let t = Type::all("z", Type::Top, Type::sel(Path::bound(0), "A"));
    assert!(free_names(&t).is_empty());
}

#[test]
fn free_names_enumerates_roots() {
    let t = Type::and(Type::fld("a", sngl("x.b")), Type::sel(p("y"), "A"));
    let names: Vec<String> = free_names(&t).into_iter().collect();
    assert_eq!(names, vec!["x".to_string(), "y".to_string()]);
    assert!(free_names(&Type::Bot).is_empty());
}

#[test]
fn close_then_open_round_trips() {
    let t = Type::all("z", sngl("x.a"), Type::fld("b", Type::sel(p("x"), "A")));
    let closed = close(&t, "x");
    assert!(!mentions(&closed, "x"));
    assert_eq!(open_var(&closed, "x"), t);
}

#[test]
fn binder_names_do_not_affect_equality() {
    let a = Type::rec("x", Type::Sngl(Path::bound(0)));
    let b = Type::rec("self", Type::Sngl(Path::bound(0)));
    assert_eq!(a, b);
}

#[test]
fn local_closure_detection() {
    assert!(is_locally_closed(&Type::rec("x", Type::Sngl(Path::bound(0)))));
    assert!(!is_locally_closed(&Type::Sngl(Path::bound(0))));
}

#[test]
fn fresh_names_suffix_deterministically() {
    let taken = ["x", "x$1"];
    assert_eq!(fresh_name("x", |c| taken.contains(&c)), "x$2");
    assert_eq!(fresh_name("y", |c| taken.contains(&c)), "y");
    assert_eq!(fresh_name("x$1", |c| taken.contains(&c)), "x$2");
}
