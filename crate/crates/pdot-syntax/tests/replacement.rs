use std::collections::BTreeSet;

use pdot_syntax::*;

fn p(s: &str) -> Path {
    Path::from_dotted(s)
}

/// Independent oracle: explores every order of single replacements and
/// collects the set of normal forms reached.
fn fixpoints(from: &Path, to: &Path, t: &Type) -> Vec<Type> {
    let mut done: Vec<Type> = Vec::new();
    let mut stack = vec![t.clone()];
    let mut seen: Vec<Type> = Vec::new();
    while let Some(cur) = stack.pop() {
        if seen.contains(&cur) {
            continue;
        }
        seen.push(cur.clone());
        let next = repl_candidates(from, to, &cur);
        if next.is_empty() {
            if !done.contains(&cur) {
                done.push(cur);
            }
        } else {
            stack.extend(next);
        }
    }
    done
}

#[test]
fn replace_prefix_cases() {
    assert_eq!(replace_prefix(&p("p"), &p("q"), &p("p.b")), Some(p("q.b")));
    assert_eq!(replace_prefix(&p("x"), &p("y"), &p("x")), Some(p("y")));
    assert_eq!(replace_prefix(&p("x.a"), &p("y"), &p("x.b")), None);
}

#[test]
fn candidates_for_projection() {
    let t = Type::sel(p("p.b.c"), "A");
    assert_eq!(repl_candidates(&p("p"), &p("q"), &t), vec![Type::sel(p("q.b.c"), "A")]);
}

#[test]
fn candidates_one_per_conjunct() {
    let t = Type::and(Type::fld("a", Type::Sngl(p("p"))), Type::fld("b", Type::Sngl(p("p"))));
    let got = repl_candidates(&p("p"), &p("q"), &t);
    assert_eq!(
        got,
        vec![
            Type::and(Type::fld("a", Type::Sngl(p("q"))), Type::fld("b", Type::Sngl(p("p")))),
            Type::and(Type::fld("a", Type::Sngl(p("p"))), Type::fld("b", Type::Sngl(p("q")))),
        ]
    );
    assert!(repl_candidates(&p("p"), &p("q"), &Type::Top).is_empty());
}

#[test]
fn repl_all_matches_every_fixpoint_order() {
    let t = Type::and(Type::fld("a", Type::Sngl(p("p"))), Type::fld("b", Type::Sngl(p("p"))));
    let expect = Type::and(Type::fld("a", Type::Sngl(p("q"))), Type::fld("b", Type::Sngl(p("q"))));
    assert_eq!(fixpoints(&p("p"), &p("q"), &t), vec![expect.clone()]);
    assert_eq!(repl_all(&p("p"), &p("q"), &t).unwrap(), expect);
}

#[test]
fn repl_all_under_binder() {
    let t = Type::all("z", Type::sel(p("x"), "A"), Type::sel(p("x"), "B"));
    let expect = Type::all("z", Type::sel(p("y"), "A"), Type::sel(p("y"), "B"));
    assert_eq!(fixpoints(&p("x"), &p("y"), &t), vec![expect.clone()]);
    assert_eq!(repl_all(&p("x"), &p("y"), &t).unwrap(), expect);
}

#[test]
fn repl_all_on_bottom() {
    assert_eq!(repl_all(&p("p"), &p("q"), &Type::Bot).unwrap(), Type::Bot);
}

#[test]
fn repl_all_rejects_prefix_of_replacement() {
    assert!(repl_all(&p("x"), &p("x.a"), &Type::Top).is_err());
    assert!(repl_all(&p("x"), &p("x"), &Type::Top).is_err());
}

#[test]
fn repl_all_shortening_replacement_iterates() {
    // x.a.b -> x.a repeatedly peels every trailing b.
    let t = Type::Sngl(p("x.a.b.b.c"));
    let got = repl_all(&p("x.a.b"), &p("x.a"), &t).unwrap();
    assert_eq!(got, Type::Sngl(p("x.a.c")));
    let finals: BTreeSet<String> =
        fixpoints(&p("x.a.b"), &p("x.a"), &t).iter().map(|t| format!("{t:?}")).collect();
    assert_eq!(finals.len(), 1);
}
