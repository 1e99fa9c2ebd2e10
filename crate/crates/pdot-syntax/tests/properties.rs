use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

use pdot_syntax::arbitrary::{arb_path, arb_term, arb_type};
use pdot_syntax::*;

const SEED: [u8; 32] = *b"pdot-syntax-property-seed-000001";
const CASES: u32 = 1000;
const NAMES: &[&str] = &["x", "y", "z"];
const ALIASES: &[&str] = &["x", "y"];

fn runner() -> TestRunner {
    let config = Config { cases: CASES, failure_persistence: None, ..Config::default() };
    TestRunner::new_with_rng(config, TestRng::from_seed(RngAlgorithm::ChaCha, &SEED))
}

#[test]
fn open_close_inverse() {
    runner()
        .run(&arb_type(NAMES, 0, 3), |t| {
            prop_assert_eq!(open_var(&close(&t, "x"), "x"), t);
            Ok(())
        })
        .unwrap();
}

#[test]
fn open_close_inverse_terms() {
    runner()
        .run(&arb_term(NAMES, 0, 3), |t| {
            prop_assert_eq!(open_var(&close(&t, "y"), "y"), t);
            Ok(())
        })
        .unwrap();
}

#[test]
fn subst_noop_when_name_absent() {
    let strat = (arb_term(&["y", "z"], 0, 3), arb_path(NAMES, 0));
    runner()
        .run(&strat, |(t, p)| {
            prop_assert!(!free_names(&t).contains("x"));
            prop_assert_eq!(subst_name(&t, "x", &p), t);
            Ok(())
        })
        .unwrap();
}

#[test]
fn repl_candidates_symmetric() {
    let strat = (arb_path(ALIASES, 0), arb_path(ALIASES, 0), arb_type(NAMES, 0, 3));
    runner()
        .run(&strat, |(p, q, t)| {
            for u in repl_candidates(&p, &q, &t) {
                prop_assert!(repl_candidates(&q, &p, &u).contains(&t));
            }
            Ok(())
        })
        .unwrap();
}

#[test]
fn repl_all_eliminates_prefix() {
    let strat = (arb_path(ALIASES, 0), arb_path(ALIASES, 0), arb_type(NAMES, 0, 3));
    runner()
        .run(&strat, |(p, q, t)| {
            match repl_all(&p, &q, &t) {
                Ok(u) => {
                    prop_assert!(!p.is_prefix_of(&q));
                    prop_assert!(!contains_prefix(&p, &u));
                }
                Err(_) => prop_assert!(p.is_prefix_of(&q)),
            }
            Ok(())
        })
        .unwrap();
}

#[test]
fn generated_terms_are_locally_closed_and_labels_distinct() {
    runner()
        .run(&arb_term(NAMES, 0, 3), |t| {
            prop_assert!(is_locally_closed(&t));
            let opened = subst_name(&t, "x", &Path::from_dotted("y.a"));
            check_labels(&opened)?;
            Ok(())
        })
        .unwrap();
}

fn check_labels(t: &Term) -> Result<(), TestCaseError> {
    fn stable(s: &Stable) -> Result<(), TestCaseError> {
        match s {
            Stable::Path(_) => Ok(()),
            Stable::Val(Value::Lam(_, _, body)) => check_labels(body),
            Stable::Val(Value::Nu(_, _, defs)) => {
                for (i, d) in defs.iter().enumerate() {
                    prop_assert!(defs[i + 1..].iter().all(|e| e.label != d.label));
                    if let DefRhs::Field(s) = &d.rhs {
                        stable(s)?;
                    }
                }
                Ok(())
            }
        }
    }
    match t {
        Term::Stable(s) => stable(s),
        Term::App(..) => Ok(()),
        Term::Let { bound, body, .. } => {
            check_labels(bound)?;
            check_labels(body)
        }
    }
}
