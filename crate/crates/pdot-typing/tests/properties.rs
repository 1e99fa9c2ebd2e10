mod common;

use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};

use pdot_syntax::arbitrary::{arb_path, arb_program, arb_type};
use pdot_syntax::{Binder, Type};
use pdot_typing::*;

const SEED: [u8; 32] = *b"pdot-typing-property-seed-000001";

fn runner() -> TestRunner {
    let config = Config { cases: 1000, failure_persistence: None, ..Config::default() };
    TestRunner::new_with_rng(config, TestRng::from_seed(RngAlgorithm::ChaCha, &SEED))
}

fn fixed_env() -> Env {
    common::env(&[
        ("x", "mu(x) {a: x.type} /\\ {A: Top .. Top} /\\ {b: {B: Bot .. Bot}}"),
        ("y", "mu(y) {c: x.b.type} /\\ {B: x.A .. x.A} /\\ {f: all(z: Top) y.B}"),
    ])
}

/// Environments of objects whose fields alias other paths.
fn arb_alias_env() -> BoxedStrategy<Env> {
    let rec = || {
        proptest::collection::vec(arb_path(&["x", "y"], 1), 3).prop_map(|targets| {
            let fields = ["a", "b", "c"].iter().zip(targets).map(|(a, p)| Type::fld(*a, Type::Sngl(p)));
            Type::Rec(Binder::new("s"), Box::new(Type::and_all(fields)))
        })
    };
    (rec(), rec()).prop_map(|(tx, ty)| Env::new().extend("x", tx).extend("y", ty)).boxed()
}

fn err(msg: String) -> TestCaseError {
    TestCaseError::fail(msg)
}

#[test]
fn subtyping_is_reflexive() {
    let g = fixed_env();
    runner()
        .run(&arb_type(&["x", "y"], 0, 3), |t| {
            prop_assert!(subtype(&g, &t, &t, DEFAULT_FUEL).is_yes());
            Ok(())
        })
        .unwrap();
}

#[test]
fn more_fuel_only_resolves_unknowns() {
    let g = fixed_env();
    let case = (arb_type(&["x", "y"], 0, 2), arb_type(&["x", "y"], 0, 2), 1u64..200);
    runner()
        .run(&case, |(s, t, small)| {
            let low = subtype(&g, &s, &t, small);
            let high = subtype(&g, &s, &t, DEFAULT_FUEL);
            if !low.is_unknown() {
                prop_assert_eq!(low.verdict(), high.verdict());
            }
            if let Judgement::Yes(d) = &high {
                replay(&g, d).map_err(|e| err(format!("{e}")))?;
            }
            Ok(())
        })
        .unwrap();
}

#[test]
fn more_fuel_only_resolves_unknowns_for_programs() {
    runner()
        .run(&(arb_program(3), 1u64..100), |(t, small)| {
            let low = typecheck(&t, small);
            let high = typecheck(&t, DEFAULT_FUEL);
            if !low.is_unknown() {
                prop_assert_eq!(low.verdict(), high.verdict());
            }
            if let Judgement::Yes(r) = &high {
                replay(&Env::new(), &r.deriv).map_err(|e| err(format!("{e}")))?;
            }
            Ok(())
        })
        .unwrap();
}

#[test]
fn canonical_path_terminates_and_matches_the_chain() {
    runner()
        .run(&(arb_alias_env(), arb_path(&["x", "y"], 0)), |(g, p)| {
            let (chain, cyclic) = common::chain_oracle(&g, &p);
            match canonical_path(&g, &p) {
                PathResolution::Canonical(q) => {
                    prop_assert!(!cyclic);
                    prop_assert_eq!(&q, chain.last().unwrap());
                    for prefix in q.prefixes() {
                        prop_assert!(precise_types(&g, &prefix).iter().all(|t| !matches!(t, Type::Sngl(_))));
                    }
                }
                PathResolution::Cyclic(members) => {
                    prop_assert!(cyclic);
                    prop_assert_eq!(members, chain);
                }
            }
            Ok(())
        })
        .unwrap();
}

#[test]
fn cyclic_paths_have_only_singleton_or_top_facts() {
    runner()
        .run(&(arb_alias_env(), arb_path(&["x", "y"], 0)), |(g, p)| {
            if let PathResolution::Cyclic(_) = canonical_path(&g, &p) {
                if let Judgement::Yes(facts) = Checker::new(DEFAULT_FUEL).path_facts(&g, &p) {
                    for f in facts {
                        prop_assert!(matches!(f.ty, Type::Sngl(_) | Type::Top), "{:?}", f.ty);
                    }
                }
            }
            Ok(())
        })
        .unwrap();
}

#[test]
fn transitivity_is_never_contradicted() {
    let g = fixed_env();
    let case = (arb_type(&["x", "y"], 0, 2), arb_type(&["x", "y"], 0, 2), arb_type(&["x", "y"], 0, 2));
    let chains = std::cell::Cell::new(0);
    runner()
        .run(&case, |(s, t, u)| {
            if subtype(&g, &s, &t, DEFAULT_FUEL).is_yes() && subtype(&g, &t, &u, DEFAULT_FUEL).is_yes() {
                chains.set(chains.get() + 1);
                prop_assert!(!subtype(&g, &s, &u, DEFAULT_FUEL).is_no());
            }
            Ok(())
        })
        .unwrap();
    assert!(chains.get() > 0);
}

#[test]
fn aliases_are_interchangeable_in_types() {
    runner()
        .run(&(arb_alias_env(), arb_path(&["x", "y"], 0), arb_type(&["x", "y"], 0, 2)), |(g, p, u)| {
            let PathResolution::Canonical(q) = canonical_path(&g, &p) else { return Ok(()) };
            let Ok(v) = pdot_syntax::repl_all(&p, &q, &u) else { return Ok(()) };
            if !precisely_typeable(&g, &q) {
                return Ok(());
            }
            let r = subtype(&g, &u, &v, DEFAULT_FUEL);
            prop_assert!(!r.is_no());
            if let Judgement::Yes(d) = &r {
                replay(&g, d).map_err(|e| err(format!("{e}")))?;
            }
            Ok(())
        })
        .unwrap();
}
