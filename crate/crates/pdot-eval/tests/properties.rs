use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

use pdot_eval::*;
use pdot_syntax::arbitrary::arb_program;
use pdot_syntax::free_names;

const SEED: [u8; 32] = *b"pdot-eval-property-seed-00000001";

fn runner() -> TestRunner {
    let config = Config { cases: 1000, failure_persistence: None, ..Config::default() };
    TestRunner::new_with_rng(config, TestRng::from_seed(RngAlgorithm::ChaCha, &SEED))
}

#[test]
fn only_stable_terms_are_normal() {
    runner()
        .run(&arb_program(4), |t| {
            let mut checked = 0;
            run_with(&t, 50, 100, |before, _| {
                checked += 1;
                assert!(!before.term.is_normal_form());
            });
            let r = run(&t, 50, 100);
            match &r.outcome {
                RunOutcome::Value { .. } | RunOutcome::NormalPath { .. } => {
                    prop_assert!(r.last.term.is_normal_form());
                    prop_assert!(step(&r.last, 100).unwrap().is_none());
                }
                RunOutcome::Stuck { .. } => prop_assert!(step(&r.last, 100).is_err()),
                RunOutcome::Diverged { .. } => prop_assert!(!r.last.term.is_normal_form()),
            }
            Ok(())
        })
        .unwrap();
}

#[test]
fn stores_grow_and_cover_free_names() {
    runner()
        .run(&arb_program(4), |t| {
            let mut ok = true;
            run_with(&t, 50, 100, |before, after| {
                ok &= before.store.is_prefix_of(&after.config.store);
                ok &= free_names(&after.config.term).iter().all(|x| after.config.store.contains(x));
            });
            prop_assert!(ok);
            Ok(())
        })
        .unwrap();
}

#[test]
fn runs_are_deterministic_and_within_fuel() {
    runner()
        .run(&(arb_program(4), 0u64..40), |(t, fuel)| {
            let (a, ra) = trace(&t, fuel, 100);
            let (b, rb) = trace(&t, fuel, 100);
            prop_assert_eq!(&ra.outcome, &rb.outcome);
            let la: Vec<String> = a.iter().map(|e| e.line()).collect();
            let lb: Vec<String> = b.iter().map(|e| e.line()).collect();
            prop_assert_eq!(la, lb);
            let reductions = a.iter().filter(|e| matches!(e.transition, Transition::Reduce(_))).count() as u64;
            prop_assert!(reductions <= fuel);
            if let RunOutcome::Value { steps, .. } | RunOutcome::NormalPath { steps, .. } = ra.outcome {
                prop_assert_eq!(steps, reductions);
            }
            Ok(())
        })
        .unwrap();
}

#[test]
fn step_is_a_function_of_the_configuration() {
    runner()
        .run(&arb_program(4), |t| {
            let mut c = Configuration::new(t);
            for _ in 0..20 {
                let a = step(&c, 100);
                let b = step(&c, 100);
                match (a, b) {
                    (Ok(Some(x)), Ok(Some(y))) => {
                        prop_assert_eq!(&x.config.term, &y.config.term);
                        prop_assert_eq!(&x.rules, &y.rules);
                        c = x.config;
                    }
                    (a, b) => {
                        prop_assert_eq!(a.is_ok(), b.is_ok());
                        break;
                    }
                }
            }
            Ok(())
        })
        .unwrap();
}
