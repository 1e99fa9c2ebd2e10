//! Typing environments induced by value stores.

use pdot_eval::Store;
use pdot_parser::pretty_value;
use pdot_syntax::{Stable, Term};
use pdot_typing::{synth, Env, Judgement};

/// Extends `env`, which types the first `env.len()` bindings of `store`, with
/// the synthesized types of the remaining ones, oldest first.
pub fn extend_env(env: &Env, store: &Store, fuel: u64) -> Result<Env, String> {
    let mut env = env.clone();
    for (x, v) in store.bindings().into_iter().skip(env.len()) {
        let t = Term::Stable(Stable::Val(v.clone()));
        match synth(&env, &t, fuel) {
            Judgement::Yes(typed) => env = env.extend(x, typed.ty),
            Judgement::No(e) => return Err(format!("store value {x} = {} does not type: {}: {}", pretty_value(v), e.rule, e.message)),
            Judgement::Unknown => return Err(format!("typing store value {x} ran out of fuel")),
        }
    }
    Ok(env)
}

/// Each store value paired with its synthesized type.
pub fn env_of_store(store: &Store, fuel: u64) -> Result<Env, String> {
    extend_env(&Env::new(), store, fuel)
}
