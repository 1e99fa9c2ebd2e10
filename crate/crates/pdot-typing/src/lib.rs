//! Algorithmic typing for pDOT.
//!
//! The checker is sound and incomplete: every `Yes` carries a derivation in
//! the declarative rules that [`replay`] re-checks node by node, `No` names
//! the rule that failed, and `Unknown` means the fuel ran out.

mod checker;
pub mod deriv;
pub mod env;
pub mod inert;
pub mod judgement;
pub mod precise;
pub mod replay;

pub use checker::{MAX_DEPTH, check, check_defs, subtype, synth, typecheck, Checker};
pub use deriv::{Claim, Deriv, Rule};
pub use env::{Env, EnvError};
pub use inert::{inert, inert_env, record_type, tight_bounds};
pub use judgement::{Fuel, Judgement, TypeError, DEFAULT_FUEL};
pub use precise::{
    canonical_path, member_bounds, CHAIN_LIMIT, precise_derivs, precise_types, precisely_typeable, wf_env, PathResolution, Typed,
};
pub use replay::{replay, ReplayError};
