//! Small-step evaluation of pDOT programs.
//!
//! Paths are normal forms; a function is found by looking its path up in the
//! store. Field initializers are never memoized, so every lookup of `p.a`
//! re-reads the object bound at `p`'s root.

mod lookup;
mod run;
mod step;
mod store;

pub use lookup::{
    lookup_star, lookup_step, lookup_step_derivation, lookup_trace, LookupOutcome, LookupRule, LookupStep,
    DEFAULT_LOOKUP_FUEL,
};
pub use run::{run, run_with, trace, Run, RunOutcome, TraceEntry, DEFAULT_STEPS};
pub use step::{extended_step, step, Rule, Stepped, Stuck, Transition};
pub use store::{Configuration, Store};
