//! Evaluation drivers.

use std::fmt;

use pdot_parser::{pretty_path, pretty_term, pretty_value};
use pdot_syntax::{Path, Stable, Term, Value};

use crate::lookup::{lookup_star, LookupOutcome};
use crate::step::{extended_step, step, Stuck, Transition};
use crate::store::Configuration;

/// Default bound on reduction steps per run.
pub const DEFAULT_STEPS: u64 = 100_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RunOutcome {
    Value { value: Value, steps: u64 },
    /// A normal-form path and what it looks up to.
    NormalPath { path: Path, steps: u64, resolution: LookupOutcome },
    /// The step budget ran out. Not a proof of divergence.
    Diverged { fuel: u64 },
    Stuck { reason: Stuck, steps: u64 },
}

impl fmt::Display for RunOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RunOutcome::Value { value, steps } => write!(f, "value after {steps} steps: {}", pretty_value(value)),
            RunOutcome::NormalPath { path, steps, resolution } => {
                write!(f, "path after {steps} steps: {}  (lookup: {resolution})", pretty_path(path))
            }
            RunOutcome::Diverged { fuel } => write!(f, "diverged: no normal form within {fuel} steps"),
            RunOutcome::Stuck { reason, steps } => write!(f, "stuck after {steps} steps: {reason}"),
        }
    }
}

/// The outcome of a run and the configuration it stopped in.
#[derive(Clone, Debug)]
pub struct Run {
    pub outcome: RunOutcome,
    pub last: Configuration,
}

/// One recorded transition: the rule fired and the configuration it led to.
#[derive(Clone, Debug)]
pub struct TraceEntry {
    pub index: u64,
    pub transition: Transition,
    pub config: Configuration,
}

impl TraceEntry {
    /// `step#  rule=<name>  term=<pretty>`
    pub fn line(&self) -> String {
        format!("{}  rule={}  term={}", self.index, self.transition.name(), pretty_term(&self.config.term))
    }
}

/// Reduces `t` from the empty store, reporting each step to `visit`.
pub fn run_with(t: &Term, fuel: u64, lookup_fuel: u64, mut visit: impl FnMut(&Configuration, &TraceEntry)) -> Run {
    let mut cur = Configuration::new(t.clone());
    let mut steps = 0;
    loop {
        if let Term::Stable(s) = &cur.term {
            let outcome = match s {
                Stable::Val(v) => RunOutcome::Value { value: v.clone(), steps },
                Stable::Path(p) => RunOutcome::NormalPath {
                    path: p.clone(),
                    steps,
                    resolution: lookup_star(&cur.store, s, lookup_fuel),
                },
            };
            return Run { outcome, last: cur };
        }
        if steps >= fuel {
            return Run { outcome: RunOutcome::Diverged { fuel }, last: cur };
        }
        match step(&cur, lookup_fuel) {
            Ok(Some(s)) => {
                steps += 1;
                let entry = TraceEntry { index: steps, transition: Transition::Reduce(s.rules), config: s.config };
                visit(&cur, &entry);
                cur = entry.config;
            }
            Ok(None) => unreachable!("only stable terms are normal"),
            Err(reason) => return Run { outcome: RunOutcome::Stuck { reason, steps }, last: cur },
        }
    }
}

pub fn run(t: &Term, fuel: u64, lookup_fuel: u64) -> Run {
    run_with(t, fuel, lookup_fuel, |_, _| {})
}

/// Every reduction step of `run`, followed by the lookup steps that resolve
/// a final path (stopping at a value, a repeated path, or `lookup_fuel`).
pub fn trace(t: &Term, fuel: u64, lookup_fuel: u64) -> (Vec<TraceEntry>, Run) {
    let mut entries = Vec::new();
    let run = run_with(t, fuel, lookup_fuel, |_, e| entries.push(e.clone()));
    if let RunOutcome::NormalPath { .. } = run.outcome {
        let mut cur = run.last.clone();
        let mut seen = vec![cur.term.clone()];
        for _ in 0..lookup_fuel {
            let Ok(Some((next, transition))) = extended_step(&cur, lookup_fuel) else { break };
            let index = entries.last().map_or(0, |e: &TraceEntry| e.index) + 1;
            entries.push(TraceEntry { index, transition, config: next.clone() });
            if seen.contains(&next.term) {
                break;
            }
            seen.push(next.term.clone());
            cur = next;
        }
    }
    (entries, run)
}
