//! Path lookup in a value store.

use std::fmt;

use pdot_parser::{pretty_path, pretty_stable};
use pdot_syntax::{open, Path, Stable, Value, Var};

use crate::store::Store;

/// Default bound on single lookup steps per query.
pub const DEFAULT_LOOKUP_FUEL: u64 = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LookupRule {
    Var,
    Val,
    Path,
}

impl LookupRule {
    pub fn name(self) -> &'static str {
        match self {
            LookupRule::Var => "Lookup-Step-Var",
            LookupRule::Val => "Lookup-Step-Val",
            LookupRule::Path => "Lookup-Step-Path",
        }
    }
}

/// A derivation of one lookup step `γ ⊢ from ↝ to`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LookupStep {
    pub from: Path,
    pub to: Stable,
    pub rule: LookupRule,
    /// The step on the prefix, for `Val` and `Path`.
    pub premise: Option<Box<LookupStep>>,
}

impl LookupStep {
    /// Every judgement in the derivation, premises first.
    pub fn judgements(&self) -> Vec<(&Path, &Stable, LookupRule)> {
        let mut out = self.premise.as_ref().map_or_else(Vec::new, |p| p.judgements());
        out.push((&self.from, &self.to, self.rule));
        out
    }
}

impl fmt::Display for LookupStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ~> {}  ({})", pretty_path(&self.from), pretty_stable(&self.to), self.rule.name())
    }
}

/// The derivation of the unique lookup step from `p`, if any.
pub fn lookup_step_derivation(store: &Store, p: &Path) -> Option<LookupStep> {
    match p.split_last() {
        None => {
            let Var::Free(x) = &p.root else { return None };
            let v = store.get(x)?;
            Some(LookupStep { from: p.clone(), to: Stable::Val(v.clone()), rule: LookupRule::Var, premise: None })
        }
        Some((prefix, a)) => {
            let d = lookup_step_derivation(store, &prefix)?;
            let (to, rule) = match &d.to {
                Stable::Val(v @ Value::Nu(..)) => (open(v.field(a)?, &prefix), LookupRule::Val),
                Stable::Val(Value::Lam(..)) => return None,
                Stable::Path(q) => (Stable::Path(q.sel(a)), LookupRule::Path),
            };
            Some(LookupStep { from: p.clone(), to, rule, premise: Some(Box::new(d)) })
        }
    }
}

/// One step of `γ ⊢ s ↝ s'`. Values never step.
pub fn lookup_step(store: &Store, s: &Stable) -> Option<Stable> {
    match s {
        Stable::Path(p) => lookup_step_derivation(store, p).map(|d| d.to),
        Stable::Val(_) => None,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LookupOutcome {
    Value(Value),
    /// The paths revisited, in lookup order from the first repeated one.
    Cycle(Vec<Path>),
    /// No lookup rule applies to this path.
    Stuck(Path),
    FuelOut,
}

impl fmt::Display for LookupOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LookupOutcome::Value(v) => write!(f, "value {}", pdot_parser::pretty_value(v)),
            LookupOutcome::Cycle(ps) => {
                let ps: Vec<String> = ps.iter().map(pretty_path).collect();
                write!(f, "cycle {{{}}}", ps.join(", "))
            }
            LookupOutcome::Stuck(p) => write!(f, "stuck at {}", pretty_path(p)),
            LookupOutcome::FuelOut => write!(f, "out of lookup fuel"),
        }
    }
}

/// The steps of `γ ⊢ s ↝* ...` until a value, a repeat, a dead end or the
/// fuel bound, and how the search ended.
pub fn lookup_trace(store: &Store, s: &Stable, fuel: u64) -> (Vec<LookupStep>, LookupOutcome) {
    let mut cur = match s {
        Stable::Val(v) => return (Vec::new(), LookupOutcome::Value(v.clone())),
        Stable::Path(p) => p.clone(),
    };
    let mut visited = vec![cur.clone()];
    let mut steps = Vec::new();
    loop {
        if steps.len() as u64 >= fuel {
            return (steps, LookupOutcome::FuelOut);
        }
        let Some(d) = lookup_step_derivation(store, &cur) else {
            return (steps, LookupOutcome::Stuck(cur));
        };
        let next = d.to.clone();
        steps.push(d);
        match next {
            Stable::Val(v) => return (steps, LookupOutcome::Value(v)),
            Stable::Path(q) => {
                if let Some(i) = visited.iter().position(|p| *p == q) {
                    return (steps, LookupOutcome::Cycle(visited.split_off(i)));
                }
                visited.push(q.clone());
                cur = q;
            }
        }
    }
}

/// The outcome of `γ ⊢ s ↝* ...`.
pub fn lookup_star(store: &Store, s: &Stable, fuel: u64) -> LookupOutcome {
    lookup_trace(store, s, fuel).1
}
