//! Small-step reduction and its extension by lookup steps.

use std::fmt;

use pdot_parser::pretty_path;
use pdot_syntax::{open, open_var, Path, Stable, Term, Value};
use thiserror::Error;

use crate::lookup::{lookup_star, lookup_step_derivation, LookupOutcome, LookupRule};
use crate::store::Configuration;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    Apply,
    LetPath,
    LetValue,
    Ctx,
}

impl Rule {
    pub fn name(self) -> &'static str {
        match self {
            Rule::Apply => "Apply",
            Rule::LetPath => "Let-Path",
            Rule::LetValue => "Let-Value",
            Rule::Ctx => "Ctx",
        }
    }
}

/// Why a non-normal configuration has no successor.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Stuck {
    #[error("cannot apply {}: lookup gives {outcome}", pretty_path(.path))]
    NotAFunction { path: Path, outcome: LookupOutcome },
    #[error("no lookup step applies to {}", pretty_path(.0))]
    NoLookup(Path),
}

/// A successor configuration and the rules that produced it, outermost first.
#[derive(Clone, Debug)]
pub struct Stepped {
    pub config: Configuration,
    pub rules: Vec<Rule>,
}

/// `γ | t ⟼ γ' | t'`. `Ok(None)` exactly on normal forms (paths and values);
/// `lookup_fuel` bounds the lookup behind `Apply`.
pub fn step(c: &Configuration, lookup_fuel: u64) -> Result<Option<Stepped>, Stuck> {
    match &c.term {
        Term::Stable(_) => Ok(None),
        Term::App(p, q) => match lookup_star(&c.store, &Stable::Path(p.clone()), lookup_fuel) {
            LookupOutcome::Value(Value::Lam(_, _, body)) => Ok(Some(Stepped {
                config: Configuration { store: c.store.clone(), term: open(&*body, q) },
                rules: vec![Rule::Apply],
            })),
            outcome => Err(Stuck::NotAFunction { path: p.clone(), outcome }),
        },
        Term::Let { binder, bound, body, ann } => match &**bound {
            Term::Stable(Stable::Path(p)) => Ok(Some(Stepped {
                config: Configuration { store: c.store.clone(), term: open(&**body, p) },
                rules: vec![Rule::LetPath],
            })),
            Term::Stable(Stable::Val(v)) => {
                let x = c.store.fresh(&binder.name);
                let store = c.store.extend(x.clone(), v.clone());
                Ok(Some(Stepped { config: Configuration { store, term: open_var(&**body, &x) }, rules: vec![Rule::LetValue] }))
            }
            inner => {
                let inner = Configuration { store: c.store.clone(), term: inner.clone() };
                let Some(s) = step(&inner, lookup_fuel)? else {
                    unreachable!("a non-stable term is never normal")
                };
                let term = Term::Let { binder: binder.clone(), bound: Box::new(s.config.term), body: body.clone(), ann: ann.clone() };
                let mut rules = vec![Rule::Ctx];
                rules.extend(s.rules);
                Ok(Some(Stepped { config: Configuration { store: s.config.store, term }, rules }))
            }
        },
    }
}

/// What an extended step did.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Transition {
    Reduce(Vec<Rule>),
    Lookup(LookupRule),
}

impl Transition {
    /// The outermost rule, as printed in traces.
    pub fn name(&self) -> &'static str {
        match self {
            Transition::Reduce(rules) => rules[0].name(),
            Transition::Lookup(r) => r.name(),
        }
    }
}

impl fmt::Display for Transition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Transition::Reduce(rules) => {
                let names: Vec<&str> = rules.iter().map(|r| r.name()).collect();
                write!(f, "{}", names.join("/"))
            }
            Transition::Lookup(r) => write!(f, "{}", r.name()),
        }
    }
}

/// A reduction step when one applies, otherwise one lookup step on a
/// normal-form path. `Ok(None)` exactly on values.
pub fn extended_step(c: &Configuration, lookup_fuel: u64) -> Result<Option<(Configuration, Transition)>, Stuck> {
    if let Some(s) = step(c, lookup_fuel)? {
        return Ok(Some((s.config, Transition::Reduce(s.rules))));
    }
    match &c.term {
        Term::Stable(Stable::Path(p)) => {
            let d = lookup_step_derivation(&c.store, p).ok_or_else(|| Stuck::NoLookup(p.clone()))?;
            let next = Configuration { store: c.store.clone(), term: Term::Stable(d.to) };
            Ok(Some((next, Transition::Lookup(d.rule))))
        }
        _ => Ok(None),
    }
}
