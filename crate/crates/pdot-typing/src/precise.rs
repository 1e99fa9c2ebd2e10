//! Precise path typing and alias resolution.
//!
//! Precise types use only elimination: the environment's type for the root,
//! then `mu` opening, intersection projection and field selection along the
//! path. They never consult subtyping, so they are cheap and always finite.

use std::sync::Arc;

use pdot_parser::pretty_path;
use pdot_syntax::{free_paths, open, Path, Type};

use crate::deriv::{Claim, Deriv, Rule};
use crate::env::Env;
use crate::judgement::{Judgement, TypeError};

/// A type together with the derivation that assigns it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Typed {
    pub ty: Type,
    pub deriv: Arc<Deriv>,
}

/// Appends `t` unless an equal type is already present.
pub(crate) fn push_unique(acc: &mut Vec<Typed>, ty: Type, deriv: Arc<Deriv>) {
    if !acc.iter().any(|f| f.ty == ty) {
        acc.push(Typed { ty, deriv });
    }
}

/// `p : T` from `p : T /\ U` (`left`) or `p : U /\ T`, through Sub.
pub(crate) fn and_elim(p: &Path, whole: &Typed, part: &Type, left: bool) -> Arc<Deriv> {
    let rule = if left { Rule::And1 } else { Rule::And2 };
    let sub = Deriv::new(rule, Claim::sub(whole.ty.clone(), part.clone()), vec![]);
    Deriv::new(Rule::Sub, Claim::path(p, part.clone()), vec![whole.deriv.clone(), sub])
}

/// Closes `acc` under `mu` opening and intersection projection.
fn eliminate(p: &Path, acc: &mut Vec<Typed>) {
    let mut i = 0;
    while i < acc.len() {
        let f = acc[i].clone();
        i += 1;
        match &f.ty {
            Type::And(l, r) => {
                push_unique(acc, (**l).clone(), and_elim(p, &f, l, true));
                push_unique(acc, (**r).clone(), and_elim(p, &f, r, false));
            }
            Type::Rec(_, body) => {
                let opened = open(&**body, p);
                let d = Deriv::new(Rule::RecE, Claim::path(p, opened.clone()), vec![f.deriv.clone()]);
                push_unique(acc, opened, d);
            }
            _ => {}
        }
    }
}

/// Precise types of `p` with their derivations, in discovery order.
pub fn precise_derivs(env: &Env, p: &Path) -> Vec<Typed> {
    let mut acc = Vec::new();
    match p.split_last() {
        None => {
            if let Some(t) = p.root_name().and_then(|x| env.lookup(x)) {
                acc.push(Typed { ty: t.clone(), deriv: Deriv::new(Rule::Var, Claim::path(p, t.clone()), vec![]) });
            }
        }
        Some((prefix, a)) => {
            for f in precise_derivs(env, &prefix) {
                if let Type::Fld(b, u) = &f.ty {
                    if b == a {
                        let d = Deriv::new(Rule::FldE, Claim::path(p, (**u).clone()), vec![f.deriv.clone()]);
                        push_unique(&mut acc, (**u).clone(), d);
                    }
                }
            }
        }
    }
    eliminate(p, &mut acc);
    acc
}

/// The precise types of `p`; empty when some label along `p` is missing.
pub fn precise_types(env: &Env, p: &Path) -> Vec<Type> {
    precise_derivs(env, p).into_iter().map(|f| f.ty).collect()
}

/// Where following singleton aliases from a path ends.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PathResolution {
    /// A path with no precise singleton type on any prefix.
    Canonical(Path),
    /// The chain revisits a path; the set is the cycle, in chain order.
    Cyclic(Vec<Path>),
}

/// One alias step: some prefix of the path has type `target.type`, so the
/// path becomes `to`.
#[derive(Debug, Clone)]
pub(crate) struct AliasStep {
    pub target: Path,
    pub to: Path,
    pub alias: Arc<Deriv>,
}

/// Chains longer than this are reported as cyclic.
pub const CHAIN_LIMIT: usize = 256;

/// Rewrites the shortest prefix of `r` that has a precise singleton type.
pub(crate) fn alias_step(env: &Env, r: &Path) -> Option<AliasStep> {
    for prefix in r.prefixes() {
        let found = precise_derivs(env, &prefix).into_iter().find_map(|f| match &f.ty {
            Type::Sngl(q) => Some((q.clone(), f.deriv)),
            _ => None,
        });
        if let Some((target, alias)) = found {
            let to = target.extend(&r.fields[prefix.fields.len()..]);
            return Some(AliasStep { target, to, alias });
        }
    }
    None
}

/// The alias chain from `p`, and how it ends.
pub(crate) fn alias_chain(env: &Env, p: &Path) -> (Vec<AliasStep>, PathResolution) {
    let mut seen = vec![p.clone()];
    let mut steps = Vec::new();
    let mut cur = p.clone();
    while let Some(step) = alias_step(env, &cur) {
        if let Some(i) = seen.iter().position(|s| *s == step.to) {
            return (steps, PathResolution::Cyclic(seen[i..].to_vec()));
        }
        if steps.len() >= CHAIN_LIMIT {
            return (steps, PathResolution::Cyclic(seen));
        }
        cur = step.to.clone();
        seen.push(cur.clone());
        steps.push(step);
    }
    (steps, PathResolution::Canonical(cur))
}

/// Follows precise singleton types (extended to suffixes) until a path with
/// none is reached, or a path repeats.
pub fn canonical_path(env: &Env, p: &Path) -> PathResolution {
    alias_chain(env, p).1
}

/// Bounds of `A` in the precise types of `p`'s canonical representative.
pub fn member_bounds(env: &Env, p: &Path, label: &str) -> Option<(Type, Type)> {
    let PathResolution::Canonical(q) = canonical_path(env, p) else {
        return None;
    };
    precise_types(env, &q).into_iter().find_map(|t| match t {
        Type::Typ(a, lo, hi) if a == label => Some((*lo, *hi)),
        _ => None,
    })
}

/// `p` has a type obtained by precise typing, possibly after following
/// singleton aliases.
pub fn precisely_typeable(env: &Env, p: &Path) -> bool {
    let mut seen: Vec<Path> = Vec::new();
    let mut cur = p.clone();
    loop {
        if !precise_types(env, &cur).is_empty() {
            return true;
        }
        if seen.contains(&cur) || seen.len() > CHAIN_LIMIT {
            return false;
        }
        seen.push(cur.clone());
        match alias_step(env, &cur) {
            Some(step) => cur = step.to,
            None => return false,
        }
    }
}

/// Every free-rooted path in the environment's types is typeable. The self
/// variable of a top-level `mu` is read as the bound name itself.
pub fn wf_env(env: &Env) -> Judgement<()> {
    for (x, t) in env.bindings() {
        let ty = match t {
            Type::Rec(_, body) => open(&**body, &Path::var(x)),
            other => other.clone(),
        };
        for p in free_paths(&ty) {
            if !precisely_typeable(env, &p) {
                return Judgement::No(TypeError::new(
                    "Wf",
                    format!("path {} in the type of {x} is not typeable", pretty_path(&p)),
                ));
            }
        }
    }
    Judgement::Yes(())
}
