//! Path replacement in types.
//!
//! An occurrence is a path appearing in a type projection `r.A` or a singleton
//! `r.type`, including under binders. Replacing `p` by `q` rewrites one
//! occurrence `p.b..` to `q.b..`.

use thiserror::Error;

use crate::ast::{Path, Type};
use crate::binding::Syntax;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReplError {
    #[error("cannot eliminate {p}: it is a prefix of its replacement {q}")]
    PrefixOfReplacement { p: Path, q: Path },
}

/// `q.b..` when `r = p.b..`.
pub fn replace_prefix(p: &Path, q: &Path, r: &Path) -> Option<Path> {
    p.is_prefix_of(r).then(|| q.extend(&r.fields[p.fields.len()..]))
}

/// Path occurrences of `t` in traversal order (with repetitions).
pub fn occurrences(t: &Type) -> Vec<Path> {
    let mut out = Vec::new();
    t.visit_paths(0, &mut |p, _| out.push(p.clone()));
    out
}

/// `t` with its `n`-th occurrence replaced by `with`.
pub fn replace_nth(t: &Type, n: usize, with: &Path) -> Type {
    let mut i = 0;
    t.map_paths(0, &mut |p, _| {
        let here = i;
        i += 1;
        if here == n {
            with.clone()
        } else {
            p.clone()
        }
    })
}

/// Every type obtained from `t` by replacing exactly one `p`-prefixed
/// occurrence with its `q`-prefixed counterpart, in occurrence order.
pub fn repl_candidates(p: &Path, q: &Path, t: &Type) -> Vec<Type> {
    let mut out: Vec<Type> = Vec::new();
    for (n, r) in occurrences(t).iter().enumerate() {
        if let Some(r2) = replace_prefix(p, q, r) {
            let u = replace_nth(t, n, &r2);
            if !out.contains(&u) {
                out.push(u);
            }
        }
    }
    out
}

/// Rewrites every `p`-prefixed occurrence until none remains.
///
/// Requires that `p` is not a prefix of `q`; otherwise the rewrite would
/// reintroduce `p`.
pub fn repl_all(p: &Path, q: &Path, t: &Type) -> Result<Type, ReplError> {
    if p.is_prefix_of(q) {
        return Err(ReplError::PrefixOfReplacement { p: p.clone(), q: q.clone() });
    }
    Ok(t.map_paths(0, &mut |r, _| {
        let mut cur = r.clone();
        while let Some(next) = replace_prefix(p, q, &cur) {
            cur = next;
        }
        cur
    }))
}

/// True when some occurrence in `t` has prefix `p`.
pub fn contains_prefix(p: &Path, t: &Type) -> bool {
    occurrences(t).iter().any(|r| p.is_prefix_of(r))
}
