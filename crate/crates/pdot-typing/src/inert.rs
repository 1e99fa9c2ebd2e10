//! Shape predicates on types: tight bounds, records and inertness.

use pdot_syntax::Type;

use crate::env::Env;

/// Every type member reachable through `mu`, field and intersection
/// structure has equal bounds. Function types are opaque.
pub fn tight_bounds(t: &Type) -> bool {
    match t {
        Type::Typ(_, lo, hi) => lo == hi,
        Type::Rec(_, u) | Type::Fld(_, u) => tight_bounds(u),
        Type::And(l, r) => tight_bounds(l) && tight_bounds(r),
        _ => true,
    }
}

/// An intersection of `{A: T..T}`, `{a: q.type}` and `{a: T}` with `T` inert.
pub fn record_type(t: &Type) -> bool {
    match t {
        Type::And(l, r) => record_type(l) && record_type(r),
        Type::Typ(_, lo, hi) => lo == hi,
        Type::Fld(_, u) => matches!(**u, Type::Sngl(_)) || inert(u),
        _ => false,
    }
}

/// A function type, or a recursive type over a record.
pub fn inert(t: &Type) -> bool {
    match t {
        Type::All(..) => true,
        Type::Rec(_, body) => record_type(body),
        _ => false,
    }
}

pub fn inert_env(env: &Env) -> bool {
    env.bindings().into_iter().all(|(_, t)| inert(t))
}
