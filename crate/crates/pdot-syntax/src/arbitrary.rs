//! Proptest generators for well-scoped syntax.
//!
//! Every generated node is locally closed relative to `bound` enclosing
//! binders; free roots are drawn from the given name pool.

use proptest::collection::vec;
use proptest::prelude::*;

use crate::ast::{Binder, Def, Path, Stable, Term, Type, Value, Var};

const HINTS: &[&str] = &["x", "y", "z", "self", "s"];
const FIELDS: &[&str] = &["a", "b", "c"];
const TYPE_LABELS: &[&str] = &["A", "B"];

fn pick(pool: &'static [&'static str]) -> BoxedStrategy<String> {
    proptest::sample::select(pool).prop_map(str::to_string).boxed()
}

fn binder() -> BoxedStrategy<Binder> {
    pick(HINTS).prop_map(Binder::new).boxed()
}

/// A path whose root is a pool name or one of `bound` indices.
pub fn arb_path(free: &'static [&'static str], bound: usize) -> BoxedStrategy<Path> {
    let root = if bound == 0 {
        pick(free).prop_map(Var::Free).boxed()
    } else if free.is_empty() {
        (0..bound).prop_map(Var::Bound).boxed()
    } else {
        prop_oneof![pick(free).prop_map(Var::Free), (0..bound).prop_map(Var::Bound)].boxed()
    };
    (root, vec(pick(FIELDS), 0..3)).prop_map(|(root, fields)| Path { root, fields }).boxed()
}

fn has_roots(free: &[&str], bound: usize) -> bool {
    !free.is_empty() || bound > 0
}

/// Types up to `depth` constructor levels.
pub fn arb_type(free: &'static [&'static str], bound: usize, depth: u32) -> BoxedStrategy<Type> {
    let mut leaves: Vec<BoxedStrategy<Type>> = vec![Just(Type::Top).boxed(), Just(Type::Bot).boxed()];
    if has_roots(free, bound) {
        leaves.push(
            (arb_path(free, bound), pick(TYPE_LABELS)).prop_map(|(p, a)| Type::Sel(p, a)).boxed(),
        );
        leaves.push(arb_path(free, bound).prop_map(Type::Sngl).boxed());
    }
    let leaf = proptest::strategy::Union::new(leaves).boxed();
    if depth == 0 {
        return leaf;
    }
    let here = || arb_type(free, bound, depth - 1);
    let under = || arb_type(free, bound + 1, depth - 1);
    prop_oneof![
        2 => leaf,
        1 => (pick(FIELDS), here()).prop_map(|(a, t)| Type::fld(a, t)),
        1 => (pick(TYPE_LABELS), here(), here()).prop_map(|(a, l, u)| Type::typ(a, l, u)),
        1 => (here(), here()).prop_map(|(l, r)| Type::and(l, r)),
        1 => (binder(), under()).prop_map(|(b, t)| Type::Rec(b, Box::new(t))),
        1 => (binder(), here(), under()).prop_map(|(b, s, t)| Type::All(b, Box::new(s), Box::new(t))),
    ]
    .boxed()
}

/// Definition lists with pairwise-distinct labels; `bound` includes the self slot.
pub fn arb_defs(free: &'static [&'static str], bound: usize, depth: u32) -> BoxedStrategy<Vec<Def>> {
    let def = prop_oneof![
        (pick(TYPE_LABELS), arb_type(free, bound, depth)).prop_map(|(a, t)| Def::ty(a, t)),
        (pick(FIELDS), arb_stable(free, bound, depth)).prop_map(|(a, s)| Def::field(a, s)),
    ];
    vec(def, 1..4)
        .prop_map(|ds| {
            let mut out: Vec<Def> = Vec::new();
            for d in ds {
                if !out.iter().any(|e| e.label == d.label) {
                    out.push(d);
                }
            }
            out
        })
        .boxed()
}

pub fn arb_value(free: &'static [&'static str], bound: usize, depth: u32) -> BoxedStrategy<Value> {
    let d = depth.saturating_sub(1);
    prop_oneof![
        (binder(), arb_type(free, bound, d), arb_term(free, bound + 1, d))
            .prop_map(|(b, t, body)| Value::Lam(b, Box::new(t), Box::new(body))),
        (binder(), arb_type(free, bound + 1, d), arb_defs(free, bound + 1, d))
            .prop_map(|(b, t, ds)| Value::Nu(b, Box::new(t), ds)),
    ]
    .boxed()
}

pub fn arb_stable(free: &'static [&'static str], bound: usize, depth: u32) -> BoxedStrategy<Stable> {
    if depth == 0 && has_roots(free, bound) {
        return arb_path(free, bound).prop_map(Stable::Path).boxed();
    }
    if !has_roots(free, bound) {
        return arb_value(free, bound, depth).prop_map(Stable::Val).boxed();
    }
    prop_oneof![
        arb_path(free, bound).prop_map(Stable::Path),
        arb_value(free, bound, depth).prop_map(Stable::Val),
    ]
    .boxed()
}

/// Terms up to `depth` levels; always locally closed under `bound`.
pub fn arb_term(free: &'static [&'static str], bound: usize, depth: u32) -> BoxedStrategy<Term> {
    let mut leaves: Vec<BoxedStrategy<Term>> = Vec::new();
    if has_roots(free, bound) {
        leaves.push(arb_path(free, bound).prop_map(Term::path).boxed());
        leaves.push((arb_path(free, bound), arb_path(free, bound)).prop_map(|(p, q)| Term::App(p, q)).boxed());
    }
    if depth == 0 {
        if leaves.is_empty() {
            return arb_value(free, bound, 0).prop_map(Term::val).boxed();
        }
        return proptest::strategy::Union::new(leaves).boxed();
    }
    let d = depth - 1;
    leaves.push(arb_value(free, bound, depth).prop_map(Term::val).boxed());
    leaves.push(
        (binder(), arb_term(free, bound, d), arb_term(free, bound + 1, d), proptest::option::of(arb_type(free, bound, 1)))
            .prop_map(|(binder, bound, body, ann)| Term::Let {
                binder,
                bound: Box::new(bound),
                body: Box::new(body),
                ann: ann.map(Box::new),
            })
            .boxed(),
    );
    proptest::strategy::Union::new(leaves).boxed()
}

/// Closed programs: no free names at all.
pub fn arb_program(depth: u32) -> BoxedStrategy<Term> {
    arb_term(&[], 0, depth)
}
