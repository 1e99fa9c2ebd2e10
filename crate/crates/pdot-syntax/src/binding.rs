//! Locally nameless operations.
//!
//! Bound variables are de Bruijn indices; free variables are names. Opening a
//! binder with a path replaces index 0 (shifted by the number of binders
//! crossed) with that path, appending the occurrence's own field suffix.
//! Paths used for opening and substitution must be free-rooted, so no index
//! shifting is ever needed.

use std::collections::BTreeSet;

use crate::ast::{Def, DefRhs, Path, Stable, Term, Type, Value, Var};

/// Traversal over every path occurrence, tracking binder depth.
pub trait Syntax: Sized {
    /// Rebuilds `self` with each path `p` at binder depth `d` replaced by `f(p, d)`.
    fn map_paths<F: FnMut(&Path, usize) -> Path>(&self, depth: usize, f: &mut F) -> Self;

    /// Calls `f(p, d)` on every path occurrence in traversal order.
    fn visit_paths<F: FnMut(&Path, usize)>(&self, depth: usize, f: &mut F);
}

impl Syntax for Path {
    fn map_paths<F: FnMut(&Path, usize) -> Path>(&self, depth: usize, f: &mut F) -> Path {
        f(self, depth)
    }

    fn visit_paths<F: FnMut(&Path, usize)>(&self, depth: usize, f: &mut F) {
        f(self, depth)
    }
}

impl Syntax for Type {
    fn map_paths<F: FnMut(&Path, usize) -> Path>(&self, d: usize, f: &mut F) -> Type {
        match self {
            Type::Top => Type::Top,
            Type::Bot => Type::Bot,
            Type::Fld(a, t) => Type::Fld(a.clone(), Box::new(t.map_paths(d, f))),
            Type::Typ(a, lo, hi) => {
                Type::Typ(a.clone(), Box::new(lo.map_paths(d, f)), Box::new(hi.map_paths(d, f)))
            }
            Type::Sel(p, a) => Type::Sel(f(p, d), a.clone()),
            Type::Sngl(p) => Type::Sngl(f(p, d)),
            Type::And(l, r) => Type::And(Box::new(l.map_paths(d, f)), Box::new(r.map_paths(d, f))),
            Type::Rec(b, t) => Type::Rec(b.clone(), Box::new(t.map_paths(d + 1, f))),
            Type::All(b, s, t) => Type::All(
                b.clone(),
                Box::new(s.map_paths(d, f)),
                Box::new(t.map_paths(d + 1, f)),
            ),
        }
    }

    fn visit_paths<F: FnMut(&Path, usize)>(&self, d: usize, f: &mut F) {
        match self {
            Type::Top | Type::Bot => {}
            Type::Fld(_, t) => t.visit_paths(d, f),
            Type::Typ(_, lo, hi) => {
                lo.visit_paths(d, f);
                hi.visit_paths(d, f);
            }
            Type::Sel(p, _) | Type::Sngl(p) => f(p, d),
            Type::And(l, r) => {
                l.visit_paths(d, f);
                r.visit_paths(d, f);
            }
            Type::Rec(_, t) => t.visit_paths(d + 1, f),
            Type::All(_, s, t) => {
                s.visit_paths(d, f);
                t.visit_paths(d + 1, f);
            }
        }
    }
}

impl Syntax for Stable {
    fn map_paths<F: FnMut(&Path, usize) -> Path>(&self, d: usize, f: &mut F) -> Stable {
        match self {
            Stable::Path(p) => Stable::Path(f(p, d)),
            Stable::Val(v) => Stable::Val(v.map_paths(d, f)),
        }
    }

    fn visit_paths<F: FnMut(&Path, usize)>(&self, d: usize, f: &mut F) {
        match self {
            Stable::Path(p) => f(p, d),
            Stable::Val(v) => v.visit_paths(d, f),
        }
    }
}

impl Syntax for Value {
    fn map_paths<F: FnMut(&Path, usize) -> Path>(&self, d: usize, f: &mut F) -> Value {
        match self {
            Value::Lam(b, t, body) => {
                Value::Lam(b.clone(), Box::new(t.map_paths(d, f)), Box::new(body.map_paths(d + 1, f)))
            }
            Value::Nu(b, t, defs) => {
                Value::Nu(b.clone(), Box::new(t.map_paths(d + 1, f)), defs.map_paths(d + 1, f))
            }
        }
    }

    fn visit_paths<F: FnMut(&Path, usize)>(&self, d: usize, f: &mut F) {
        match self {
            Value::Lam(_, t, body) => {
                t.visit_paths(d, f);
                body.visit_paths(d + 1, f);
            }
            Value::Nu(_, t, defs) => {
                t.visit_paths(d + 1, f);
                defs.visit_paths(d + 1, f);
            }
        }
    }
}

impl Syntax for Def {
    fn map_paths<F: FnMut(&Path, usize) -> Path>(&self, d: usize, f: &mut F) -> Def {
        let rhs = match &self.rhs {
            DefRhs::Field(s) => DefRhs::Field(s.map_paths(d, f)),
            DefRhs::Type(t) => DefRhs::Type(t.map_paths(d, f)),
        };
        Def { label: self.label.clone(), rhs, span: self.span }
    }

    fn visit_paths<F: FnMut(&Path, usize)>(&self, d: usize, f: &mut F) {
        match &self.rhs {
            DefRhs::Field(s) => s.visit_paths(d, f),
            DefRhs::Type(t) => t.visit_paths(d, f),
        }
    }
}

impl Syntax for Vec<Def> {
    fn map_paths<F: FnMut(&Path, usize) -> Path>(&self, d: usize, f: &mut F) -> Vec<Def> {
        self.iter().map(|x| x.map_paths(d, f)).collect()
    }

    fn visit_paths<F: FnMut(&Path, usize)>(&self, d: usize, f: &mut F) {
        for x in self {
            x.visit_paths(d, f);
        }
    }
}

impl Syntax for Term {
    fn map_paths<F: FnMut(&Path, usize) -> Path>(&self, d: usize, f: &mut F) -> Term {
        match self {
            Term::Stable(s) => Term::Stable(s.map_paths(d, f)),
            Term::App(p, q) => Term::App(f(p, d), f(q, d)),
            Term::Let { binder, bound, body, ann } => Term::Let {
                binder: binder.clone(),
                bound: Box::new(bound.map_paths(d, f)),
                body: Box::new(body.map_paths(d + 1, f)),
                ann: ann.as_ref().map(|t| Box::new(t.map_paths(d, f))),
            },
        }
    }

    fn visit_paths<F: FnMut(&Path, usize)>(&self, d: usize, f: &mut F) {
        match self {
            Term::Stable(s) => s.visit_paths(d, f),
            Term::App(p, q) => {
                f(p, d);
                f(q, d);
            }
            Term::Let { bound, body, ann, .. } => {
                bound.visit_paths(d, f);
                if let Some(t) = ann {
                    t.visit_paths(d, f);
                }
                body.visit_paths(d + 1, f);
            }
        }
    }
}

/// Opens the outermost binder slot of `body` with the free-rooted path `p`.
pub fn open<T: Syntax>(body: &T, p: &Path) -> T {
    open_at(body, 0, p)
}

/// Replaces index `k` (relative to depth 0) with `p`.
pub fn open_at<T: Syntax>(body: &T, k: usize, p: &Path) -> T {
    debug_assert!(p.is_free(), "opening with a bound-rooted path");
    body.map_paths(0, &mut |q, d| match q.root {
        Var::Bound(i) if i == k + d => p.extend(&q.fields),
        _ => q.clone(),
    })
}

/// Opens with a bare free variable.
pub fn open_var<T: Syntax>(body: &T, x: &str) -> T {
    open(body, &Path::var(x))
}

/// Abstracts the free name `x` into index 0; inverse of [`open_var`].
pub fn close<T: Syntax>(body: &T, x: &str) -> T {
    body.map_paths(0, &mut |q, d| match &q.root {
        Var::Free(n) if n == x => Path { root: Var::Bound(d), fields: q.fields.clone() },
        _ => q.clone(),
    })
}

/// Rewrites every path rooted at free `x` to `p` followed by its suffix.
pub fn subst_name<T: Syntax>(target: &T, x: &str, p: &Path) -> T {
    target.map_paths(0, &mut |q, _| match &q.root {
        Var::Free(n) if n == x => p.extend(&q.fields),
        _ => q.clone(),
    })
}

/// Roots of all free-rooted paths.
pub fn free_names<T: Syntax>(target: &T) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    target.visit_paths(0, &mut |q, _| {
        if let Var::Free(n) = &q.root {
            out.insert(n.clone());
        }
    });
    out
}

pub fn mentions<T: Syntax>(target: &T, x: &str) -> bool {
    let mut hit = false;
    target.visit_paths(0, &mut |q, _| {
        if matches!(&q.root, Var::Free(n) if n == x) {
            hit = true;
        }
    });
    hit
}

/// True when no index escapes its binder.
pub fn is_locally_closed<T: Syntax>(target: &T) -> bool {
    let mut ok = true;
    target.visit_paths(0, &mut |q, d| {
        if let Var::Bound(i) = q.root {
            if i >= d {
                ok = false;
            }
        }
    });
    ok
}

/// Free-rooted paths, in traversal order, without duplicates.
pub fn free_paths<T: Syntax>(target: &T) -> Vec<Path> {
    let mut out: Vec<Path> = Vec::new();
    target.visit_paths(0, &mut |q, _| {
        if q.is_free() && !out.contains(q) {
            out.push(q.clone());
        }
    });
    out
}

/// `base`, `base$1`, `base$2`, ... : the first candidate not rejected by `taken`.
pub fn fresh_name(base: &str, taken: impl Fn(&str) -> bool) -> String {
    let stem = match base.split_once('$') {
        Some((s, _)) if !s.is_empty() => s,
        _ if base.is_empty() => "x",
        _ => base,
    };
    if !taken(stem) {
        return stem.to_string();
    }
    (1..)
        .map(|i| format!("{stem}${i}"))
        .find(|c| !taken(c))
        .expect("unbounded candidate stream")
}
