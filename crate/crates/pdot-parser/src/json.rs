//! Deterministic JSON rendering of core trees.
//!
//! Free roots are strings; bound roots are `{"bound": k}`. Object keys are
//! emitted in sorted order, so the output is byte-stable.

use pdot_syntax::{Def, DefRhs, Path, Stable, Term, Type, Value, Var};
use serde_json::{json, Value as Json};

pub fn dump_ast(t: &Term) -> String {
    serde_json::to_string_pretty(&term_json(t)).expect("JSON values always serialize")
}

pub fn path_json(p: &Path) -> Json {
    let root = match &p.root {
        Var::Free(n) => json!(n),
        Var::Bound(k) => json!({ "bound": k }),
    };
    json!({ "root": root, "fields": p.fields })
}

pub fn type_json(t: &Type) -> Json {
    match t {
        Type::Top => json!({ "type": "Top" }),
        Type::Bot => json!({ "type": "Bot" }),
        Type::Fld(a, u) => json!({ "type": "Fld", "label": a, "field": type_json(u) }),
        Type::Typ(a, lo, hi) => {
            json!({ "type": "Typ", "label": a, "lower": type_json(lo), "upper": type_json(hi) })
        }
        Type::Sel(p, a) => json!({ "type": "Sel", "path": path_json(p), "label": a }),
        Type::Sngl(p) => json!({ "type": "Sngl", "path": path_json(p) }),
        Type::And(l, r) => json!({ "type": "And", "left": type_json(l), "right": type_json(r) }),
        Type::Rec(b, body) => json!({ "type": "Rec", "binder": b.name, "body": type_json(body) }),
        Type::All(b, s, body) => {
            json!({ "type": "All", "binder": b.name, "param": type_json(s), "body": type_json(body) })
        }
    }
}

pub fn term_json(t: &Term) -> Json {
    match t {
        Term::Stable(s) => stable_json(s),
        Term::App(p, q) => json!({ "app": [path_json(p), path_json(q)] }),
        Term::Let { binder, bound, body, ann } => {
            let mut o = json!({ "let": binder.name, "bound": term_json(bound), "body": term_json(body) });
            if let Some(a) = ann {
                o["ann"] = type_json(a);
            }
            o
        }
    }
}

pub fn stable_json(s: &Stable) -> Json {
    match s {
        Stable::Path(p) => json!({ "path": path_json(p) }),
        Stable::Val(v) => value_json(v),
    }
}

pub fn value_json(v: &Value) -> Json {
    match v {
        Value::Lam(b, param, body) => {
            json!({ "lam": b.name, "param": type_json(param), "body": term_json(body) })
        }
        Value::Nu(b, self_ty, defs) => json!({
            "nu": b.name,
            "self": type_json(self_ty),
            "defs": defs.iter().map(def_json).collect::<Vec<_>>(),
        }),
    }
}

fn def_json(d: &Def) -> Json {
    match &d.rhs {
        DefRhs::Field(s) => json!({ "field": d.label, "init": stable_json(s) }),
        DefRhs::Type(t) => json!({ "typedef": d.label, "type": type_json(t) }),
    }
}
