//! Single-line rendering in the concrete syntax.
//!
//! Binder names come from the hints stored in the tree, renamed with a `$n`
//! suffix whenever they would capture a free name or shadow an enclosing
//! binder, so the output always re-parses to an alpha-equivalent tree.

use std::collections::BTreeSet;

use pdot_syntax::{free_names, fresh_name, Binder, Def, DefRhs, Path, Stable, Syntax, Term, Type, Value, Var};

use crate::lexer::{is_ident_continue, is_ident_start, is_keyword};

pub fn pretty_term(t: &Term) -> String {
    let mut p = Printer::new(t);
    p.term(t);
    p.out
}

pub fn pretty_type(t: &Type) -> String {
    let mut p = Printer::new(t);
    p.ty(t, Pos::Tail);
    p.out
}

pub fn pretty_value(v: &Value) -> String {
    let mut p = Printer::new(v);
    p.value(v);
    p.out
}

pub fn pretty_stable(s: &Stable) -> String {
    let mut p = Printer::new(s);
    p.stable(s);
    p.out
}

pub fn pretty_path(path: &Path) -> String {
    let mut p = Printer::new(path);
    p.path(path);
    p.out
}

/// Definitions as they appear between the braces of an object.
pub fn pretty_defs(defs: &Vec<Def>) -> String {
    let mut p = Printer::new(defs);
    p.defs(defs);
    p.out
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Pos {
    /// Nothing follows inside the enclosing delimiters.
    Tail,
    /// Operand of `/\`.
    AndLeft,
    AndRight,
}

struct Printer {
    out: String,
    scope: Vec<String>,
    avoid: BTreeSet<String>,
}

fn valid_var(name: &str) -> bool {
    let mut cs = name.chars();
    matches!(cs.next(), Some(c) if is_ident_start(c) && !c.is_ascii_uppercase())
        && cs.all(is_ident_continue)
        && !is_keyword(name)
}

impl Printer {
    fn new<T: Syntax>(root: &T) -> Printer {
        Printer { out: String::new(), scope: Vec::new(), avoid: free_names(root) }
    }

    fn w(&mut self, s: &str) {
        self.out.push_str(s);
    }

    fn bind(&mut self, b: &Binder) -> String {
        let hint = if valid_var(&b.name) { b.name.as_str() } else { "x" };
        let name = fresh_name(hint, |c| self.scope.iter().any(|s| s == c) || self.avoid.contains(c));
        self.scope.push(name.clone());
        name
    }

    fn unbind(&mut self) {
        self.scope.pop();
    }

    fn path(&mut self, p: &Path) {
        match &p.root {
            Var::Free(n) => self.out.push_str(n),
            Var::Bound(i) => {
                let name = self
                    .scope
                    .len()
                    .checked_sub(i + 1)
                    .map(|k| self.scope[k].clone())
                    .unwrap_or_else(|| format!("#{i}"));
                self.out.push_str(&name);
            }
        }
        for a in &p.fields {
            self.out.push('.');
            self.out.push_str(a);
        }
    }

    fn ty(&mut self, t: &Type, pos: Pos) {
        match t {
            Type::Top => self.w("Top"),
            Type::Bot => self.w("Bot"),
            Type::Fld(a, u) => {
                self.w("{");
                self.w(a);
                self.w(": ");
                self.ty(u, Pos::Tail);
                self.w("}");
            }
            Type::Typ(a, lo, hi) => {
                self.w("{type ");
                self.w(a);
                self.w(": ");
                self.ty(lo, Pos::Tail);
                self.w(" .. ");
                self.ty(hi, Pos::Tail);
                self.w("}");
            }
            Type::Sel(p, a) => {
                self.path(p);
                self.w(".");
                self.w(a);
            }
            Type::Sngl(p) => {
                self.path(p);
                self.w(".type");
            }
            Type::And(l, r) => {
                let paren = pos == Pos::AndRight;
                if paren {
                    self.w("(");
                }
                self.ty(l, Pos::AndLeft);
                self.w(" /\\ ");
                self.ty(r, Pos::AndRight);
                if paren {
                    self.w(")");
                }
            }
            Type::Rec(b, body) => {
                let paren = pos != Pos::Tail;
                if paren {
                    self.w("(");
                }
                let x = self.bind(b);
                self.w("mu(");
                self.w(&x);
                self.w(") ");
                self.ty(body, Pos::Tail);
                self.unbind();
                if paren {
                    self.w(")");
                }
            }
            Type::All(b, s, body) => {
                let paren = pos != Pos::Tail;
                if paren {
                    self.w("(");
                }
                // The parameter type is outside the binder's scope.
                let x = self.bind(b);
                self.unbind();
                self.w("all(");
                self.w(&x);
                self.w(": ");
                self.ty(s, Pos::Tail);
                self.w(") ");
                self.scope.push(x);
                self.ty(body, Pos::Tail);
                self.unbind();
                if paren {
                    self.w(")");
                }
            }
        }
    }

    fn term(&mut self, t: &Term) {
        match t {
            Term::Stable(s) => self.stable(s),
            Term::App(p, q) => {
                self.path(p);
                self.w(" ");
                self.path(q);
            }
            Term::Let { binder, bound, body, ann } => {
                self.w("let ");
                let x = self.bind(binder);
                self.unbind();
                self.w(&x);
                self.w(" = ");
                let paren = matches!(**bound, Term::Let { .. });
                if paren {
                    self.w("(");
                }
                self.term(bound);
                if paren {
                    self.w(")");
                }
                self.w(" in ");
                if let Some(a) = ann {
                    self.w("[");
                    self.ty(a, Pos::Tail);
                    self.w("] ");
                }
                self.scope.push(x);
                self.term(body);
                self.unbind();
            }
        }
    }

    fn stable(&mut self, s: &Stable) {
        match s {
            Stable::Path(p) => self.path(p),
            Stable::Val(v) => self.value(v),
        }
    }

    fn value(&mut self, v: &Value) {
        match v {
            Value::Lam(b, param, body) => {
                self.w("lam(");
                let x = self.bind(b);
                self.unbind();
                self.w(&x);
                self.w(": ");
                self.ty(param, Pos::Tail);
                self.w(") ");
                self.scope.push(x);
                self.term(body);
                self.unbind();
            }
            Value::Nu(b, self_ty, defs) => {
                self.w("nu(");
                let x = self.bind(b);
                self.w(&x);
                self.w(": ");
                self.ty(self_ty, Pos::Tail);
                self.w(") {");
                if !defs.is_empty() {
                    self.w(" ");
                    self.defs(defs);
                    self.w(" ");
                }
                self.w("}");
                self.unbind();
            }
        }
    }

    fn defs(&mut self, defs: &[Def]) {
        for (i, d) in defs.iter().enumerate() {
            if i > 0 {
                self.w("; ");
            }
            self.w(&d.label);
            self.w(" = ");
            match &d.rhs {
                DefRhs::Field(s) => self.stable(s),
                DefRhs::Type(t) => self.ty(t, Pos::Tail),
            }
        }
    }
}
