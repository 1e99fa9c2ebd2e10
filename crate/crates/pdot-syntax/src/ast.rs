use std::fmt;
use std::hash::{Hash, Hasher};

/// Byte range into the source text. Zero-width when synthesized.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    pub fn new(start: usize, end: usize) -> Span {
        Span { start, end }
    }
}

/// Name hint and source position of a binding site.
///
/// Binders never participate in equality or hashing, so two terms that differ
/// only in binder names compare equal.
#[derive(Clone, Debug, Default)]
pub struct Binder {
    pub name: String,
    pub span: Span,
}

impl Binder {
    pub fn new(name: impl Into<String>) -> Binder {
        Binder { name: name.into(), span: Span::default() }
    }

    pub fn with_span(name: impl Into<String>, span: Span) -> Binder {
        Binder { name: name.into(), span }
    }
}

impl PartialEq for Binder {
    fn eq(&self, _: &Binder) -> bool {
        true
    }
}

impl Eq for Binder {}

impl Hash for Binder {
    fn hash<H: Hasher>(&self, _: &mut H) {}
}

/// A variable: a free name or a de Bruijn index counting enclosing binders.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    Free(String),
    Bound(usize),
}

/// A variable followed by zero or more field selections.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub root: Var,
    pub fields: Vec<String>,
}

impl Path {
    pub fn var(name: impl Into<String>) -> Path {
        Path { root: Var::Free(name.into()), fields: Vec::new() }
    }

    pub fn bound(index: usize) -> Path {
        Path { root: Var::Bound(index), fields: Vec::new() }
    }

    pub fn new(root: Var, fields: Vec<String>) -> Path {
        Path { root, fields }
    }

    /// Parses `x.a.b` into a free-rooted path; no validation of label case.
    pub fn from_dotted(s: &str) -> Path {
        let mut parts = s.split('.');
        let root = parts.next().unwrap_or_default().to_string();
        Path { root: Var::Free(root), fields: parts.map(str::to_string).collect() }
    }

    pub fn sel(&self, label: impl Into<String>) -> Path {
        let mut fields = self.fields.clone();
        fields.push(label.into());
        Path { root: self.root.clone(), fields }
    }

    /// `self` with `suffix` appended.
    pub fn extend(&self, suffix: &[String]) -> Path {
        let mut fields = self.fields.clone();
        fields.extend_from_slice(suffix);
        Path { root: self.root.clone(), fields }
    }

    pub fn is_var(&self) -> bool {
        self.fields.is_empty()
    }

    pub fn is_free(&self) -> bool {
        matches!(self.root, Var::Free(_))
    }

    pub fn root_name(&self) -> Option<&str> {
        match &self.root {
            Var::Free(n) => Some(n),
            Var::Bound(_) => None,
        }
    }

    /// The path without its last selection, with that label.
    pub fn split_last(&self) -> Option<(Path, &str)> {
        let (last, init) = self.fields.split_last()?;
        Some((Path { root: self.root.clone(), fields: init.to_vec() }, last))
    }

    /// True when `self` is a (not necessarily proper) prefix of `other`.
    pub fn is_prefix_of(&self, other: &Path) -> bool {
        self.root == other.root
            && self.fields.len() <= other.fields.len()
            && other.fields[..self.fields.len()] == self.fields[..]
    }

    /// All prefixes from the bare root up to and including `self`.
    pub fn prefixes(&self) -> impl Iterator<Item = Path> + '_ {
        (0..=self.fields.len())
            .map(move |n| Path { root: self.root.clone(), fields: self.fields[..n].to_vec() })
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.root {
            Var::Free(n) => write!(f, "{n}")?,
            Var::Bound(i) => write!(f, "#{i}")?,
        }
        for a in &self.fields {
            write!(f, ".{a}")?;
        }
        Ok(())
    }
}

/// Types. `Rec` and `All` bodies bind index 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Type {
    Top,
    Bot,
    /// `{a: T}`
    Fld(String, Box<Type>),
    /// `{A: S..U}`
    Typ(String, Box<Type>, Box<Type>),
    /// `p.A`
    Sel(Path, String),
    /// `p.type`
    Sngl(Path),
    And(Box<Type>, Box<Type>),
    /// `mu(x) T`
    Rec(Binder, Box<Type>),
    /// `all(x: S) T`
    All(Binder, Box<Type>, Box<Type>),
}

impl Type {
    pub fn fld(a: impl Into<String>, t: Type) -> Type {
        Type::Fld(a.into(), Box::new(t))
    }

    pub fn typ(a: impl Into<String>, lo: Type, hi: Type) -> Type {
        Type::Typ(a.into(), Box::new(lo), Box::new(hi))
    }

    pub fn sel(p: Path, a: impl Into<String>) -> Type {
        Type::Sel(p, a.into())
    }

    pub fn and(l: Type, r: Type) -> Type {
        Type::And(Box::new(l), Box::new(r))
    }

    pub fn rec(x: impl Into<String>, body: Type) -> Type {
        Type::Rec(Binder::new(x), Box::new(body))
    }

    pub fn all(x: impl Into<String>, param: Type, body: Type) -> Type {
        Type::All(Binder::new(x), Box::new(param), Box::new(body))
    }

    /// Left-nested intersection; `Top` when empty.
    pub fn and_all(parts: impl IntoIterator<Item = Type>) -> Type {
        parts.into_iter().reduce(Type::and).unwrap_or(Type::Top)
    }

    /// Leaves of the top-level intersection tree, left to right.
    pub fn conjuncts(&self) -> Vec<&Type> {
        let mut out = Vec::new();
        fn go<'a>(t: &'a Type, out: &mut Vec<&'a Type>) {
            match t {
                Type::And(l, r) => {
                    go(l, out);
                    go(r, out);
                }
                other => out.push(other),
            }
        }
        go(self, &mut out);
        out
    }
}

/// Paths and values: the terms allowed as field initializers.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Stable {
    Path(Path),
    Val(Value),
}

/// Lambdas bind index 0 in the body; objects bind index 0 in both the
/// self type and the definitions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Value {
    Lam(Binder, Box<Type>, Box<Term>),
    Nu(Binder, Box<Type>, Vec<Def>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum DefRhs {
    Field(Stable),
    Type(Type),
}

/// One member definition. Spans are ignored by equality.
#[derive(Clone, Debug)]
pub struct Def {
    pub label: String,
    pub rhs: DefRhs,
    pub span: Span,
}

impl Def {
    pub fn field(label: impl Into<String>, init: Stable) -> Def {
        Def { label: label.into(), rhs: DefRhs::Field(init), span: Span::default() }
    }

    pub fn ty(label: impl Into<String>, t: Type) -> Def {
        Def { label: label.into(), rhs: DefRhs::Type(t), span: Span::default() }
    }

    pub fn is_type(&self) -> bool {
        matches!(self.rhs, DefRhs::Type(_))
    }
}

impl PartialEq for Def {
    fn eq(&self, other: &Def) -> bool {
        self.label == other.label && self.rhs == other.rhs
    }
}

impl Eq for Def {}

impl Hash for Def {
    fn hash<H: Hasher>(&self, h: &mut H) {
        self.label.hash(h);
        self.rhs.hash(h);
    }
}

/// Terms in administrative normal form. `Let` binds index 0 in `body`; the
/// optional result annotation is outside that scope.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Stable(Stable),
    App(Path, Path),
    Let { binder: Binder, bound: Box<Term>, body: Box<Term>, ann: Option<Box<Type>> },
}

impl Term {
    pub fn path(p: Path) -> Term {
        Term::Stable(Stable::Path(p))
    }

    pub fn val(v: Value) -> Term {
        Term::Stable(Stable::Val(v))
    }

    pub fn app(p: Path, q: Path) -> Term {
        Term::App(p, q)
    }

    pub fn let_(x: impl Into<String>, bound: Term, body: Term) -> Term {
        Term::Let { binder: Binder::new(x), bound: Box::new(bound), body: Box::new(body), ann: None }
    }

    pub fn let_ann(x: impl Into<String>, bound: Term, ann: Type, body: Term) -> Term {
        Term::Let {
            binder: Binder::new(x),
            bound: Box::new(bound),
            body: Box::new(body),
            ann: Some(Box::new(ann)),
        }
    }

    pub fn as_path(&self) -> Option<&Path> {
        match self {
            Term::Stable(Stable::Path(p)) => Some(p),
            _ => None,
        }
    }

    pub fn as_value(&self) -> Option<&Value> {
        match self {
            Term::Stable(Stable::Val(v)) => Some(v),
            _ => None,
        }
    }

    /// Paths and values.
    pub fn is_normal_form(&self) -> bool {
        matches!(self, Term::Stable(_))
    }
}

impl Value {
    pub fn lam(x: impl Into<String>, param: Type, body: Term) -> Value {
        Value::Lam(Binder::new(x), Box::new(param), Box::new(body))
    }

    pub fn nu(x: impl Into<String>, self_ty: Type, defs: Vec<Def>) -> Value {
        Value::Nu(Binder::new(x), Box::new(self_ty), defs)
    }

    pub fn binder(&self) -> &Binder {
        match self {
            Value::Lam(b, ..) | Value::Nu(b, ..) => b,
        }
    }

    /// The initializer of field `a`, if this is an object defining it.
    pub fn field(&self, a: &str) -> Option<&Stable> {
        match self {
            Value::Nu(_, _, defs) => defs.iter().find_map(|d| match &d.rhs {
                DefRhs::Field(s) if d.label == a => Some(s),
                _ => None,
            }),
            Value::Lam(..) => None,
        }
    }
}

impl From<Path> for Stable {
    fn from(p: Path) -> Stable {
        Stable::Path(p)
    }
}

impl From<Value> for Stable {
    fn from(v: Value) -> Stable {
        Stable::Val(v)
    }
}

impl From<Stable> for Term {
    fn from(s: Stable) -> Term {
        Term::Stable(s)
    }
}

/// Labels whose initial is uppercase name type members.
pub fn is_type_label(label: &str) -> bool {
    label.chars().next().is_some_and(|c| c.is_ascii_uppercase())
}
