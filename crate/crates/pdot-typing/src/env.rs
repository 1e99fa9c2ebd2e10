//! Typing environments.

use std::fmt;
use std::rc::Rc;
use std::sync::atomic::{AtomicU64, Ordering};

use pdot_parser::pretty_type;
use pdot_syntax::{fresh_name, Type};
use thiserror::Error;

static NEXT_STAMP: AtomicU64 = AtomicU64::new(1);

#[derive(Debug)]
struct Node {
    name: String,
    ty: Type,
    /// Unique per binding event; caches key on it so that a name reused in a
    /// sibling scope never sees stale facts.
    stamp: u64,
    next: Option<Rc<Node>>,
}

/// An ordered list of bindings `x: T`, newest last.
///
/// Names are pairwise distinct. Extension is persistent: the original
/// environment is left untouched and shares its tail with the result.
#[derive(Clone, Debug, Default)]
pub struct Env {
    head: Option<Rc<Node>>,
    len: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnvError {
    #[error("`{0}` is bound twice")]
    Duplicate(String),
}

impl Env {
    pub fn new() -> Env {
        Env::default()
    }

    pub fn from_bindings<I, S>(bindings: I) -> Result<Env, EnvError>
    where
        I: IntoIterator<Item = (S, Type)>,
        S: Into<String>,
    {
        let mut env = Env::new();
        for (name, ty) in bindings {
            env = env.try_extend(name, ty)?;
        }
        Ok(env)
    }

    pub fn try_extend(&self, name: impl Into<String>, ty: Type) -> Result<Env, EnvError> {
        let name = name.into();
        if self.contains(&name) {
            return Err(EnvError::Duplicate(name));
        }
        Ok(self.extend(name, ty))
    }

    /// Adds a binding; the caller guarantees `name` is not yet bound.
    pub fn extend(&self, name: impl Into<String>, ty: Type) -> Env {
        let name = name.into();
        debug_assert!(!self.contains(&name), "{name} already bound");
        let stamp = NEXT_STAMP.fetch_add(1, Ordering::Relaxed);
        Env { head: Some(Rc::new(Node { name, ty, stamp, next: self.head.clone() })), len: self.len + 1 }
    }

    fn nodes(&self) -> impl Iterator<Item = &Node> {
        std::iter::successors(self.head.as_deref(), |n| n.next.as_deref())
    }

    fn node(&self, name: &str) -> Option<&Node> {
        self.nodes().find(|n| n.name == name)
    }

    pub fn lookup(&self, name: &str) -> Option<&Type> {
        self.node(name).map(|n| &n.ty)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.node(name).is_some()
    }

    pub(crate) fn stamp(&self, name: &str) -> Option<u64> {
        self.node(name).map(|n| n.stamp)
    }

    /// Identifies this exact environment among those built in one process.
    pub(crate) fn top_stamp(&self) -> u64 {
        self.head.as_ref().map_or(0, |n| n.stamp)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Bindings oldest first.
    pub fn bindings(&self) -> Vec<(&str, &Type)> {
        let mut out: Vec<_> = self.nodes().map(|n| (n.name.as_str(), &n.ty)).collect();
        out.reverse();
        out
    }

    /// A name based on `hint` that is not bound here.
    pub fn fresh(&self, hint: &str) -> String {
        fresh_name(hint, |c| self.contains(c))
    }
}

impl fmt::Display for Env {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (x, t)) in self.bindings().into_iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x}: {}", pretty_type(t))?;
        }
        Ok(())
    }
}
