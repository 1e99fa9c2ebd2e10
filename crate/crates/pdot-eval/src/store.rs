//! Value stores and configurations.

use std::fmt;
use std::sync::Arc;

use pdot_parser::{pretty_term, pretty_value};
use pdot_syntax::{fresh_name, Term, Value};

#[derive(Debug)]
struct Node {
    name: String,
    value: Value,
    next: Option<Arc<Node>>,
}

/// An ordered map `x ↦ v`, newest last. Extension is persistent and shares
/// the existing bindings, so a store never changes once built.
#[derive(Clone, Debug, Default)]
pub struct Store {
    head: Option<Arc<Node>>,
    len: usize,
}

impl Store {
    pub fn new() -> Store {
        Store::default()
    }

    /// Adds a binding; the caller guarantees `name` is not yet bound.
    pub fn extend(&self, name: impl Into<String>, value: Value) -> Store {
        let name = name.into();
        debug_assert!(!self.contains(&name), "{name} already bound");
        Store { head: Some(Arc::new(Node { name, value, next: self.head.clone() })), len: self.len + 1 }
    }

    fn nodes(&self) -> impl Iterator<Item = &Node> {
        std::iter::successors(self.head.as_deref(), |n| n.next.as_deref())
    }

    pub fn get(&self, name: &str) -> Option<&Value> {
        self.nodes().find(|n| n.name == name).map(|n| &n.value)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.get(name).is_some()
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Bindings oldest first.
    pub fn bindings(&self) -> Vec<(&str, &Value)> {
        let mut out: Vec<_> = self.nodes().map(|n| (n.name.as_str(), &n.value)).collect();
        out.reverse();
        out
    }

    /// `hint` itself when unbound, otherwise `hint$1`, `hint$2`, ...
    pub fn fresh(&self, hint: &str) -> String {
        fresh_name(hint, |n| self.contains(n))
    }

    /// True when `other` extends `self` without touching existing bindings.
    pub fn is_prefix_of(&self, other: &Store) -> bool {
        let (mine, theirs) = (self.bindings(), other.bindings());
        theirs.len() >= mine.len() && theirs[..mine.len()] == mine[..]
    }
}

impl fmt::Display for Store {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (x, v)) in self.bindings().into_iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x} -> {}", pretty_value(v))?;
        }
        Ok(())
    }
}

/// A store paired with the term being evaluated.
#[derive(Clone, Debug)]
pub struct Configuration {
    pub store: Store,
    pub term: Term,
}

impl Configuration {
    pub fn new(term: Term) -> Configuration {
        Configuration { store: Store::new(), term }
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} | {}", self.store, pretty_term(&self.term))
    }
}
