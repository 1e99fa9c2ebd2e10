//! Three-valued answers and the fuel that bounds them.

use std::cell::Cell;

use pdot_parser::Diagnostic;
use pdot_syntax::Span;
use thiserror::Error;

/// Rule applications allowed per top-level query.
pub const DEFAULT_FUEL: u64 = 10_000;

/// A rejection naming the rule whose premises could not be met.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{rule}: {message}")]
pub struct TypeError {
    pub rule: String,
    pub message: String,
    /// The innermost definition or binder enclosing the failure.
    pub span: Option<Span>,
}

impl TypeError {
    pub fn new(rule: impl Into<String>, message: impl Into<String>) -> TypeError {
        TypeError { rule: rule.into(), message: message.into(), span: None }
    }

    pub fn to_diagnostic(&self) -> Diagnostic {
        Diagnostic::error(self.rule.clone(), self.message.clone(), self.span.unwrap_or_default())
    }
}

/// `Yes` with evidence, `No` with a reason, or `Unknown` when fuel ran out.
#[derive(Debug, Clone)]
pub enum Judgement<T> {
    Yes(T),
    No(TypeError),
    Unknown,
}

impl<T> Judgement<T> {
    pub fn is_yes(&self) -> bool {
        matches!(self, Judgement::Yes(_))
    }

    pub fn is_no(&self) -> bool {
        matches!(self, Judgement::No(_))
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, Judgement::Unknown)
    }

    pub fn yes(self) -> Option<T> {
        match self {
            Judgement::Yes(t) => Some(t),
            _ => None,
        }
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> Judgement<U> {
        match self {
            Judgement::Yes(t) => Judgement::Yes(f(t)),
            Judgement::No(e) => Judgement::No(e),
            Judgement::Unknown => Judgement::Unknown,
        }
    }

    /// `"yes"`, `"no"` or `"unknown"`.
    pub fn verdict(&self) -> &'static str {
        match self {
            Judgement::Yes(_) => "yes",
            Judgement::No(_) => "no",
            Judgement::Unknown => "unknown",
        }
    }
}

/// Internal failure: either a definite rejection or fuel exhaustion.
///
/// Exhaustion is never caught by a search branch; it unwinds the whole query,
/// so a query that finishes with some fuel performs exactly the same steps
/// with more.
#[derive(Debug, Clone)]
pub(crate) enum Fail {
    No(TypeError),
    Fuel,
}

impl Fail {
    pub(crate) fn no(rule: impl Into<String>, message: impl Into<String>) -> Fail {
        Fail::No(TypeError::new(rule, message))
    }

    /// Attributes the failure to `span` unless an inner span is already set.
    pub(crate) fn at(self, span: Span) -> Fail {
        match self {
            Fail::No(mut e) if e.span.is_none() && span != Span::default() => {
                e.span = Some(span);
                Fail::No(e)
            }
            other => other,
        }
    }
}

pub(crate) type R<T> = Result<T, Fail>;

impl<T> From<R<T>> for Judgement<T> {
    fn from(r: R<T>) -> Judgement<T> {
        match r {
            Ok(t) => Judgement::Yes(t),
            Err(Fail::No(e)) => Judgement::No(e),
            Err(Fail::Fuel) => Judgement::Unknown,
        }
    }
}

/// A countdown of rule applications.
#[derive(Debug)]
pub struct Fuel {
    limit: u64,
    used: Cell<u64>,
}

impl Fuel {
    pub fn new(limit: u64) -> Fuel {
        Fuel { limit, used: Cell::new(0) }
    }

    pub(crate) fn tick(&self) -> R<()> {
        let used = self.used.get();
        if used >= self.limit {
            return Err(Fail::Fuel);
        }
        self.used.set(used + 1);
        Ok(())
    }

    pub fn used(&self) -> u64 {
        self.used.get()
    }

    pub fn remaining(&self) -> u64 {
        self.limit - self.used.get()
    }
}
