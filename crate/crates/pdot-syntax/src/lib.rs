//! Abstract syntax for pDOT with locally nameless binding.
//!
//! Paths are object identities, types include projections `p.A` and
//! singletons `p.type`, and terms are in administrative normal form.

pub mod ast;
pub mod binding;
pub mod repl;

#[cfg(feature = "arbitrary")]
pub mod arbitrary;

pub use ast::{is_type_label, Binder, Def, DefRhs, Path, Span, Stable, Term, Type, Value, Var};
pub use binding::{
    close, free_names, free_paths, fresh_name, is_locally_closed, mentions, open, open_at, open_var,
    subst_name, Syntax,
};
pub use repl::{contains_prefix, occurrences, repl_all, repl_candidates, replace_nth, replace_prefix, ReplError};
