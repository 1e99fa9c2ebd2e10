//! Concrete syntax for pDOT.
//!
//! ```text
//! term  ::= let x = term in [type]? term | p q | p | value | (term)
//! value ::= lam(x: type) term | nu(x: type) { defs } | nu(x => sugar-defs)
//! type  ::= all(x: type) type | mu(x) type | type /\ type | Top | Bot
//!         | {type A: type .. type} | {a: type} | p.A | p.type | mu(x: type)
//! ```
//!
//! A dotted uppercase label is a type projection; a lowercase one is a field
//! selection. `//` starts a line comment.

pub mod desugar;
pub mod diagnostic;
pub mod json;
pub mod lexer;
pub mod parser;
pub mod pretty;

pub use desugar::{desugar_object, DesugarError, SugarDef, SugarRhs};
pub use diagnostic::{Diagnostic, Severity, SourceProgram};
pub use json::{dump_ast, path_json, term_json, type_json};
pub use parser::{parse_open_term, parse_path, parse_program, parse_type};
pub use pretty::{pretty_defs, pretty_path, pretty_stable, pretty_term, pretty_type, pretty_value};
