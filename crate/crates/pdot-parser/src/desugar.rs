//! Object notation with inferred self types.
//!
//! `nu(x => d; ...)` stands for an object whose self type is the intersection
//! of one declaration per definition:
//!
//! | definition              | declaration              |
//! |-------------------------|--------------------------|
//! | `A = T`                 | `{type A: T .. T}`       |
//! | `a = q`                 | `{a: q.type}`            |
//! | `a = nu(y: T){..}`      | `{a: mu(y) T}`           |
//! | `a : all(z: S) U = lam` | `{a: all(z: S) U}`       |

use pdot_syntax::{Binder, Def, DefRhs, Path, Span, Stable, Type, Value};
use thiserror::Error;

/// Right-hand side of a member in the abbreviated notation.
#[derive(Clone, Debug, PartialEq)]
pub enum SugarRhs {
    Type(Type),
    Path(Path),
    /// A nested object, already in core form.
    Object(Value),
    /// A lambda with its member annotation, if one was written.
    Lambda { ann: Option<Type>, lam: Value },
}

#[derive(Clone, Debug, PartialEq)]
pub struct SugarDef {
    pub label: String,
    pub rhs: SugarRhs,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DesugarError {
    #[error("lambda member `{label}` needs a type annotation `{label}: all(x: S) T = lam(...)`")]
    UnannotatedLambda { label: String, span: Span },
    #[error("label `{label}` is defined more than once")]
    DuplicateLabel { label: String, span: Span },
}

impl DesugarError {
    pub fn span(&self) -> Span {
        match self {
            DesugarError::UnannotatedLambda { span, .. } | DesugarError::DuplicateLabel { span, .. } => *span,
        }
    }
}

/// Builds the core object with its reconstructed self type.
pub fn desugar_object(binder: Binder, defs: Vec<SugarDef>) -> Result<Value, DesugarError> {
    let mut decls = Vec::with_capacity(defs.len());
    let mut core: Vec<Def> = Vec::with_capacity(defs.len());
    for d in defs {
        if core.iter().any(|c| c.label == d.label) {
            return Err(DesugarError::DuplicateLabel { label: d.label, span: d.span });
        }
        let (decl, rhs) = match d.rhs {
            SugarRhs::Type(t) => (Type::typ(&d.label, t.clone(), t.clone()), DefRhs::Type(t)),
            SugarRhs::Path(q) => (Type::fld(&d.label, Type::Sngl(q.clone())), DefRhs::Field(Stable::Path(q))),
            SugarRhs::Object(v) => {
                let decl = match &v {
                    Value::Nu(b, t, _) => Type::fld(&d.label, Type::Rec(b.clone(), t.clone())),
                    Value::Lam(..) => unreachable!("objects only"),
                };
                (decl, DefRhs::Field(Stable::Val(v)))
            }
            SugarRhs::Lambda { ann: Some(ann), lam } => {
                (Type::fld(&d.label, ann), DefRhs::Field(Stable::Val(lam)))
            }
            SugarRhs::Lambda { ann: None, .. } => {
                return Err(DesugarError::UnannotatedLambda { label: d.label, span: d.span })
            }
        };
        decls.push(decl);
        core.push(Def { label: d.label, rhs, span: d.span });
    }
    Ok(Value::Nu(binder, Box::new(Type::and_all(decls)), core))
}
