//! Reading and parsing program files.

use std::fs;
use std::path::Path;

use pdot_parser::{parse_program, Diagnostic, SourceProgram};
use pdot_syntax::Term;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{}", .rendered.join("\n"))]
    Parse { rendered: Vec<String>, json: Vec<serde_json::Value> },
}

/// A parsed program with its source, for rendering diagnostics.
pub struct Loaded {
    pub src: SourceProgram,
    pub term: Term,
}

impl Loaded {
    pub fn render(&self, d: &Diagnostic) -> String {
        d.render(&self.src)
    }
}

pub fn load(path: &Path) -> Result<Loaded, LoadError> {
    let origin = path.display().to_string();
    let text = fs::read_to_string(path).map_err(|source| LoadError::Io { path: origin.clone(), source })?;
    let src = SourceProgram::new(text, origin);
    match parse_program(&src) {
        Ok(term) => Ok(Loaded { src, term }),
        Err(ds) => Err(LoadError::Parse {
            rendered: ds.iter().map(|d| d.render(&src)).collect(),
            json: ds.iter().map(|d| d.to_json(&src)).collect(),
        }),
    }
}
