#![allow(dead_code)]

use std::fs;
use std::path::PathBuf;

use pdot_parser::{parse_open_term, parse_path, parse_program, SourceProgram};
use pdot_syntax::{Path, Stable, Term, Value};

pub fn corpus(name: &str) -> Term {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(name);
    let text = fs::read_to_string(&p).unwrap();
    parse_program(&SourceProgram::new(text, name)).unwrap()
}

pub fn path(text: &str) -> Path {
    parse_path(text).unwrap()
}

pub fn value(text: &str) -> Value {
    match parse_open_term(text).unwrap() {
        Term::Stable(Stable::Val(v)) => v,
        other => panic!("not a value: {other:?}"),
    }
}

pub fn stable(text: &str) -> Stable {
    match parse_open_term(text).unwrap() {
        Term::Stable(s) => s,
        other => panic!("not stable: {other:?}"),
    }
}
