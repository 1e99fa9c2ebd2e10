#![allow(dead_code)]

use std::fs;
use std::path::PathBuf;

use pdot_parser::{parse_open_term, parse_path, parse_program, parse_type, SourceProgram};
use pdot_syntax::{Path, Term, Type};
use pdot_typing::{Env, Judgement};

pub fn ty(text: &str) -> Type {
    parse_type(text).unwrap_or_else(|d| panic!("{text}: {}", d.message))
}

pub fn path(text: &str) -> Path {
    parse_path(text).unwrap()
}

pub fn term(text: &str) -> Term {
    parse_open_term(text).unwrap_or_else(|d| panic!("{text}: {}", d.message))
}

pub fn env(bindings: &[(&str, &str)]) -> Env {
    Env::from_bindings(bindings.iter().map(|(x, t)| (*x, ty(t)))).unwrap()
}

pub fn corpus(name: &str) -> Term {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(name);
    let text = fs::read_to_string(&p).unwrap();
    parse_program(&SourceProgram::new(text, name)).unwrap()
}

pub fn verdict<T>(j: &Judgement<T>) -> &'static str {
    j.verdict()
}

/// Independent oracle: enumerate the chain by testing every prefix for a
/// singleton among its precise types, shortest first.
pub fn chain_oracle(g: &Env, p: &Path) -> (Vec<Path>, bool) {
    let mut chain = vec![p.clone()];
    loop {
        let cur = chain.last().unwrap().clone();
        let mut next = None;
        for k in 0..=cur.fields.len() {
            let prefix = Path { root: cur.root.clone(), fields: cur.fields[..k].to_vec() };
            if let Some(Type::Sngl(q)) = pdot_typing::precise_types(g, &prefix).into_iter().find(|t| matches!(t, Type::Sngl(_))) {
                let mut fields = q.fields.clone();
                fields.extend_from_slice(&cur.fields[k..]);
                next = Some(Path { root: q.root.clone(), fields });
                break;
            }
        }
        match next {
            None => return (chain, false),
            Some(n) if chain.contains(&n) => {
                let i = chain.iter().position(|c| *c == n).unwrap();
                return (chain[i..].to_vec(), true);
            }
            // Ever-growing chains are cut off after the same number of steps.
            Some(_) if chain.len() > pdot_typing::CHAIN_LIMIT => return (chain, true),
            Some(n) => chain.push(n),
        }
    }
}

