mod common;

use common::ty;
use pdot_typing::*;

#[test]
fn tight_bounds_cases() {
    assert!(tight_bounds(&ty("{A: Top .. Top}")));
    assert!(!tight_bounds(&ty("{A: Bot .. Top}")));
    // Function types are opaque.
    assert!(tight_bounds(&ty("all(x: {A: Bot .. Top}) Top")));
    assert!(!tight_bounds(&ty("mu(x) {a: {B: Bot .. Top}}")));
    assert!(!tight_bounds(&ty("{A: Top .. Top} /\\ {B: Bot .. Top}")));
    assert!(tight_bounds(&ty("{a: all(y: Top) {B: Bot .. Top}}")));
}

#[test]
fn inertness_cases() {
    assert!(inert(&ty("all(x: Top) Top")));
    assert!(inert(&ty("mu(x) {A: Top .. Top} /\\ {a: x.b.type}")));
    assert!(!inert(&ty("mu(x) {A: Bot .. Top}")));
    assert!(!inert(&Type::Top));
    // A field is a record only when its type is a singleton or inert.
    assert!(!inert(&ty("mu(x) {a: {A: Top .. Top}}")));
    assert!(inert(&ty("mu(x) {a: mu(y) {A: Top .. Top}}")));
    assert!(record_type(&ty("{a: x.type} /\\ {f: all(y: Top) Top}")));
}

#[test]
fn inert_env_cases() {
    let good = common::env(&[("x", "mu(x) {a: x.type}"), ("f", "all(y: Top) Top")]);
    assert!(inert_env(&good));
    let bad = common::env(&[("x", "mu(x) {a: x.type}"), ("y", "{A: Bot .. Top}")]);
    assert!(!inert_env(&bad));
    assert!(inert_env(&Env::new()));
}

use pdot_syntax::Type;
