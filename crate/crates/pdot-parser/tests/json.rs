use pdot_parser::*;
use pdot_syntax::*;
use serde_json::json;

fn parse(text: &str) -> Term {
    parse_program(&SourceProgram::stdin(text)).unwrap()
}

#[test]
fn variable_path() {
    let t = Term::path(Path::var("x"));
    assert_eq!(term_json(&t), json!({"path": {"root": "x", "fields": []}}));
}

#[test]
fn bottom_type() {
    assert_eq!(type_json(&Type::Bot), json!({"type": "Bot"}));
}

#[test]
fn let_node_uses_bound_indices() {
    let t = parse("let x = nu(x: Top) {} in x.a");
    let j = term_json(&t);
    assert_eq!(j["let"], json!("x"));
    assert_eq!(j["bound"], json!({"nu": "x", "self": {"type": "Top"}, "defs": []}));
    assert_eq!(j["body"], json!({"path": {"root": {"bound": 0}, "fields": ["a"]}}));
    assert!(j.get("ann").is_none());
}

#[test]
fn dump_is_byte_stable() {
    let text = "let x = nu(x => A = Top; a = x; f: all(y: x.A) y.type = lam(y: x.A) y) in [Top] x.f x";
    let a = dump_ast(&parse(text));
    let b = dump_ast(&parse(text));
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["ann"], json!({"type": "Top"}));
    assert_eq!(v["body"], json!({"app": [
        {"root": {"bound": 0}, "fields": ["f"]},
        {"root": {"bound": 0}, "fields": []}
    ]}));
}
