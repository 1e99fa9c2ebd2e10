//! Independent re-checking of derivations.
//!
//! Each node is checked against the declarative rule it names, using only
//! syntactic operations (opening, replacement, equality) and the environment
//! rebuilt from the binders recorded in the tree. Nothing here calls back
//! into the search.

use std::collections::HashSet;
use std::sync::Arc;

use pdot_syntax::{mentions, open, open_var, repl_candidates, Def, DefRhs, Path, Stable, Term, Type, Value};
use thiserror::Error;

use crate::deriv::{Claim, Deriv, Rule};
use crate::env::Env;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{rule}: {message} (at {claim})")]
pub struct ReplayError {
    pub rule: String,
    pub message: String,
    pub claim: String,
}

type Check = Result<(), String>;

fn ensure(cond: bool, message: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(message())
    }
}

fn typ(c: &Claim) -> Result<(&Term, &Type), String> {
    match c {
        Claim::Typ { term, ty } => Ok((term, ty)),
        _ => Err("premise is not a typing judgement".into()),
    }
}

fn sub(c: &Claim) -> Result<(&Type, &Type), String> {
    match c {
        Claim::Sub { lower, upper } => Ok((lower, upper)),
        _ => Err("premise is not a subtyping judgement".into()),
    }
}

fn defs_claim(c: &Claim) -> Result<(&Path, &[Def], &Type), String> {
    match c {
        Claim::Defs { this, defs, ty } => Ok((this, defs, ty)),
        _ => Err("premise is not a definition judgement".into()),
    }
}

fn as_path(t: &Term) -> Result<&Path, String> {
    t.as_path().ok_or_else(|| "rule applies to paths only".to_string())
}

/// Premise `i` must be a typing of the path `p`; returns its type.
fn path_premise<'a>(d: &'a Deriv, i: usize, p: &Path) -> Result<&'a Type, String> {
    let (term, ty) = typ(&d.premises[i].concl)?;
    ensure(term.as_path() == Some(p), || format!("premise {i} types the wrong term"))?;
    Ok(ty)
}

fn tight(t: &Type) -> bool {
    match t {
        Type::Typ(_, lo, hi) => lo == hi,
        Type::Rec(_, u) | Type::Fld(_, u) => tight(u),
        Type::And(l, r) => tight(l) && tight(r),
        _ => true,
    }
}

fn sorted_labels(defs: &[Def]) -> Vec<&str> {
    let mut v: Vec<&str> = defs.iter().map(|d| d.label.as_str()).collect();
    v.sort_unstable();
    v
}

struct Replayer {
    done: HashSet<(usize, u64)>,
    nodes: usize,
}

/// Checks every node of `d` under `env`; returns the number of nodes visited.
pub fn replay(env: &Env, d: &Arc<Deriv>) -> Result<usize, ReplayError> {
    let mut r = Replayer { done: HashSet::new(), nodes: 0 };
    r.node(env, d)?;
    Ok(r.nodes)
}

impl Replayer {
    fn node(&mut self, env: &Env, d: &Arc<Deriv>) -> Result<(), ReplayError> {
        let key = (Arc::as_ptr(d) as usize, env.top_stamp());
        if self.done.contains(&key) {
            return Ok(());
        }
        self.nodes += 1;
        let fail = |message: String| ReplayError { rule: d.rule.name().into(), message, claim: d.concl.render() };
        let extended = self.local(env, d).map_err(fail)?;
        for (i, p) in d.premises.iter().enumerate() {
            let penv = match &extended {
                Some((j, e)) if *j == i => e,
                _ => env,
            };
            self.node(penv, p)?;
        }
        self.done.insert(key);
        Ok(())
    }

    /// Checks the rule instance at `d`; returns the premise index that lives
    /// in an extended environment, if any, with that environment.
    fn local(&mut self, env: &Env, d: &Deriv) -> Result<Option<(usize, Env)>, String> {
        let arity = match d.rule {
            Rule::Var | Rule::Top | Rule::Bot | Rule::Refl | Rule::And1 | Rule::And2 | Rule::DefTyp => 0,
            Rule::AllI(_) | Rule::NewI(_) | Rule::FldE | Rule::FldI | Rule::RecI | Rule::RecE => 1,
            Rule::FldFld | Rule::SubSel | Rule::SelSub | Rule::DefAll | Rule::DefNew | Rule::DefPath => 1,
            _ => 2,
        };
        ensure(d.premises.len() == arity, || format!("expected {arity} premises, found {}", d.premises.len()))?;
        let fresh = |x: &str| ensure(!env.contains(x), || format!("{x} is not fresh"));
        match (&d.rule, &d.concl) {
            (Rule::Var, Claim::Typ { term, ty }) => {
                let p = as_path(term)?;
                ensure(p.fields.is_empty(), || "Var types variables only".into())?;
                let x = p.root_name().ok_or("bound variable")?;
                ensure(env.lookup(x) == Some(ty), || format!("{x} is not bound to this type"))?;
            }
            (Rule::AllI(x), Claim::Typ { term, ty }) => {
                fresh(x)?;
                let (Some(Value::Lam(_, s, body)), Type::All(_, s2, u)) = (term.as_value(), ty) else {
                    return Err("expects a lambda typed at a function type".into());
                };
                ensure(s == s2, || "parameter types differ".into())?;
                let (pt, pty) = typ(&d.premises[0].concl)?;
                ensure(*pt == open_var(&**body, x), || "premise does not type the opened body".into())?;
                ensure(*pty == open_var(&**u, x), || "premise does not give the opened result type".into())?;
                return Ok(Some((0, env.extend(x.clone(), (**s).clone()))));
            }
            (Rule::AllE, Claim::Typ { term, ty }) => {
                let Term::App(p, q) = term else { return Err("expects an application".into()) };
                let Type::All(_, s, u) = path_premise(d, 0, p)? else {
                    return Err("function premise is not a function type".into());
                };
                ensure(path_premise(d, 1, q)? == &**s, || "argument premise has the wrong type".into())?;
                ensure(*ty == open(&**u, q), || "result is not the opened function result".into())?;
            }
            (Rule::NewI(x), Claim::Typ { term, ty }) => {
                fresh(x)?;
                let (Some(Value::Nu(_, t, ds)), Type::Rec(_, t2)) = (term.as_value(), ty) else {
                    return Err("expects an object typed at a recursive type".into());
                };
                ensure(t == t2, || "declared and concluded self types differ".into())?;
                let (this, pdefs, pty) = defs_claim(&d.premises[0].concl)?;
                let opened = open_var(&**t, x);
                ensure(*this == Path::var(x.clone()), || "definitions are not checked at the fresh name".into())?;
                ensure(pdefs == &open_var(ds, x)[..], || "premise definitions are not the opened ones".into())?;
                ensure(*pty == opened, || "premise type is not the opened self type".into())?;
                return Ok(Some((0, env.extend(x.clone(), opened))));
            }
            (Rule::FldE, Claim::Typ { term, ty }) => {
                let (p, a) = as_path(term)?.split_last().ok_or("Fld-E needs a selection")?;
                let t = path_premise(d, 0, &p)?;
                ensure(*t == Type::fld(a, ty.clone()), || "premise is not the field declaration".into())?;
            }
            (Rule::FldI, Claim::Typ { term, ty }) => {
                let p = as_path(term)?;
                let Type::Fld(a, u) = ty else { return Err("conclusion is not a field type".into()) };
                ensure(path_premise(d, 0, &p.sel(a))? == &**u, || "premise types the field at another type".into())?;
            }
            (Rule::Let(x), Claim::Typ { term, ty }) => {
                fresh(x)?;
                let Term::Let { bound, body, ann, .. } = term else { return Err("expects a let".into()) };
                let (bt, bty) = typ(&d.premises[0].concl)?;
                ensure(bt == &**bound, || "first premise does not type the bound term".into())?;
                let (ut, uty) = typ(&d.premises[1].concl)?;
                ensure(*ut == open_var(&**body, x), || "second premise does not type the opened body".into())?;
                ensure(uty == ty, || "body type differs from the conclusion".into())?;
                ensure(!mentions(ty, x), || format!("result type mentions {x}"))?;
                ensure(ann.as_deref().is_none_or(|a| a == ty), || "annotation differs from the result".into())?;
                return Ok(Some((1, env.extend(x.clone(), bty.clone()))));
            }
            (Rule::SnglTrans, Claim::Typ { term, ty }) => {
                let p = as_path(term)?;
                let Type::Sngl(q) = path_premise(d, 0, p)? else { return Err("first premise is not a singleton".into()) };
                ensure(path_premise(d, 1, q)? == ty, || "alias has a different type".into())?;
            }
            (Rule::SnglE, Claim::Typ { term, ty }) => {
                let (p, a) = as_path(term)?.split_last().ok_or("Sngl-E needs a selection")?;
                let Type::Sngl(q) = path_premise(d, 0, &p)? else { return Err("first premise is not a singleton".into()) };
                let qa = q.sel(a);
                path_premise(d, 1, &qa)?;
                ensure(*ty == Type::Sngl(qa), || "conclusion is not the extended singleton".into())?;
            }
            (Rule::RecI, Claim::Typ { term, ty }) => {
                let p = as_path(term)?;
                let Type::Rec(_, body) = ty else { return Err("conclusion is not recursive".into()) };
                ensure(*path_premise(d, 0, p)? == open(&**body, p), || "premise is not the opened type".into())?;
            }
            (Rule::RecE, Claim::Typ { term, ty }) => {
                let p = as_path(term)?;
                let Type::Rec(_, body) = path_premise(d, 0, p)? else { return Err("premise is not recursive".into()) };
                ensure(*ty == open(&**body, p), || "conclusion is not the opened type".into())?;
            }
            (Rule::AndI, Claim::Typ { term, ty }) => {
                let p = as_path(term)?;
                let Type::And(l, r) = ty else { return Err("conclusion is not an intersection".into()) };
                ensure(path_premise(d, 0, p)? == &**l && path_premise(d, 1, p)? == &**r, || "premises do not match the components".into())?;
            }
            (Rule::Sub, Claim::Typ { term, ty }) => {
                let (t0, ty0) = typ(&d.premises[0].concl)?;
                let (lo, hi) = sub(&d.premises[1].concl)?;
                ensure(t0 == term && ty0 == lo && hi == ty, || "premises do not chain".into())?;
            }
            (Rule::Top, Claim::Sub { upper, .. }) => ensure(*upper == Type::Top, || "upper bound is not Top".into())?,
            (Rule::Bot, Claim::Sub { lower, .. }) => ensure(*lower == Type::Bot, || "lower bound is not Bot".into())?,
            (Rule::Refl, Claim::Sub { lower, upper }) => ensure(lower == upper, || "types differ".into())?,
            (Rule::Trans, Claim::Sub { lower, upper }) => {
                let (a, b) = sub(&d.premises[0].concl)?;
                let (c, e) = sub(&d.premises[1].concl)?;
                ensure(a == lower && b == c && e == upper, || "premises do not chain".into())?;
            }
            (Rule::And1 | Rule::And2, Claim::Sub { lower, upper }) => {
                let Type::And(l, r) = lower else { return Err("lower bound is not an intersection".into()) };
                let part = if d.rule == Rule::And1 { l } else { r };
                ensure(**part == *upper, || "upper bound is not the component".into())?;
            }
            (Rule::SubAnd, Claim::Sub { lower, upper }) => {
                let Type::And(l, r) = upper else { return Err("upper bound is not an intersection".into()) };
                ensure(sub(&d.premises[0].concl)? == (lower, &**l), || "left premise mismatch".into())?;
                ensure(sub(&d.premises[1].concl)? == (lower, &**r), || "right premise mismatch".into())?;
            }
            (Rule::FldFld, Claim::Sub { lower, upper }) => {
                let (Type::Fld(a, s), Type::Fld(b, t)) = (lower, upper) else { return Err("expects field types".into()) };
                ensure(a == b && sub(&d.premises[0].concl)? == (&**s, &**t), || "premise mismatch".into())?;
            }
            (Rule::TypTyp, Claim::Sub { lower, upper }) => {
                let (Type::Typ(a, s1, t1), Type::Typ(b, s2, t2)) = (lower, upper) else {
                    return Err("expects type declarations".into());
                };
                ensure(a == b, || "labels differ".into())?;
                ensure(sub(&d.premises[0].concl)? == (&**s2, &**s1), || "lower-bound premise mismatch".into())?;
                ensure(sub(&d.premises[1].concl)? == (&**t1, &**t2), || "upper-bound premise mismatch".into())?;
            }
            (Rule::SubSel, Claim::Sub { lower, upper }) => {
                let Type::Sel(p, a) = upper else { return Err("upper bound is not a selection".into()) };
                let Type::Typ(b, lo, _) = path_premise(d, 0, p)? else { return Err("premise is not a type declaration".into()) };
                ensure(a == b && **lo == *lower, || "premise bounds mismatch".into())?;
            }
            (Rule::SelSub, Claim::Sub { lower, upper }) => {
                let Type::Sel(p, a) = lower else { return Err("lower bound is not a selection".into()) };
                let Type::Typ(b, _, hi) = path_premise(d, 0, p)? else { return Err("premise is not a type declaration".into()) };
                ensure(a == b && **hi == *upper, || "premise bounds mismatch".into())?;
            }
            (Rule::SnglPq | Rule::SnglQp, Claim::Sub { lower, upper }) => {
                let (pt, pty) = typ(&d.premises[0].concl)?;
                let p = as_path(pt)?;
                let Type::Sngl(q) = pty else { return Err("first premise is not a singleton".into()) };
                path_premise(d, 1, q)?;
                let candidates =
                    if d.rule == Rule::SnglPq { repl_candidates(p, q, lower) } else { repl_candidates(q, p, lower) };
                ensure(candidates.contains(upper), || "upper bound is not a one-occurrence replacement".into())?;
            }
            (Rule::AllAll(x), Claim::Sub { lower, upper }) => {
                fresh(x)?;
                let (Type::All(_, s1, t1), Type::All(_, s2, t2)) = (lower, upper) else {
                    return Err("expects function types".into());
                };
                ensure(sub(&d.premises[0].concl)? == (&**s2, &**s1), || "parameter premise mismatch".into())?;
                let (a, b) = sub(&d.premises[1].concl)?;
                ensure(*a == open_var(&**t1, x) && *b == open_var(&**t2, x), || "result premise mismatch".into())?;
                return Ok(Some((1, env.extend(x.clone(), (**s2).clone()))));
            }
            (Rule::DefTyp, Claim::Defs { defs, ty, .. }) => {
                let [Def { label, rhs: DefRhs::Type(t), .. }] = defs.as_slice() else {
                    return Err("expects one type definition".into());
                };
                ensure(*ty == Type::typ(label.clone(), t.clone(), t.clone()), || "declaration bounds are not the definition".into())?;
            }
            (Rule::DefAll, Claim::Defs { defs, ty, .. }) => {
                let [Def { label, rhs: DefRhs::Field(Stable::Val(lam @ Value::Lam(..))), .. }] = defs.as_slice() else {
                    return Err("expects one function definition".into());
                };
                let Type::Fld(a, u) = ty else { return Err("declaration is not a field".into()) };
                ensure(a == label && matches!(**u, Type::All(..)), || "declaration is not a function field".into())?;
                let (t, pty) = typ(&d.premises[0].concl)?;
                ensure(t.as_value() == Some(lam) && pty == &**u, || "premise mismatch".into())?;
            }
            (Rule::DefNew, Claim::Defs { this, defs, ty }) => {
                let [Def { label, rhs: DefRhs::Field(Stable::Val(Value::Nu(_, t, ds))), .. }] = defs.as_slice() else {
                    return Err("expects one object definition".into());
                };
                let Type::Fld(a, u) = ty else { return Err("declaration is not a field".into()) };
                let Type::Rec(_, t2) = &**u else { return Err("declaration is not recursive".into()) };
                ensure(a == label && t == t2, || "declared self type differs".into())?;
                ensure(tight(t), || "self type does not have tight bounds".into())?;
                let pa = this.sel(label);
                let (pthis, pdefs, pty) = defs_claim(&d.premises[0].concl)?;
                ensure(*pthis == pa, || "nested definitions are not checked at the field path".into())?;
                ensure(pdefs == &open(ds, &pa)[..] && *pty == open(&**t, &pa), || "premise is not opened at the field path".into())?;
            }
            (Rule::DefPath, Claim::Defs { defs, ty, .. }) => {
                let [Def { label, rhs: DefRhs::Field(Stable::Path(q)), .. }] = defs.as_slice() else {
                    return Err("expects one path definition".into());
                };
                ensure(*ty == Type::fld(label.clone(), Type::Sngl(q.clone())), || "declaration is not the singleton".into())?;
                path_premise(d, 0, q)?;
            }
            (Rule::AndDefI, Claim::Defs { this, defs, ty }) => {
                let Type::And(l, r) = ty else { return Err("declaration is not an intersection".into()) };
                let (t1, d1, ty1) = defs_claim(&d.premises[0].concl)?;
                let (t2, d2, ty2) = defs_claim(&d.premises[1].concl)?;
                ensure(t1 == this && t2 == this && ty1 == &**l && ty2 == &**r, || "premise mismatch".into())?;
                let (l1, l2) = (sorted_labels(d1), sorted_labels(d2));
                ensure(l1.iter().all(|a| !l2.contains(a)), || "definition domains overlap".into())?;
                let mut both: Vec<&Def> = d1.iter().chain(d2).collect();
                both.sort_by(|a, b| a.label.cmp(&b.label));
                let mut all: Vec<&Def> = defs.iter().collect();
                all.sort_by(|a, b| a.label.cmp(&b.label));
                ensure(both == all, || "premise definitions do not partition the conclusion".into())?;
            }
            _ => return Err("rule does not conclude this kind of judgement".into()),
        }
        Ok(None)
    }
}
