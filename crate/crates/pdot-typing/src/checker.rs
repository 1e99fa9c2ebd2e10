//! Goal-directed search for derivations.
//!
//! Paths are typed through a per-query table of facts: everything derivable
//! for a path by elimination, singleton propagation and upper bounds of type
//! selections. Checking a path against a type first looks the type up among
//! the facts and otherwise decomposes the goal (`&-I`, `Rec-I`, `Fld-I`,
//! lower bounds of selections) or falls back to subtyping a fact.

use std::cell::{Cell, RefCell};
use std::collections::{HashMap, HashSet};
use std::rc::Rc;
use std::sync::Arc;

use pdot_parser::{pretty_path, pretty_type};
use pdot_syntax::{
    close, mentions, occurrences, open, open_var, replace_nth, Binder, Def, DefRhs, Path, Stable, Term, Type, Value,
};

use crate::deriv::{Claim, Deriv, Rule};
use crate::env::Env;
use crate::inert::tight_bounds;
use crate::judgement::{Fail, Fuel, Judgement, TypeError, R};
use crate::precise::{alias_chain, alias_step, and_elim, push_unique, PathResolution, Typed};

/// Returns on success or fuel exhaustion; remembers a rejection and lets the
/// caller try the next alternative.
macro_rules! attempt {
    ($e:expr) => {
        match $e {
            Ok(v) => return Ok(v),
            Err(Fail::Fuel) => return Err(Fail::Fuel),
            Err(Fail::No(_)) => {}
        }
    };
    ($last:ident, $e:expr) => {
        match $e {
            Ok(v) => return Ok(v),
            Err(Fail::Fuel) => return Err(Fail::Fuel),
            Err(Fail::No(e)) => $last = Some(e),
        }
    };
}

/// Memoized facts, keyed by environment stamp and path.
type Facts = Rc<Vec<Typed>>;

/// Nested goals deeper than this give up like fuel exhaustion; keeps
/// ever-lengthening singleton paths from overflowing the stack.
pub const MAX_DEPTH: usize = 128;

/// Decrements the goal depth when dropped.
struct Depth<'a>(&'a Cell<usize>);

impl Drop for Depth<'_> {
    fn drop(&mut self) {
        self.0.set(self.0.get() - 1);
    }
}

struct Frame {
    key: (u64, Path),
    /// Lowest stack index of an in-progress computation this one observed.
    min_hit: usize,
}

/// One query's worth of search state: fuel, the fact table and the goals
/// currently being explored.
pub struct Checker {
    fuel: Fuel,
    depth: Cell<usize>,
    facts_memo: RefCell<HashMap<(u64, Path), Facts>>,
    facts_stack: RefCell<Vec<Frame>>,
    sub_goals: RefCell<HashSet<(u64, Type, Type)>>,
    path_goals: RefCell<HashSet<(u64, Path, Type)>>,
}

/// A single alias rewrite of one occurrence inside a type.
struct CanonStep {
    before: Type,
    after: Type,
    alias: Arc<Deriv>,
    typeable: Arc<Deriv>,
}

fn sub_leaf(rule: Rule, s: &Type, t: &Type) -> Arc<Deriv> {
    Deriv::new(rule, Claim::sub(s.clone(), t.clone()), vec![])
}

fn sub_bounds(d: &Deriv) -> (&Type, &Type) {
    match &d.concl {
        Claim::Sub { lower, upper } => (lower, upper),
        other => unreachable!("not a subtyping conclusion: {other:?}"),
    }
}

/// `S <: U` from `S <: T` and `T <: U`, dropping reflexive halves.
fn trans(a: Arc<Deriv>, b: Arc<Deriv>) -> Arc<Deriv> {
    if a.rule == Rule::Refl {
        return b;
    }
    if b.rule == Rule::Refl {
        return a;
    }
    let concl = Claim::sub(sub_bounds(&a).0.clone(), sub_bounds(&b).1.clone());
    Deriv::new(Rule::Trans, concl, vec![a, b])
}

/// `t : T` from `t : S` and `S <: T`.
fn subsume(d: Arc<Deriv>, s: Arc<Deriv>) -> Arc<Deriv> {
    if s.rule == Rule::Refl {
        return d;
    }
    let term = match &d.concl {
        Claim::Typ { term, .. } => term.clone(),
        other => unreachable!("not a typing conclusion: {other:?}"),
    };
    let ty = sub_bounds(&s).1.clone();
    Deriv::new(Rule::Sub, Claim::typ(term, ty), vec![d, s])
}

fn not_sub(s: &Type, t: &Type) -> Fail {
    Fail::no("Sub", format!("cannot show {} <: {}", pretty_type(s), pretty_type(t)))
}

fn member_label(t: &Type) -> Option<&str> {
    match t {
        Type::Fld(a, _) | Type::Typ(a, _, _) => Some(a),
        _ => None,
    }
}

fn labels(t: &Type) -> Vec<&str> {
    t.conjuncts().into_iter().filter_map(member_label).collect()
}

impl Checker {
    pub fn new(fuel: u64) -> Checker {
        Checker {
            fuel: Fuel::new(fuel),
            depth: Cell::new(0),
            facts_memo: RefCell::default(),
            facts_stack: RefCell::default(),
            sub_goals: RefCell::default(),
            path_goals: RefCell::default(),
        }
    }

    /// Spends one unit of fuel and opens a nested goal.
    fn enter(&self) -> R<Depth<'_>> {
        self.fuel.tick()?;
        let d = self.depth.get();
        if d >= MAX_DEPTH {
            return Err(Fail::Fuel);
        }
        self.depth.set(d + 1);
        Ok(Depth(&self.depth))
    }

    /// Rule applications spent so far.
    pub fn fuel_used(&self) -> u64 {
        self.fuel.used()
    }

    pub fn subtype(&self, env: &Env, s: &Type, t: &Type) -> Judgement<Arc<Deriv>> {
        self.sub(env, s, t).into()
    }

    pub fn synth(&self, env: &Env, t: &Term) -> Judgement<Typed> {
        self.synth_avoiding(env, t, &[]).into()
    }

    pub fn check(&self, env: &Env, t: &Term, ty: &Type) -> Judgement<Arc<Deriv>> {
        self.check_term(env, t, ty).into()
    }

    pub fn check_defs(&self, env: &Env, this: &Path, defs: &[Def], ty: &Type) -> Judgement<Arc<Deriv>> {
        self.defs(env, this, defs, ty).into()
    }

    /// Every type derivable for `p` by elimination, `Sngl-E`, `Sngl-Trans`
    /// and upper bounds of selections, in discovery order.
    pub fn path_facts(&self, env: &Env, p: &Path) -> Judgement<Vec<Typed>> {
        self.facts(env, p).map(|f| f.as_ref().clone()).into()
    }

    // ---- path facts -------------------------------------------------------

    fn facts(&self, env: &Env, p: &Path) -> R<Facts> {
        let Some(stamp) = p.root_name().and_then(|x| env.stamp(x)) else {
            return Ok(Rc::default());
        };
        let key = (stamp, p.clone());
        if let Some(f) = self.facts_memo.borrow().get(&key) {
            return Ok(f.clone());
        }
        {
            let mut stack = self.facts_stack.borrow_mut();
            if let Some(i) = stack.iter().position(|f| f.key == key) {
                let top = stack.last_mut().expect("nonempty when a key is found");
                top.min_hit = top.min_hit.min(i);
                return Ok(Rc::default());
            }
            stack.push(Frame { key: key.clone(), min_hit: usize::MAX });
        }
        let result = self.compute_facts(env, p);
        let mut stack = self.facts_stack.borrow_mut();
        let frame = stack.pop().expect("pushed above");
        let depth = stack.len();
        let facts = Rc::new(result?);
        // A result that saw an unfinished ancestor may be incomplete; keep it
        // out of the table so later queries recompute it.
        if frame.min_hit >= depth {
            self.facts_memo.borrow_mut().insert(key, facts.clone());
        } else if let Some(parent) = stack.last_mut() {
            parent.min_hit = parent.min_hit.min(frame.min_hit);
        }
        Ok(facts)
    }

    fn compute_facts(&self, env: &Env, p: &Path) -> R<Vec<Typed>> {
        let _depth = self.enter()?;
        let mut acc: Vec<Typed> = Vec::new();
        match p.split_last() {
            None => {
                let x = p.root_name().expect("free root");
                if let Some(t) = env.lookup(x) {
                    acc.push(Typed { ty: t.clone(), deriv: Deriv::new(Rule::Var, Claim::path(p, t.clone()), vec![]) });
                }
            }
            Some((prefix, a)) => {
                let pf = self.facts(env, &prefix)?;
                for f in pf.iter() {
                    if let Type::Fld(b, u) = &f.ty {
                        if b == a {
                            let d = Deriv::new(Rule::FldE, Claim::path(p, (**u).clone()), vec![f.deriv.clone()]);
                            push_unique(&mut acc, (**u).clone(), d);
                        }
                    }
                }
                for f in pf.iter() {
                    if let Type::Sngl(q) = &f.ty {
                        let qa = q.sel(a);
                        if let Some(g) = self.facts(env, &qa)?.first() {
                            let ty = Type::Sngl(qa.clone());
                            let d = Deriv::new(Rule::SnglE, Claim::path(p, ty.clone()), vec![f.deriv.clone(), g.deriv.clone()]);
                            push_unique(&mut acc, ty, d);
                        }
                    }
                }
            }
        }
        let mut i = 0;
        while i < acc.len() {
            self.fuel.tick()?;
            let f = acc[i].clone();
            i += 1;
            match &f.ty {
                Type::And(l, r) => {
                    push_unique(&mut acc, (**l).clone(), and_elim(p, &f, l, true));
                    push_unique(&mut acc, (**r).clone(), and_elim(p, &f, r, false));
                }
                Type::Rec(_, body) => {
                    let opened = open(&**body, p);
                    let d = Deriv::new(Rule::RecE, Claim::path(p, opened.clone()), vec![f.deriv.clone()]);
                    push_unique(&mut acc, opened, d);
                }
                Type::Sel(q, a) => {
                    for (_, hi, dq) in self.member_decls(env, q, a)? {
                        let s = Deriv::new(Rule::SelSub, Claim::sub(f.ty.clone(), hi.clone()), vec![dq]);
                        push_unique(&mut acc, hi, subsume(f.deriv.clone(), s));
                    }
                }
                Type::Sngl(q) if q != p => {
                    for g in self.facts(env, q)?.iter() {
                        let d = Deriv::new(Rule::SnglTrans, Claim::path(p, g.ty.clone()), vec![f.deriv.clone(), g.deriv.clone()]);
                        push_unique(&mut acc, g.ty.clone(), d);
                    }
                }
                _ => {}
            }
        }
        Ok(acc)
    }

    /// Declarations `{A: L..U}` among the facts of `q`, with their derivations.
    fn member_decls(&self, env: &Env, q: &Path, label: &str) -> R<Vec<(Type, Type, Arc<Deriv>)>> {
        Ok(self
            .facts(env, q)?
            .iter()
            .filter_map(|f| match &f.ty {
                Type::Typ(a, lo, hi) if a == label => Some(((**lo).clone(), (**hi).clone(), f.deriv.clone())),
                _ => None,
            })
            .collect())
    }

    // ---- subtyping --------------------------------------------------------

    fn sub(&self, env: &Env, s: &Type, t: &Type) -> R<Arc<Deriv>> {
        let _depth = self.enter()?;
        if s == t {
            return Ok(sub_leaf(Rule::Refl, s, t));
        }
        if *t == Type::Top {
            return Ok(sub_leaf(Rule::Top, s, t));
        }
        if *s == Type::Bot {
            return Ok(sub_leaf(Rule::Bot, s, t));
        }
        let key = (env.top_stamp(), s.clone(), t.clone());
        if !self.sub_goals.borrow_mut().insert(key.clone()) {
            return Err(not_sub(s, t));
        }
        let r = self.sub_search(env, s, t);
        self.sub_goals.borrow_mut().remove(&key);
        r
    }

    fn sub_search(&self, env: &Env, s: &Type, t: &Type) -> R<Arc<Deriv>> {
        if let Type::And(l, r) = t {
            attempt!((|| {
                let a = self.sub(env, s, l)?;
                let b = self.sub(env, s, r)?;
                Ok(Deriv::new(Rule::SubAnd, Claim::sub(s.clone(), t.clone()), vec![a, b]))
            })());
        }
        match (s, t) {
            (Type::Fld(a, s1), Type::Fld(b, t1)) if a == b => {
                attempt!(self.sub(env, s1, t1).map(|d| Deriv::new(Rule::FldFld, Claim::sub(s.clone(), t.clone()), vec![d])));
            }
            (Type::Typ(a, s1, t1), Type::Typ(b, s2, t2)) if a == b => {
                attempt!((|| {
                    let lo = self.sub(env, s2, s1)?;
                    let hi = self.sub(env, t1, t2)?;
                    Ok(Deriv::new(Rule::TypTyp, Claim::sub(s.clone(), t.clone()), vec![lo, hi]))
                })());
            }
            (Type::All(bx, s1, t1), Type::All(_, s2, t2)) => {
                attempt!((|| {
                    let param = self.sub(env, s2, s1)?;
                    let x = env.fresh(&bx.name);
                    let inner = env.extend(x.clone(), (**s2).clone());
                    let body = self.sub(&inner, &open_var(&**t1, &x), &open_var(&**t2, &x))?;
                    Ok(Deriv::new(Rule::AllAll(x), Claim::sub(s.clone(), t.clone()), vec![param, body]))
                })());
            }
            _ => {}
        }
        if let Type::Sel(q, a) = t {
            for (lo, _, dq) in self.member_decls(env, q, a)? {
                let sel = Deriv::new(Rule::SubSel, Claim::sub(lo.clone(), t.clone()), vec![dq]);
                attempt!(self.sub(env, s, &lo).map(|d| trans(d, sel)));
            }
        }
        if let Type::Sel(q, a) = s {
            for (_, hi, dq) in self.member_decls(env, q, a)? {
                let sel = Deriv::new(Rule::SelSub, Claim::sub(s.clone(), hi.clone()), vec![dq]);
                attempt!(self.sub(env, &hi, t).map(|d| trans(sel, d)));
            }
        }
        if let Type::And(l, r) = s {
            let left = sub_leaf(Rule::And1, s, l);
            attempt!(self.sub(env, l, t).map(|d| trans(left, d)));
            let right = sub_leaf(Rule::And2, s, r);
            attempt!(self.sub(env, r, t).map(|d| trans(right, d)));
        }
        let down = self.canon(env, s)?;
        let up = self.canon(env, t)?;
        let s2 = down.last().map_or(s, |c| &c.after);
        let t2 = up.last().map_or(t, |c| &c.after);
        if !down.is_empty() || !up.is_empty() {
            attempt!(self.sub(env, s2, t2).map(|mid| {
                let mut d = mid;
                for c in down.iter().rev() {
                    let step = Deriv::new(Rule::SnglPq, Claim::sub(c.before.clone(), c.after.clone()), vec![c.alias.clone(), c.typeable.clone()]);
                    d = trans(step, d);
                }
                for c in up.iter().rev() {
                    let step = Deriv::new(Rule::SnglQp, Claim::sub(c.after.clone(), c.before.clone()), vec![c.alias.clone(), c.typeable.clone()]);
                    d = trans(d, step);
                }
                d
            }));
        }
        Err(not_sub(s, t))
    }

    /// Rewrites every aliased path occurrence of `t` to its canonical form
    /// (or the least member of its alias cycle), one occurrence and one alias
    /// at a time.
    fn canon(&self, env: &Env, t: &Type) -> R<Vec<CanonStep>> {
        let mut steps: Vec<CanonStep> = Vec::new();
        let mut cur = t.clone();
        for (n, r) in occurrences(t).iter().enumerate() {
            if !r.is_free() {
                continue;
            }
            let (mut chain, end) = alias_chain(env, r);
            if let PathResolution::Cyclic(members) = end {
                // A genuine cycle is represented by its least member; a chain
                // cut off by the length limit has no representative.
                let closes = alias_step(env, members.last().expect("nonempty cycle"))
                    .is_some_and(|s| s.to == members[0]);
                if !closes {
                    continue;
                }
                let least = members.iter().enumerate().min_by(|a, b| a.1.cmp(b.1)).map_or(0, |(i, _)| i);
                chain.truncate(chain.len() + 1 - members.len() + least);
            }
            for step in chain {
                let facts = self.facts(env, &step.target)?;
                let Some(g) = facts.first() else { break };
                let next = replace_nth(&cur, n, &step.to);
                steps.push(CanonStep { before: cur.clone(), after: next.clone(), alias: step.alias, typeable: g.deriv.clone() });
                cur = next;
            }
        }
        Ok(steps)
    }

    // ---- paths ------------------------------------------------------------

    fn untypeable(p: &Path) -> Fail {
        let rule = if p.fields.is_empty() { "Var" } else { "Fld-E" };
        Fail::no(rule, format!("path {} has no type", pretty_path(p)))
    }

    fn check_path(&self, env: &Env, p: &Path, t: &Type) -> R<Arc<Deriv>> {
        let _depth = self.enter()?;
        let facts = self.facts(env, p)?;
        if facts.is_empty() {
            return Err(Self::untypeable(p));
        }
        if let Some(f) = facts.iter().find(|f| f.ty == *t) {
            return Ok(f.deriv.clone());
        }
        let key = (env.top_stamp(), p.clone(), t.clone());
        if !self.path_goals.borrow_mut().insert(key.clone()) {
            return Err(self.path_mismatch(p, t));
        }
        let r = self.check_path_search(env, p, t, &facts);
        self.path_goals.borrow_mut().remove(&key);
        r
    }

    fn path_mismatch(&self, p: &Path, t: &Type) -> Fail {
        Fail::no("Sub", format!("path {} does not have type {}", pretty_path(p), pretty_type(t)))
    }

    fn check_path_search(&self, env: &Env, p: &Path, t: &Type, facts: &[Typed]) -> R<Arc<Deriv>> {
        match t {
            Type::And(l, r) => {
                attempt!((|| {
                    let a = self.check_path(env, p, l)?;
                    let b = self.check_path(env, p, r)?;
                    Ok(Deriv::new(Rule::AndI, Claim::path(p, t.clone()), vec![a, b]))
                })());
            }
            Type::Rec(_, body) => {
                let opened = open(&**body, p);
                attempt!(self.check_path(env, p, &opened).map(|d| Deriv::new(Rule::RecI, Claim::path(p, t.clone()), vec![d])));
            }
            _ => {}
        }
        for f in facts {
            attempt!(self.sub(env, &f.ty, t).map(|s| subsume(f.deriv.clone(), s)));
        }
        match t {
            Type::Fld(a, u) => {
                attempt!(self.check_path(env, &p.sel(a), u).map(|d| Deriv::new(Rule::FldI, Claim::path(p, t.clone()), vec![d])));
            }
            Type::Sel(q, a) => {
                for (lo, _, dq) in self.member_decls(env, q, a)? {
                    let sel = Deriv::new(Rule::SubSel, Claim::sub(lo.clone(), t.clone()), vec![dq]);
                    attempt!(self.check_path(env, p, &lo).map(|d| subsume(d, sel)));
                }
            }
            _ => {}
        }
        Err(self.path_mismatch(p, t))
    }

    // ---- terms ------------------------------------------------------------

    /// Synthesizes a type for `t`, preferring path types that mention none of
    /// `avoid`: singleton facts first, then the rest in discovery order.
    fn synth_avoiding(&self, env: &Env, t: &Term, avoid: &[String]) -> R<Typed> {
        let _depth = self.enter()?;
        match t {
            Term::Stable(Stable::Path(p)) => {
                let facts = self.facts(env, p)?;
                let ordered = facts
                    .iter()
                    .filter(|f| matches!(f.ty, Type::Sngl(_)))
                    .chain(facts.iter().filter(|f| !matches!(f.ty, Type::Sngl(_))));
                let mut first = None;
                for f in ordered {
                    if !avoid.iter().any(|x| mentions(&f.ty, x)) {
                        return Ok(f.clone());
                    }
                    first.get_or_insert(f);
                }
                first.cloned().ok_or_else(|| Self::untypeable(p))
            }
            Term::Stable(Stable::Val(v)) => self.synth_value(env, t, v),
            Term::App(p, q) => {
                let mut last: Option<TypeError> = None;
                let facts = self.facts(env, p)?;
                if facts.is_empty() {
                    return Err(Self::untypeable(p));
                }
                for f in facts.iter() {
                    if let Type::All(_, s, body) = &f.ty {
                        attempt!(last, self.check_path(env, q, s).map(|dq| {
                            let ty = open(&**body, q);
                            Typed { ty: ty.clone(), deriv: Deriv::new(Rule::AllE, Claim::typ(t.clone(), ty), vec![f.deriv.clone(), dq]) }
                        }));
                    }
                }
                Err(match last {
                    Some(e) => Fail::No(e),
                    None => Fail::no("All-E", format!("{} is not a function", pretty_path(p))),
                })
            }
            Term::Let { binder, bound, body, ann } => {
                let b = self.synth_avoiding(env, bound, &[]).map_err(|e| e.at(binder.span))?;
                let x = env.fresh(&binder.name);
                let inner = env.extend(x.clone(), b.ty.clone());
                let u = open_var(&**body, &x);
                let (ty, du) = match ann {
                    Some(a) => ((**a).clone(), self.check_term(&inner, &u, a)?),
                    None => {
                        let mut avoid = avoid.to_vec();
                        avoid.push(x.clone());
                        let r = self.synth_avoiding(&inner, &u, &avoid)?;
                        if mentions(&r.ty, &x) {
                            return Err(Fail::no(
                                "Let",
                                format!(
                                    "x ∉ fv(U) fails: the body's type {} mentions the let-bound {x}; \
                                     annotate it as `let {x} = ... in [T] ...`",
                                    pretty_type(&r.ty)
                                ),
                            )
                            .at(binder.span));
                        }
                        (r.ty, r.deriv)
                    }
                };
                Ok(Typed { ty: ty.clone(), deriv: Deriv::new(Rule::Let(x), Claim::typ(t.clone(), ty), vec![b.deriv, du]) })
            }
        }
    }

    fn synth_value(&self, env: &Env, t: &Term, v: &Value) -> R<Typed> {
        match v {
            Value::Lam(b, s, body) => {
                let x = env.fresh(&b.name);
                let inner = env.extend(x.clone(), (**s).clone());
                let u = self.synth_avoiding(&inner, &open_var(&**body, &x), &[]).map_err(|e| e.at(b.span))?;
                let ty = Type::All(b.clone(), s.clone(), Box::new(close(&u.ty, &x)));
                Ok(Typed { ty: ty.clone(), deriv: Deriv::new(Rule::AllI(x), Claim::typ(t.clone(), ty), vec![u.deriv]) })
            }
            Value::Nu(b, self_ty, defs) => {
                let x = env.fresh(&b.name);
                let opened = open_var(&**self_ty, &x);
                let inner = env.extend(x.clone(), opened.clone());
                let d = self.defs(&inner, &Path::var(x.clone()), &open_var(defs, &x), &opened).map_err(|e| e.at(b.span))?;
                let ty = Type::Rec(b.clone(), self_ty.clone());
                Ok(Typed { ty: ty.clone(), deriv: Deriv::new(Rule::NewI(x), Claim::typ(t.clone(), ty), vec![d]) })
            }
        }
    }

    fn check_term(&self, env: &Env, t: &Term, ty: &Type) -> R<Arc<Deriv>> {
        let _depth = self.enter()?;
        match (t, ty) {
            (Term::Stable(Stable::Path(p)), _) => self.check_path(env, p, ty),
            (Term::Stable(Stable::Val(Value::Lam(b, s, body))), Type::All(_, s2, u)) => {
                let x = env.fresh(&b.name);
                let inner = env.extend(x.clone(), (**s).clone());
                let du = self.check_term(&inner, &open_var(&**body, &x), &open_var(&**u, &x)).map_err(|e| e.at(b.span))?;
                let lam_ty = Type::All(Binder::new(b.name.clone()), s.clone(), u.clone());
                let d = Deriv::new(Rule::AllI(x), Claim::typ(t.clone(), lam_ty.clone()), vec![du]);
                if s == s2 {
                    Ok(d)
                } else {
                    Ok(subsume(d, self.sub(env, &lam_ty, ty)?))
                }
            }
            (Term::Let { binder, bound, body, ann }, _) => {
                let b = self.synth_avoiding(env, bound, &[]).map_err(|e| e.at(binder.span))?;
                let x = env.fresh(&binder.name);
                let inner = env.extend(x.clone(), b.ty.clone());
                let u = open_var(&**body, &x);
                let goal = ann.as_deref().unwrap_or(ty);
                let du = self.check_term(&inner, &u, goal)?;
                let d = Deriv::new(Rule::Let(x), Claim::typ(t.clone(), goal.clone()), vec![b.deriv, du]);
                if goal == ty {
                    Ok(d)
                } else {
                    Ok(subsume(d, self.sub(env, goal, ty)?))
                }
            }
            _ => {
                let got = self.synth_avoiding(env, t, &[])?;
                if got.ty == *ty {
                    return Ok(got.deriv);
                }
                Ok(subsume(got.deriv, self.sub(env, &got.ty, ty)?))
            }
        }
    }

    // ---- definitions ------------------------------------------------------

    fn defs(&self, env: &Env, this: &Path, defs: &[Def], ty: &Type) -> R<Arc<Deriv>> {
        let _depth = self.enter()?;
        if defs.is_empty() {
            return Err(Fail::no("{}-I", "an object must define at least one member"));
        }
        let leaves = ty.conjuncts();
        let mut seen: Vec<&str> = Vec::new();
        for leaf in &leaves {
            let Some(a) = member_label(leaf) else {
                return Err(Fail::no(
                    "{}-I",
                    format!("self type component {} is not a member declaration", pretty_type(leaf)),
                ));
            };
            if seen.contains(&a) {
                return Err(Fail::no("AndDef-I", format!("member `{a}` is declared twice in the self type")));
            }
            seen.push(a);
            if !defs.iter().any(|d| d.label == a) {
                return Err(Fail::no("{}-I", format!("declared member `{a}` has no definition")));
            }
        }
        if let Some(d) = defs.iter().find(|d| !seen.contains(&d.label.as_str())) {
            return Err(Fail::no("{}-I", format!("definition `{}` is not declared in the self type", d.label)).at(d.span));
        }
        self.defs_tree(env, this, defs, ty)
    }

    /// Follows the intersection tree of `ty`, splitting `defs` by label.
    fn defs_tree(&self, env: &Env, this: &Path, defs: &[Def], ty: &Type) -> R<Arc<Deriv>> {
        let own: Vec<Def> = {
            let ls = labels(ty);
            defs.iter().filter(|d| ls.contains(&d.label.as_str())).cloned().collect()
        };
        let concl = Claim::Defs { this: this.clone(), defs: own, ty: ty.clone() };
        if let Type::And(l, r) = ty {
            let dl = self.defs_tree(env, this, defs, l)?;
            let dr = self.defs_tree(env, this, defs, r)?;
            return Ok(Deriv::new(Rule::AndDefI, concl, vec![dl, dr]));
        }
        let label = member_label(ty).expect("leaves validated by the caller");
        let def = defs.iter().find(|d| d.label == label).expect("validated by the caller");
        self.def(env, this, def, ty, concl).map_err(|e| e.at(def.span))
    }

    fn def(&self, env: &Env, this: &Path, def: &Def, decl: &Type, concl: Claim) -> R<Arc<Deriv>> {
        let _depth = self.enter()?;
        let a = &def.label;
        match (&def.rhs, decl) {
            (DefRhs::Type(t), Type::Typ(_, lo, hi)) => {
                if **lo == *t && **hi == *t {
                    Ok(Deriv::new(Rule::DefTyp, concl, vec![]))
                } else {
                    Err(Fail::no(
                        "Def-Typ",
                        format!(
                            "type member {a} = {} must be declared as {{{a}: {0} .. {0}}}, not {}",
                            pretty_type(t),
                            pretty_type(decl)
                        ),
                    ))
                }
            }
            (DefRhs::Field(Stable::Path(q)), Type::Fld(_, u)) => {
                if **u != Type::Sngl(q.clone()) {
                    return Err(Fail::no(
                        "Def-Path",
                        format!(
                            "field {a} is initialized with the path {0}, so it must be declared as {{{a}: {0}.type}}, not {1}",
                            pretty_path(q),
                            pretty_type(decl)
                        ),
                    ));
                }
                let g = self.synth_avoiding(env, &Term::path(q.clone()), &[]).map_err(|e| match e {
                    Fail::No(_) => Fail::no("Def-Path", format!("path {} is not typeable", pretty_path(q))),
                    fuel => fuel,
                })?;
                Ok(Deriv::new(Rule::DefPath, concl, vec![g.deriv]))
            }
            (DefRhs::Field(Stable::Val(lam @ Value::Lam(..))), Type::Fld(_, u)) => {
                if !matches!(**u, Type::All(..)) {
                    return Err(Fail::no(
                        "Def-All",
                        format!("field {a} holds a function, so it must be declared with a function type, not {}", pretty_type(u)),
                    ));
                }
                let d = self.check_term(env, &Term::val(lam.clone()), u)?;
                Ok(Deriv::new(Rule::DefAll, concl, vec![d]))
            }
            (DefRhs::Field(Stable::Val(Value::Nu(_, t, ds))), Type::Fld(_, u)) => {
                match &**u {
                    Type::Rec(_, t2) if **t2 == **t => {}
                    _ => {
                        return Err(Fail::no(
                            "Def-New",
                            format!(
                                "field {a} holds an object, so it must be declared as {{{a}: {}}}, not {}",
                                pretty_type(&Type::Rec(Binder::new("y"), t.clone())),
                                pretty_type(decl)
                            ),
                        ))
                    }
                }
                if !tight_bounds(t) {
                    return Err(Fail::no("Def-New", format!("the self type of the object in field {a} has a type member with unequal bounds")));
                }
                let pa = this.sel(a);
                let d = self.defs(env, &pa, &open(ds, &pa), &open(&**t, &pa))?;
                Ok(Deriv::new(Rule::DefNew, concl, vec![d]))
            }
            _ => Err(Fail::no("{}-I", format!("definition of {a} does not match its declaration {}", pretty_type(decl)))),
        }
    }
}

pub fn subtype(env: &Env, s: &Type, t: &Type, fuel: u64) -> Judgement<Arc<Deriv>> {
    Checker::new(fuel).subtype(env, s, t)
}

pub fn synth(env: &Env, t: &Term, fuel: u64) -> Judgement<Typed> {
    Checker::new(fuel).synth(env, t)
}

pub fn check(env: &Env, t: &Term, ty: &Type, fuel: u64) -> Judgement<Arc<Deriv>> {
    Checker::new(fuel).check(env, t, ty)
}

pub fn check_defs(env: &Env, this: &Path, defs: &[Def], ty: &Type, fuel: u64) -> Judgement<Arc<Deriv>> {
    Checker::new(fuel).check_defs(env, this, defs, ty)
}

/// Types a closed program in the empty environment.
pub fn typecheck(program: &Term, fuel: u64) -> Judgement<Typed> {
    synth(&Env::new(), program, fuel)
}
