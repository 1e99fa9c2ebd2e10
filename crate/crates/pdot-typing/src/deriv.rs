//! Derivation trees.
//!
//! Every `Yes` answer carries one. Nodes name the rule applied, its full
//! conclusion and its premises; rules that extend the environment also
//! record the name they bound, so a checker can rebuild every context.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use pdot_parser::{pretty_defs, pretty_path, pretty_term, pretty_type};
use pdot_syntax::{Def, Path, Term, Type};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Rule {
    Var,
    AllI(String),
    AllE,
    NewI(String),
    FldE,
    FldI,
    Let(String),
    SnglTrans,
    SnglE,
    RecI,
    RecE,
    AndI,
    Sub,
    Top,
    Bot,
    Refl,
    Trans,
    And1,
    And2,
    SubAnd,
    FldFld,
    TypTyp,
    SubSel,
    SelSub,
    SnglPq,
    SnglQp,
    AllAll(String),
    DefTyp,
    DefAll,
    DefNew,
    DefPath,
    AndDefI,
}

impl Rule {
    pub fn name(&self) -> &'static str {
        match self {
            Rule::Var => "Var",
            Rule::AllI(_) => "All-I",
            Rule::AllE => "All-E",
            Rule::NewI(_) => "{}-I",
            Rule::FldE => "Fld-E",
            Rule::FldI => "Fld-I",
            Rule::Let(_) => "Let",
            Rule::SnglTrans => "Sngl-Trans",
            Rule::SnglE => "Sngl-E",
            Rule::RecI => "Rec-I",
            Rule::RecE => "Rec-E",
            Rule::AndI => "&-I",
            Rule::Sub => "Sub",
            Rule::Top => "Top",
            Rule::Bot => "Bot",
            Rule::Refl => "Refl",
            Rule::Trans => "Trans",
            Rule::And1 => "And1-<:",
            Rule::And2 => "And2-<:",
            Rule::SubAnd => "<:-And",
            Rule::FldFld => "Fld-<:-Fld",
            Rule::TypTyp => "Typ-<:-Typ",
            Rule::SubSel => "<:-Sel",
            Rule::SelSub => "Sel-<:",
            Rule::SnglPq => "Sngl-pq-<:",
            Rule::SnglQp => "Sngl-qp-<:",
            Rule::AllAll(_) => "All-<:-All",
            Rule::DefTyp => "Def-Typ",
            Rule::DefAll => "Def-All",
            Rule::DefNew => "Def-New",
            Rule::DefPath => "Def-Path",
            Rule::AndDefI => "AndDef-I",
        }
    }

    /// The name this rule adds to the environment of its extended premise.
    pub fn bound_name(&self) -> Option<&str> {
        match self {
            Rule::AllI(x) | Rule::NewI(x) | Rule::Let(x) | Rule::AllAll(x) => Some(x),
            _ => None,
        }
    }
}

/// What a derivation concludes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Claim {
    /// `t : T`
    Typ { term: Term, ty: Type },
    /// `S <: T`
    Sub { lower: Type, upper: Type },
    /// Definitions of the object identified by `this` have type `ty`.
    Defs { this: Path, defs: Vec<Def>, ty: Type },
}

impl Claim {
    pub fn typ(term: Term, ty: Type) -> Claim {
        Claim::Typ { term, ty }
    }

    pub fn path(p: &Path, ty: Type) -> Claim {
        Claim::Typ { term: Term::path(p.clone()), ty }
    }

    pub fn sub(lower: Type, upper: Type) -> Claim {
        Claim::Sub { lower, upper }
    }

    pub fn render(&self) -> String {
        match self {
            Claim::Typ { term, ty } => format!("{} : {}", pretty_term(term), pretty_type(ty)),
            Claim::Sub { lower, upper } => format!("{} <: {}", pretty_type(lower), pretty_type(upper)),
            Claim::Defs { this, defs, ty } => {
                format!("{} | {{ {} }} : {}", pretty_path(this), pretty_defs(defs), pretty_type(ty))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Deriv {
    pub rule: Rule,
    pub concl: Claim,
    pub premises: Vec<Arc<Deriv>>,
}

impl Deriv {
    pub fn new(rule: Rule, concl: Claim, premises: Vec<Arc<Deriv>>) -> Arc<Deriv> {
        Arc::new(Deriv { rule, concl, premises })
    }

    /// The type of a `Typ` conclusion.
    pub fn ty(&self) -> Option<&Type> {
        match &self.concl {
            Claim::Typ { ty, .. } => Some(ty),
            _ => None,
        }
    }

    /// Number of nodes, counting shared subtrees once per use.
    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(|p| p.size()).sum::<usize>()
    }

    pub fn depth(&self) -> usize {
        1 + self.premises.iter().map(|p| p.depth()).max().unwrap_or(0)
    }

    /// How often each rule occurs.
    pub fn rule_counts(&self) -> BTreeMap<&'static str, usize> {
        let mut out = BTreeMap::new();
        fn go(d: &Deriv, out: &mut BTreeMap<&'static str, usize>) {
            *out.entry(d.rule.name()).or_default() += 1;
            for p in &d.premises {
                go(p, out);
            }
        }
        go(self, &mut out);
        out
    }

    /// One line per node, premises indented under their conclusion.
    pub fn render(&self) -> String {
        let mut out = String::new();
        fn go(d: &Deriv, indent: usize, out: &mut String) {
            let fresh = d.rule.bound_name().map(|x| format!(" [{x}]")).unwrap_or_default();
            let _ = writeln!(out, "{:indent$}{}{}  {}", "", d.rule.name(), fresh, d.concl.render());
            for p in &d.premises {
                go(p, indent + 2, out);
            }
        }
        go(self, 0, &mut out);
        out
    }
}
