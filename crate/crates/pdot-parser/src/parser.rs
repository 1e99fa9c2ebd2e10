use pdot_syntax::{is_type_label, Binder, Def, DefRhs, Path, Span, Stable, Term, Type, Value, Var};

use crate::desugar::{desugar_object, SugarDef, SugarRhs};
use crate::diagnostic::{Diagnostic, SourceProgram};
use crate::lexer::{lex, Tok, Token};

type PResult<T> = Result<T, Diagnostic>;

/// Parses a closed program, eliminating object sugar.
pub fn parse_program(src: &SourceProgram) -> Result<Term, Vec<Diagnostic>> {
    parse_term_with(&src.text, false).map_err(|d| vec![d])
}

/// Parses a term whose free identifiers are kept as free names.
pub fn parse_open_term(text: &str) -> Result<Term, Diagnostic> {
    parse_term_with(text, true)
}

/// Parses a closed or open type; unresolved names stay free.
pub fn parse_type(text: &str) -> Result<Type, Diagnostic> {
    let mut p = Parser::new(text, true)?;
    let t = p.ty()?;
    p.expect(Tok::Eof)?;
    Ok(t)
}

/// Parses a path expression such as `x.a.c`.
pub fn parse_path(text: &str) -> Result<Path, Diagnostic> {
    let mut p = Parser::new(text, true)?;
    let path = p.term_path()?;
    p.expect(Tok::Eof)?;
    Ok(path)
}

fn parse_term_with(text: &str, allow_free: bool) -> PResult<Term> {
    let mut p = Parser::new(text, allow_free)?;
    let t = p.term()?;
    p.expect(Tok::Eof)?;
    Ok(t)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    scope: Vec<String>,
    allow_free: bool,
}

/// A dotted chain read before deciding whether it ends in `.A` or `.type`.
struct Chain {
    root: Var,
    labels: Vec<(String, Span)>,
    span: Span,
}

impl Parser {
    fn new(text: &str, allow_free: bool) -> PResult<Parser> {
        Ok(Parser { toks: lex(text)?, pos: 0, scope: Vec::new(), allow_free })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].tok
    }

    fn span(&self) -> Span {
        self.toks[self.pos].span
    }

    fn prev_end(&self) -> usize {
        self.toks[self.pos.saturating_sub(1)].span.end
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, tok: Tok) -> bool {
        if *self.peek() == tok {
            self.bump();
            true
        } else {
            false
        }
    }

    fn unexpected(&self, wanted: &str) -> Diagnostic {
        Diagnostic::error(
            "syntax",
            format!("expected {wanted}, found {}", self.peek().describe()),
            self.span(),
        )
    }

    fn expect(&mut self, tok: Tok) -> PResult<Span> {
        if *self.peek() == tok {
            Ok(self.bump().span)
        } else {
            let wanted = match &tok {
                Tok::Eof => "end of input".to_string(),
                t => t.describe(),
            };
            Err(self.unexpected(&wanted))
        }
    }

    fn ident(&mut self) -> PResult<(String, Span)> {
        match self.peek().clone() {
            Tok::Ident(s) => Ok((s, self.bump().span)),
            _ => Err(self.unexpected("an identifier")),
        }
    }

    fn binder_name(&mut self) -> PResult<Binder> {
        let (name, span) = self.ident()?;
        if is_type_label(&name) {
            return Err(Diagnostic::error(
                "syntax",
                format!("variable `{name}` must start with a lowercase letter or `_`"),
                span,
            ));
        }
        Ok(Binder::with_span(name, span))
    }

    fn resolve(&self, name: &str, span: Span) -> PResult<Var> {
        if let Some(i) = self.scope.iter().rev().position(|n| n == name) {
            return Ok(Var::Bound(i));
        }
        if self.allow_free {
            Ok(Var::Free(name.to_string()))
        } else {
            Err(Diagnostic::error("unbound", format!("unbound identifier `{name}`"), span))
        }
    }

    fn scoped<T>(&mut self, name: &str, f: impl FnOnce(&mut Parser) -> PResult<T>) -> PResult<T> {
        self.scope.push(name.to_string());
        let r = f(self);
        self.scope.pop();
        r
    }

    // ---- paths ----

    fn chain(&mut self) -> PResult<Chain> {
        let (name, span) = self.ident()?;
        if is_type_label(&name) {
            return Err(Diagnostic::error("syntax", format!("`{name}` cannot be a path root"), span));
        }
        let root = self.resolve(&name, span)?;
        let mut labels = Vec::new();
        while *self.peek() == Tok::Dot {
            match self.peek_at(1).clone() {
                Tok::Ident(l) if !is_type_label(&l) => {
                    self.bump();
                    let s = self.bump().span;
                    labels.push((l, s));
                }
                _ => break,
            }
        }
        Ok(Chain { root, labels, span: Span::new(span.start, self.prev_end()) })
    }

    fn chain_path(c: Chain) -> Path {
        Path { root: c.root, fields: c.labels.into_iter().map(|(l, _)| l).collect() }
    }

    /// A path in term position: `.A` and `.type` are rejected.
    fn term_path(&mut self) -> PResult<Path> {
        let c = self.chain()?;
        if *self.peek() == Tok::Dot {
            let next = self.toks[(self.pos + 1).min(self.toks.len() - 1)].clone();
            let msg = match &next.tok {
                Tok::Ident(l) if is_type_label(l) => {
                    format!("type projection `.{l}` is only allowed in type position")
                }
                Tok::Type => "singleton `.type` is only allowed in type position".to_string(),
                _ => "expected a field label after `.`".to_string(),
            };
            return Err(Diagnostic::error("syntax", msg, next.span));
        }
        Ok(Self::chain_path(c))
    }

    // ---- types ----

    fn at_prefix_binder(&self) -> bool {
        match self.peek() {
            Tok::All => true,
            Tok::Mu => *self.peek_at(3) == Tok::RParen,
            _ => false,
        }
    }

    fn ty(&mut self) -> PResult<Type> {
        match self.peek() {
            Tok::All => self.all_type(),
            Tok::Mu if self.at_prefix_binder() => self.mu_prefix(),
            _ => self.and_type(),
        }
    }

    fn all_type(&mut self) -> PResult<Type> {
        self.expect(Tok::All)?;
        self.expect(Tok::LParen)?;
        let b = self.binder_name()?;
        self.expect(Tok::Colon)?;
        let param = self.ty()?;
        self.expect(Tok::RParen)?;
        let name = b.name.clone();
        let body = self.scoped(&name, |p| p.ty())?;
        Ok(Type::All(b, Box::new(param), Box::new(body)))
    }

    /// `mu(x) T`
    fn mu_prefix(&mut self) -> PResult<Type> {
        self.expect(Tok::Mu)?;
        self.expect(Tok::LParen)?;
        let b = self.binder_name()?;
        self.expect(Tok::RParen)?;
        let name = b.name.clone();
        let body = self.scoped(&name, |p| p.ty())?;
        Ok(Type::Rec(b, Box::new(body)))
    }

    fn and_type(&mut self) -> PResult<Type> {
        let mut t = self.atom_type()?;
        while self.eat(Tok::And) {
            if self.at_prefix_binder() {
                // A binder body extends as far right as possible.
                let r = self.ty()?;
                t = Type::and(t, r);
                break;
            }
            let r = self.atom_type()?;
            t = Type::and(t, r);
        }
        Ok(t)
    }

    fn atom_type(&mut self) -> PResult<Type> {
        match self.peek().clone() {
            Tok::Top => {
                self.bump();
                Ok(Type::Top)
            }
            Tok::Bot => {
                self.bump();
                Ok(Type::Bot)
            }
            Tok::LParen => {
                self.bump();
                let t = self.ty()?;
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            Tok::LBrace => self.decl(),
            Tok::Mu => {
                // `mu(x: T)`
                self.bump();
                self.expect(Tok::LParen)?;
                let b = self.binder_name()?;
                if *self.peek() == Tok::RParen {
                    self.bump();
                    let name = b.name.clone();
                    let body = self.scoped(&name, |p| p.ty())?;
                    return Ok(Type::Rec(b, Box::new(body)));
                }
                self.expect(Tok::Colon)?;
                let name = b.name.clone();
                let body = self.scoped(&name, |p| p.ty())?;
                self.expect(Tok::RParen)?;
                Ok(Type::Rec(b, Box::new(body)))
            }
            Tok::All => self.all_type(),
            Tok::Ident(_) => {
                let c = self.chain()?;
                if !self.eat(Tok::Dot) {
                    return Err(Diagnostic::error(
                        "syntax",
                        "a path in type position must end in `.A` or `.type`",
                        c.span,
                    ));
                }
                match self.peek().clone() {
                    Tok::Type => {
                        self.bump();
                        Ok(Type::Sngl(Self::chain_path(c)))
                    }
                    Tok::Ident(l) if is_type_label(&l) => {
                        self.bump();
                        Ok(Type::Sel(Self::chain_path(c), l))
                    }
                    _ => Err(self.unexpected("a type label or `type`")),
                }
            }
            _ => Err(self.unexpected("a type")),
        }
    }

    /// `{type A: S .. U}`, `{A: S .. U}` or `{a: T}`.
    fn decl(&mut self) -> PResult<Type> {
        self.expect(Tok::LBrace)?;
        let explicit = self.eat(Tok::Type);
        let (label, span) = self.ident()?;
        self.expect(Tok::Colon)?;
        let t = if explicit || is_type_label(&label) {
            if !is_type_label(&label) {
                return Err(Diagnostic::error(
                    "syntax",
                    format!("type member `{label}` must start with an uppercase letter"),
                    span,
                ));
            }
            let lo = self.ty()?;
            self.expect(Tok::DotDot)?;
            let hi = self.ty()?;
            Type::typ(label, lo, hi)
        } else {
            Type::fld(label, self.ty()?)
        };
        self.expect(Tok::RBrace)?;
        Ok(t)
    }

    // ---- terms ----

    fn term(&mut self) -> PResult<Term> {
        match self.peek() {
            Tok::Let => self.let_term(),
            Tok::LParen => {
                self.bump();
                let t = self.term()?;
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            Tok::Lam | Tok::Nu => Ok(Term::val(self.value()?)),
            Tok::Ident(_) => {
                let p = self.term_path()?;
                if matches!(self.peek(), Tok::Ident(_)) {
                    let q = self.term_path()?;
                    Ok(Term::App(p, q))
                } else {
                    Ok(Term::path(p))
                }
            }
            _ => Err(self.unexpected("a term")),
        }
    }

    fn let_term(&mut self) -> PResult<Term> {
        self.expect(Tok::Let)?;
        let b = self.binder_name()?;
        self.expect(Tok::Eq)?;
        let bound = self.term()?;
        self.expect(Tok::In)?;
        let ann = if self.eat(Tok::LBrack) {
            let t = self.ty()?;
            self.expect(Tok::RBrack)?;
            Some(Box::new(t))
        } else {
            None
        };
        let name = b.name.clone();
        let body = self.scoped(&name, |p| p.term())?;
        Ok(Term::Let { binder: b, bound: Box::new(bound), body: Box::new(body), ann })
    }

    fn stable(&mut self) -> PResult<Stable> {
        match self.peek() {
            Tok::Lam | Tok::Nu => Ok(Stable::Val(self.value()?)),
            Tok::LParen => {
                self.bump();
                let s = self.stable()?;
                self.expect(Tok::RParen)?;
                Ok(s)
            }
            _ => Ok(Stable::Path(self.term_path()?)),
        }
    }

    fn value(&mut self) -> PResult<Value> {
        match self.peek() {
            Tok::Lam => {
                self.bump();
                self.expect(Tok::LParen)?;
                let b = self.binder_name()?;
                self.expect(Tok::Colon)?;
                let param = self.ty()?;
                self.expect(Tok::RParen)?;
                let name = b.name.clone();
                let body = self.scoped(&name, |p| p.term())?;
                Ok(Value::Lam(b, Box::new(param), Box::new(body)))
            }
            Tok::Nu => {
                self.bump();
                self.expect(Tok::LParen)?;
                let b = self.binder_name()?;
                let name = b.name.clone();
                if self.eat(Tok::FatArrow) {
                    let defs = self.scoped(&name, |p| p.sugar_defs())?;
                    self.expect(Tok::RParen)?;
                    return desugar_object(b, defs).map_err(|e| {
                        let rule = match e {
                            crate::desugar::DesugarError::DuplicateLabel { .. } => "AndDef-I",
                            _ => "sugar",
                        };
                        Diagnostic::error(rule, e.to_string(), e.span())
                    });
                }
                self.expect(Tok::Colon)?;
                let self_ty = self.scoped(&name, |p| p.ty())?;
                self.expect(Tok::RParen)?;
                self.expect(Tok::LBrace)?;
                let defs = self.scoped(&name, |p| p.core_defs())?;
                self.expect(Tok::RBrace)?;
                Ok(Value::Nu(b, Box::new(self_ty), defs))
            }
            _ => Err(self.unexpected("`lam` or `nu`")),
        }
    }

    fn core_defs(&mut self) -> PResult<Vec<Def>> {
        let mut defs: Vec<Def> = Vec::new();
        while *self.peek() != Tok::RBrace {
            let (label, span) = self.ident()?;
            if defs.iter().any(|d| d.label == label) {
                return Err(Diagnostic::error(
                    "AndDef-I",
                    format!("label `{label}` is defined more than once"),
                    span,
                ));
            }
            self.expect(Tok::Eq)?;
            let rhs = if is_type_label(&label) { DefRhs::Type(self.ty()?) } else { DefRhs::Field(self.stable()?) };
            defs.push(Def { label, rhs, span: Span::new(span.start, self.prev_end()) });
            if !self.eat(Tok::Semi) {
                break;
            }
        }
        Ok(defs)
    }

    fn sugar_defs(&mut self) -> PResult<Vec<SugarDef>> {
        let mut defs = Vec::new();
        while *self.peek() != Tok::RParen {
            let (label, span) = self.ident()?;
            let rhs = if is_type_label(&label) {
                self.expect(Tok::Eq)?;
                SugarRhs::Type(self.ty()?)
            } else if self.eat(Tok::Colon) {
                let ann = self.ty()?;
                self.expect(Tok::Eq)?;
                let at = self.span();
                match self.stable()? {
                    Stable::Val(lam @ Value::Lam(..)) => SugarRhs::Lambda { ann: Some(ann), lam },
                    _ => {
                        return Err(Diagnostic::error(
                            "sugar",
                            format!("only lambda members carry an annotation; `{label}` is not a lambda"),
                            at,
                        ))
                    }
                }
            } else {
                self.expect(Tok::Eq)?;
                match self.stable()? {
                    Stable::Path(q) => SugarRhs::Path(q),
                    Stable::Val(v @ Value::Nu(..)) => SugarRhs::Object(v),
                    Stable::Val(lam @ Value::Lam(..)) => SugarRhs::Lambda { ann: None, lam },
                }
            };
            defs.push(SugarDef { label, rhs, span: Span::new(span.start, self.prev_end()) });
            if !self.eat(Tok::Semi) {
                break;
            }
        }
        Ok(defs)
    }
}
