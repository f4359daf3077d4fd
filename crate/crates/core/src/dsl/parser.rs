//! Recursive-descent parser for the presentation language.

use crate::error::{Error, Result};
use crate::presentation::domain::{Builtin, FiniteDomain, GeneratorDomain};
use crate::presentation::expr::{CmpOp, Cond, Expr, Sort};
use crate::presentation::gen::{Gen, NatOpen, Tag};
use crate::presentation::print::{family_inferred, relation_inferred, KEYWORDS};
use crate::presentation::relation::{Presentation, PresentationKind, RelOp, Relation};
use crate::presentation::term::{Binder, Family, Meet, Term};
use crate::rational::{Endpoint, Rat};

use crate::lattice::QuotientMode;
use crate::presentation::expr::Env;
use crate::transform::{ImageCase, ImageEntry, QuotientSpec, SchematicImage};

use super::lexer::{tokenize, Tok, TokKind};

const SORT_WORDS: &[&str] = &["Z", "Q", "Unit", "Lower", "Upper"];

pub struct Parser<'a> {
    src: &'a str,
    toks: Vec<Tok>,
    pos: usize,
}

impl<'a> Parser<'a> {
    pub fn new(src: &'a str) -> Result<Self> {
        Ok(Parser { src, toks: tokenize(src)?, pos: 0 })
    }

    fn peek(&self) -> &TokKind {
        &self.toks[self.pos].kind
    }

    fn peek_at(&self, k: usize) -> &TokKind {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].kind
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        let t = &self.toks[self.pos];
        Err(Error::Parse { line: t.line, col: t.col, message: message.into() })
    }

    fn describe(&self) -> String {
        match self.peek() {
            TokKind::Ident(s) => format!("`{s}`"),
            TokKind::Str(s) => format!("{s:?}"),
            TokKind::Num(r) => format!("`{r}`"),
            TokKind::Sym(s) => format!("`{s}`"),
            TokKind::Eof => "end of input".into(),
        }
    }

    fn is_sym(&self, s: &str) -> bool {
        matches!(self.peek(), TokKind::Sym(x) if *x == s)
    }

    fn is_word(&self, w: &str) -> bool {
        matches!(self.peek(), TokKind::Ident(x) if x == w)
    }

    fn eat_sym(&mut self, s: &str) -> bool {
        if self.is_sym(s) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn eat_word(&mut self, w: &str) -> bool {
        if self.is_word(w) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect_sym(&mut self, s: &str) -> Result<()> {
        if self.eat_sym(s) {
            Ok(())
        } else {
            self.error(format!("expected `{s}`, found {}", self.describe()))
        }
    }

    fn expect_word(&mut self, w: &str) -> Result<()> {
        if self.eat_word(w) {
            Ok(())
        } else {
            self.error(format!("expected `{w}`, found {}", self.describe()))
        }
    }

    pub fn expect_eof(&mut self) -> Result<()> {
        if matches!(self.peek(), TokKind::Eof) {
            Ok(())
        } else {
            self.error(format!("unexpected {}", self.describe()))
        }
    }

    fn ident(&mut self) -> Result<String> {
        match self.peek().clone() {
            TokKind::Ident(s) if !KEYWORDS.contains(&s.as_str()) => {
                self.bump();
                Ok(s)
            }
            _ => self.error(format!("expected an identifier, found {}", self.describe())),
        }
    }

    /// A word such as `interval-R` made of adjacent tokens.
    fn dashed_word(&mut self) -> Result<String> {
        if !matches!(self.peek(), TokKind::Ident(_)) {
            return self.error(format!("expected a name, found {}", self.describe()));
        }
        let start = self.toks[self.pos].start;
        let mut end = self.bump().end;
        while self.toks[self.pos].start == end && !matches!(self.peek(), TokKind::Eof | TokKind::Sym(";")) {
            end = self.bump().end;
        }
        Ok(self.src[start..end].to_string())
    }

    // ----- expressions -----

    pub fn expr(&mut self) -> Result<Expr> {
        let mut e = self.expr_min()?;
        while self.is_word("v") || self.is_sym("v") {
            self.bump();
            e = Expr::max(e, self.expr_min()?);
        }
        Ok(e)
    }

    fn expr_min(&mut self) -> Result<Expr> {
        let mut e = self.expr_sum()?;
        while self.eat_sym("^") {
            e = Expr::min(e, self.expr_sum()?);
        }
        Ok(e)
    }

    fn expr_sum(&mut self) -> Result<Expr> {
        let mut e = self.expr_unary()?;
        loop {
            if self.eat_sym("+") {
                e = Expr::add(e, self.expr_unary()?);
            } else if self.is_sym("-") {
                self.bump();
                let c = self.constant()?;
                e = Expr::add(e, Expr::Const(c.neg()));
            } else {
                return Ok(e);
            }
        }
    }

    fn expr_unary(&mut self) -> Result<Expr> {
        if self.eat_sym("-") {
            return Ok(Expr::Const(self.constant()?.neg()));
        }
        if self.eat_sym("+") {
            return Ok(Expr::Const(self.constant()?));
        }
        match self.peek().clone() {
            TokKind::Num(_) => Ok(Expr::Const(self.constant()?)),
            TokKind::Ident(s) if s == "inf" => Ok(Expr::Const(self.constant()?)),
            TokKind::Sym("(") => {
                self.bump();
                let e = self.expr()?;
                self.expect_sym(")")?;
                Ok(e)
            }
            _ => Ok(Expr::Var(self.ident()?)),
        }
    }

    fn constant(&mut self) -> Result<Endpoint> {
        match self.peek().clone() {
            TokKind::Num(r) => {
                self.bump();
                Ok(Endpoint::Fin(r))
            }
            TokKind::Ident(s) if s == "inf" => {
                self.bump();
                Ok(Endpoint::PosInf)
            }
            _ => self.error(format!("expected a constant, found {}", self.describe())),
        }
    }

    // ----- conditions -----

    pub fn cond(&mut self) -> Result<Cond> {
        let mut parts = vec![self.cond_and()?];
        while self.eat_sym("|") {
            parts.push(self.cond_and()?);
        }
        Ok(if parts.len() == 1 { parts.pop().expect("one") } else { Cond::or(parts) })
    }

    fn cond_and(&mut self) -> Result<Cond> {
        let mut parts = vec![self.cond_atom()?];
        while self.eat_sym("&") {
            parts.push(self.cond_atom()?);
        }
        Ok(if parts.len() == 1 { parts.pop().expect("one") } else { Cond::and(parts) })
    }

    fn cond_atom(&mut self) -> Result<Cond> {
        if self.eat_word("true") {
            return Ok(Cond::True);
        }
        if self.eat_word("false") {
            return Ok(Cond::False);
        }
        if self.is_sym("(") {
            let save = self.pos;
            self.bump();
            if let Ok(c) = self.cond() {
                if self.eat_sym(")") && self.cmp_op().is_none() {
                    return Ok(c);
                }
            }
            self.pos = save;
        }
        let mut parts = Vec::new();
        let mut lhs = self.expr()?;
        let Some(mut op) = self.cmp_op() else {
            return self.error(format!("expected a comparison, found {}", self.describe()));
        };
        loop {
            self.bump();
            let rhs = self.expr()?;
            parts.push(Cond::cmp(lhs, op, rhs.clone()));
            lhs = rhs;
            match self.cmp_op() {
                Some(o) => op = o,
                None => break,
            }
        }
        Ok(Cond::and(parts))
    }

    fn cmp_op(&self) -> Option<CmpOp> {
        match self.peek() {
            TokKind::Sym("<") => Some(CmpOp::Lt),
            TokKind::Sym("<=") => Some(CmpOp::Le),
            TokKind::Sym("=") => Some(CmpOp::Eq),
            TokKind::Sym("!=") => Some(CmpOp::Ne),
            TokKind::Sym(">") => Some(CmpOp::Gt),
            TokKind::Sym(">=") => Some(CmpOp::Ge),
            _ => None,
        }
    }

    // ----- generators and terms -----

    fn tag(&self) -> Option<Tag> {
        match self.peek() {
            TokKind::Ident(s) if s == "dia" => Some(Tag::Dia),
            TokKind::Ident(s) if s == "box" => Some(Tag::Box),
            TokKind::Ident(s) if s == "boxtimes" => Some(Tag::BoxTimes),
            _ => None,
        }
    }

    pub fn gen(&mut self) -> Result<Gen> {
        if let Some(t) = self.tag() {
            self.bump();
            return Ok(Gen::tagged(t, self.gen()?));
        }
        match self.peek().clone() {
            TokKind::Str(s) => {
                self.bump();
                Ok(Gen::Named(s))
            }
            TokKind::Sym("⦅") => {
                self.bump();
                let (p, q) = self.pair()?;
                self.expect_sym("⦆")?;
                Ok(Gen::Open(p, q))
            }
            TokKind::Sym("⦆") => {
                self.bump();
                let (p, q) = self.pair()?;
                self.expect_sym("⦅")?;
                Ok(Gen::CoClosed(p, q))
            }
            TokKind::Ident(s) if (s == "OI" || s == "CC") && matches!(self.peek_at(1), TokKind::Sym("(")) => {
                self.bump();
                self.bump();
                let (p, q) = self.pair()?;
                self.expect_sym(")")?;
                Ok(if s == "OI" { Gen::Open(p, q) } else { Gen::CoClosed(p, q) })
            }
            TokKind::Ident(s) if s == "DN" => {
                self.bump();
                self.expect_sym("(")?;
                let n = if self.eat_word("empty") {
                    NatOpen::Empty
                } else if self.eat_word("all") {
                    NatOpen::All
                } else {
                    match self.peek().clone() {
                        TokKind::Num(r) if r.is_integer() && *r.numer() >= 0 => {
                            self.bump();
                            NatOpen::DownTo(*r.numer() as u64)
                        }
                        _ => return self.error("expected a natural number, `empty` or `all`"),
                    }
                };
                self.expect_sym(")")?;
                Ok(Gen::Nat(n))
            }
            TokKind::Ident(_) => Ok(Gen::Named(self.ident()?)),
            _ => self.error(format!("expected a generator, found {}", self.describe())),
        }
    }

    fn pair(&mut self) -> Result<(Expr, Expr)> {
        let p = self.expr()?;
        self.expect_sym(",")?;
        Ok((p, self.expr()?))
    }

    fn binders(&mut self) -> Result<Vec<(String, Option<Sort>)>> {
        let mut out = Vec::new();
        loop {
            let name = self.ident()?;
            let annotated = self.is_sym(":") && matches!(self.peek_at(1), TokKind::Ident(w) if SORT_WORDS.contains(&w.as_str()));
            let sort = if annotated {
                self.bump();
                let s = match self.peek() {
                    TokKind::Ident(w) if w == "Z" => Sort::Int,
                    TokKind::Ident(w) if w == "Q" => Sort::Rat,
                    TokKind::Ident(w) if w == "Unit" => Sort::Unit,
                    TokKind::Ident(w) if w == "Lower" => Sort::Lower,
                    TokKind::Ident(w) if w == "Upper" => Sort::Upper,
                    _ => return self.error(format!("expected a sort, found {}", self.describe())),
                };
                self.bump();
                Some(s)
            } else {
                None
            };
            out.push((name, sort));
            if !self.eat_sym(",") {
                return Ok(out);
            }
        }
    }

    pub fn term(&mut self) -> Result<Term> {
        if (self.is_word("V") || self.is_word("D")) && matches!(self.peek_at(1), TokKind::Sym("[")) {
            let directed = self.is_word("D");
            self.bump();
            self.bump();
            let raw = self.binders()?;
            let cond = if self.eat_sym("|") { self.cond()? } else { Cond::True };
            self.expect_sym("]")?;
            let at = self.pos;
            let mut ms = self.term_meet()?;
            if ms.len() != 1 {
                self.pos = at;
                return self.error("the body of a family must be a single meet");
            }
            let mut fam = Family { binders: Vec::new(), cond, body: ms.pop().expect("one"), directed };
            let inferred = family_inferred(&fam);
            fam.binders = raw
                .into_iter()
                .map(|(n, s)| {
                    let sort = s.unwrap_or_else(|| inferred.get(&n).copied().unwrap_or(Sort::Rat));
                    Binder { name: n, sort }
                })
                .collect();
            return Ok(Term::Family(fam));
        }
        let mut ms = self.term_meet()?;
        while self.is_word("v") || self.is_sym("v") {
            self.bump();
            ms.extend(self.term_meet()?);
        }
        Ok(Term::Join(ms))
    }

    /// A meet of atoms, distributed out into a join of meets.
    fn term_meet(&mut self) -> Result<Vec<Meet>> {
        let mut acc = self.term_atom()?;
        while self.eat_sym("^") {
            let rhs = self.term_atom()?;
            let mut next = Vec::new();
            for a in &acc {
                for b in &rhs {
                    let mut m = a.0.clone();
                    m.extend(b.0.iter().cloned());
                    next.push(Meet(m));
                }
            }
            acc = next;
        }
        Ok(acc)
    }

    fn term_atom(&mut self) -> Result<Vec<Meet>> {
        match self.peek().clone() {
            TokKind::Num(r) if r == Rat::from_integer(0) => {
                self.bump();
                Ok(Vec::new())
            }
            TokKind::Num(r) if r == Rat::from_integer(1) => {
                self.bump();
                Ok(vec![Meet::one()])
            }
            TokKind::Sym("(") => {
                let open = self.pos;
                self.bump();
                let ms = self.inner_join()?;
                self.close_paren(open)?;
                Ok(ms)
            }
            TokKind::Ident(w) if (w == "join" || w == "meet") && matches!(self.peek_at(1), TokKind::Sym("(")) => {
                self.bump();
                let open = self.pos;
                self.bump();
                let mut args = Vec::new();
                if !self.is_sym(")") {
                    loop {
                        args.push(self.inner_join()?);
                        if !self.eat_sym(",") {
                            break;
                        }
                    }
                }
                self.close_paren(open)?;
                if w == "join" {
                    return Ok(args.concat());
                }
                Ok(args.into_iter().fold(vec![Meet::one()], |acc, rhs| {
                    acc.iter().flat_map(|a| rhs.iter().map(move |b| Meet(a.0.iter().chain(&b.0).cloned().collect()))).collect()
                }))
            }
            _ => Ok(vec![Meet::single(self.gen()?)]),
        }
    }

    fn inner_join(&mut self) -> Result<Vec<Meet>> {
        let at = self.pos;
        match self.term()? {
            Term::Join(ms) => Ok(ms),
            Term::Family(_) => {
                self.pos = at;
                self.error("families cannot be nested")
            }
        }
    }

    /// A missing `)` at the end of input is reported at the `(` it closes.
    fn close_paren(&mut self, open: usize) -> Result<()> {
        if self.eat_sym(")") {
            return Ok(());
        }
        if matches!(self.peek(), TokKind::Eof) {
            let t = &self.toks[open];
            return Err(Error::Parse { line: t.line, col: t.col, message: "unclosed `(`".into() });
        }
        self.error(format!("expected `)`, found {}", self.describe()))
    }

    // ----- relations and documents -----

    fn rel_op(&mut self) -> Result<RelOp> {
        if self.eat_sym("=") {
            Ok(RelOp::Eq)
        } else if self.eat_sym("<=") {
            Ok(RelOp::Le)
        } else {
            self.error(format!("expected `=` or `<=`, found {}", self.describe()))
        }
    }

    pub fn relation(&mut self) -> Result<Relation> {
        if self.eat_word("rel") {
            let lhs = self.term()?;
            let op = self.rel_op()?;
            let rhs = self.term()?;
            self.expect_sym(";")?;
            return Ok(Relation { params: Vec::new(), cond: Cond::True, lhs, op, rhs });
        }
        self.expect_word("forall")?;
        let raw = self.binders()?;
        let cond = if self.eat_sym("|") { self.cond()? } else { Cond::True };
        self.expect_sym(":")?;
        let lhs = self.term()?;
        let op = self.rel_op()?;
        let rhs = self.term()?;
        self.expect_sym(";")?;
        let mut r = Relation { params: Vec::new(), cond, lhs, op, rhs };
        let inferred = relation_inferred(&r);
        r.params = raw
            .into_iter()
            .map(|(n, s)| Binder { sort: s.unwrap_or_else(|| inferred.get(&n).copied().unwrap_or(Sort::Rat)), name: n })
            .collect();
        Ok(r)
    }

    fn domain(&mut self) -> Result<GeneratorDomain> {
        self.expect_word("domain")?;
        if self.eat_word("finite") {
            let d = self.finite_domain()?;
            self.eat_sym(";");
            return Ok(GeneratorDomain::Finite(d));
        }
        let tagged = if self.eat_word("tagged") {
            match self.tag() {
                Some(t) => {
                    self.bump();
                    Some(t)
                }
                None => return self.error("expected `dia`, `box` or `boxtimes`"),
            }
        } else {
            None
        };
        let at = self.pos;
        let name = self.dashed_word()?;
        let Some(b) = Builtin::from_name(&name) else {
            self.pos = at;
            return self.error(format!("unknown domain `{name}`"));
        };
        self.expect_sym(";")?;
        Ok(match tagged {
            Some(tag) => GeneratorDomain::Tagged { tag, parent: b },
            None => GeneratorDomain::builtin(b),
        })
    }

    fn finite_domain(&mut self) -> Result<FiniteDomain> {
        self.expect_sym("{")?;
        let mut gens: Vec<Gen> = Vec::new();
        let mut pairs: Vec<(Gen, Gen, usize)> = Vec::new();
        let (mut meets, mut joins, mut zero) = (false, false, false);
        let mut asserted: Vec<(bool, Gen, Gen, Gen, usize)> = Vec::new();
        while !self.eat_sym("}") {
            if self.eat_word("gens") {
                loop {
                    gens.push(self.gen()?);
                    if !self.eat_sym(",") {
                        break;
                    }
                }
            } else if self.eat_word("leq") {
                loop {
                    let at = self.pos;
                    let a = self.gen()?;
                    self.expect_sym("<=")?;
                    let b = self.gen()?;
                    pairs.push((a, b, at));
                    if !self.eat_sym(",") {
                        break;
                    }
                }
            } else if self.eat_word("meets") {
                meets = true;
            } else if self.eat_word("joins") {
                joins = true;
            } else if self.is_word("meet") || self.is_word("join") {
                let is_meet = self.is_word("meet");
                let at = self.pos;
                self.bump();
                let a = self.gen()?;
                let b = self.gen()?;
                self.expect_sym("=")?;
                let c = self.gen()?;
                if is_meet {
                    meets = true;
                } else {
                    joins = true;
                }
                asserted.push((is_meet, a, b, c, at));
            } else {
                let at = self.pos;
                let w = self.dashed_word()?;
                if w != "zero-meets" {
                    self.pos = at;
                    return self.error(format!("unknown domain item `{w}`"));
                }
                zero = true;
            }
            self.expect_sym(";")?;
        }
        let index = |p: &Self, g: &Gen, at: usize| -> Result<usize> {
            gens.iter().position(|h| h == g).ok_or_else(|| {
                let t = &p.toks[at];
                Error::Parse { line: t.line, col: t.col, message: format!("undeclared generator {g}") }
            })
        };
        let mut idx = Vec::new();
        for (a, b, at) in &pairs {
            idx.push((index(self, a, *at)?, index(self, b, *at)?));
        }
        for (is_meet, a, b, c, at) in &asserted {
            let (a, b, c) = (index(self, a, *at)?, index(self, b, *at)?, index(self, c, *at)?);
            // a declared meet/join is also an order fact
            if *is_meet {
                idx.push((c, a));
                idx.push((c, b));
            } else {
                idx.push((a, c));
                idx.push((b, c));
            }
        }
        let d = FiniteDomain::new(gens, &idx, meets, joins, zero)?;
        for (is_meet, a, b, c, at) in asserted {
            let (ia, ib, ic) = (d.index_of(&a), d.index_of(&b), d.index_of(&c));
            let (ia, ib, ic) = (ia.expect("declared"), ib.expect("declared"), ic.expect("declared"));
            let ok = if is_meet { d.meet_idx(ia, ib) == Some(Some(ic)) } else { d.join_idx(ia, ib) == Some(ic) };
            if !ok {
                let t = &self.toks[at];
                return Err(Error::Parse {
                    line: t.line,
                    col: t.col,
                    message: format!("declared {} of {a} and {b} is not {c} in the given order", if is_meet { "meet" } else { "join" }),
                });
            }
        }
        Ok(d)
    }

    pub fn presentation(&mut self) -> Result<Presentation> {
        self.expect_word("presentation")?;
        let at = self.pos;
        let w = self.ident().or_else(|_| match self.peek().clone() {
            TokKind::Ident(s) => {
                self.bump();
                Ok(s)
            }
            _ => self.error("expected a presentation kind"),
        })?;
        let Some(kind) = PresentationKind::from_name(&w) else {
            self.pos = at;
            return self.error(format!("unknown presentation kind `{w}`"));
        };
        self.expect_sym("{")?;
        let domain = self.domain()?;
        let mut relations = Vec::new();
        while !self.eat_sym("}") {
            relations.push(self.relation()?);
        }
        Ok(Presentation { kind, domain, relations })
    }
}

impl Parser<'_> {
    fn signed_constant(&mut self) -> Result<Endpoint> {
        if self.eat_sym("-") {
            return Ok(self.constant()?.neg());
        }
        self.eat_sym("+");
        self.constant()
    }

    fn image_case(&mut self) -> Result<ImageCase> {
        self.expect_word("case")?;
        let mut pin = Env::new();
        if self.eat_word("pin") {
            loop {
                let name = self.ident()?;
                self.expect_sym("=")?;
                pin.insert(name, self.signed_constant()?);
                if !self.eat_sym(",") {
                    break;
                }
            }
        }
        let cond = if self.eat_word("if") { self.cond()? } else { Cond::True };
        self.expect_sym(":")?;
        let image = self.term()?;
        self.expect_sym(";")?;
        Ok(ImageCase { pin, cond, image })
    }

    /// `quotient <mode> { image g = t; ... pattern G { case ...; } }`
    pub fn quotient_spec(&mut self) -> Result<QuotientSpec> {
        self.expect_word("quotient")?;
        let at = self.pos;
        let name = self.dashed_word()?;
        let mode: QuotientMode = match name.parse() {
            Ok(m) => m,
            Err(_) => {
                self.pos = at;
                return self.error(format!("unknown quotient mode `{name}`"));
            }
        };
        self.expect_sym("{")?;
        let mut image = Vec::new();
        let mut schematic = None;
        while !self.eat_sym("}") {
            if self.eat_word("image") {
                let generator = self.gen()?;
                self.expect_sym("=")?;
                let t = self.term()?;
                self.expect_sym(";")?;
                image.push(ImageEntry { generator, image: t });
            } else if self.is_word("pattern") {
                if schematic.is_some() {
                    return self.error("at most one pattern block is allowed");
                }
                self.bump();
                let pattern = self.gen()?;
                self.expect_sym("{")?;
                let mut cases = Vec::new();
                while !self.eat_sym("}") {
                    cases.push(self.image_case()?);
                }
                schematic = Some(SchematicImage { pattern, cases });
            } else {
                return self.error(format!("expected `image`, `pattern` or `}}`, found {}", self.describe()));
            }
        }
        Ok(QuotientSpec { mode, image, schematic })
    }
}
