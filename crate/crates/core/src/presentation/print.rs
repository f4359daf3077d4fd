//! Text rendering of presentations, in plain ASCII or with mathematical
//! symbols. Both styles are accepted by the parser in `crate::dsl`.

use std::fmt;

use super::domain::GeneratorDomain;
use super::expr::{Cond, Expr, Sort, Sorts};
use super::gen::{Gen, NatOpen};
use super::relation::{Presentation, RelOp, Relation};
use super::term::{Binder, Family, Meet, Term};
use crate::rational::Endpoint;
use crate::transform::QuotientSpec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Style {
    #[default]
    Ascii,
    Unicode,
}

impl Style {
    fn pick(self, ascii: &'static str, unicode: &'static str) -> &'static str {
        match self {
            Style::Ascii => ascii,
            Style::Unicode => unicode,
        }
    }
}

pub const KEYWORDS: &[&str] = &[
    "v",
    "inf",
    "OI",
    "CC",
    "DN",
    "dia",
    "box",
    "boxtimes",
    "V",
    "D",
    "rel",
    "forall",
    "presentation",
    "domain",
    "finite",
    "tagged",
    "gens",
    "leq",
    "meets",
    "joins",
    "empty",
    "all",
    "true",
    "false",
    "meet",
    "join",
    "Z",
    "Q",
    "Unit",
    "Lower",
    "Upper",
    "quotient",
    "image",
    "pattern",
    "case",
    "pin",
    "if",
];

pub fn is_plain_ident(s: &str) -> bool {
    let mut cs = s.chars();
    match cs.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    cs.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'') && !KEYWORDS.contains(&s)
}

fn endpoint(e: &Endpoint, style: Style) -> String {
    match style {
        Style::Ascii => e.to_string(),
        Style::Unicode => e.to_unicode(),
    }
}

fn expr_level(e: &Expr) -> u8 {
    match e {
        Expr::Max(..) => 1,
        Expr::Min(..) => 2,
        Expr::Add(..) => 3,
        Expr::Const(c) if c.is_negative() => 3,
        _ => 4,
    }
}

pub fn expr(e: &Expr, style: Style) -> String {
    // additions are bracketed under lattice operations, as is customary
    let child = |c: &Expr, min: u8, lattice: bool| {
        let s = expr(c, style);
        if expr_level(c) < min || (lattice && matches!(c, Expr::Add(..))) {
            format!("({s})")
        } else {
            s
        }
    };
    match e {
        Expr::Const(c) => endpoint(c, style),
        Expr::Var(v) => v.clone(),
        Expr::Add(a, b) => match b.as_ref() {
            Expr::Const(c) if c.is_negative() => {
                format!("{}-{}", child(a, 3, false), endpoint(&c.neg(), style).trim_start_matches('+'))
            }
            _ => format!("{}+{}", child(a, 3, false), child(b, 4, false)),
        },
        Expr::Max(a, b) => format!("{} {} {}", child(a, 1, true), style.pick("v", "∨"), child(b, 2, true)),
        Expr::Min(a, b) => format!("{} {} {}", child(a, 2, true), style.pick("^", "∧"), child(b, 3, true)),
    }
}

fn cmp_chain(parts: &[Cond], style: Style) -> Option<String> {
    let mut out = String::new();
    let mut last: Option<&Expr> = None;
    for p in parts {
        let Cond::Cmp(a, op, b) = p else { return None };
        match last {
            None => out.push_str(&expr(a, style)),
            Some(l) if l == a => {}
            Some(_) => return None,
        }
        out.push_str(&format!(" {} {}", style.pick(op.ascii(), op.unicode()), expr(b, style)));
        last = Some(b);
    }
    Some(out)
}

pub fn cond(c: &Cond, style: Style) -> String {
    match c {
        Cond::True => "true".into(),
        Cond::False => "false".into(),
        Cond::Cmp(..) => cmp_chain(std::slice::from_ref(c), style).expect("single comparison"),
        Cond::And(cs) => {
            // greedily merge comparisons that share an operand into chains
            let mut pieces = Vec::new();
            let mut i = 0;
            while i < cs.len() {
                let mut j = i + 1;
                while j < cs.len() && cmp_chain(&cs[i..=j], style).is_some() {
                    j += 1;
                }
                if j > i + 1 || matches!(cs[i], Cond::Cmp(..)) {
                    pieces.push(cmp_chain(&cs[i..j], style).expect("chain"));
                } else {
                    let s = cond(&cs[i], style);
                    pieces.push(if matches!(cs[i], Cond::Or(_)) { format!("({s})") } else { s });
                }
                i = j;
            }
            pieces.join(" & ")
        }
        Cond::Or(cs) => cs
            .iter()
            .map(|x| {
                let s = cond(x, style);
                if matches!(x, Cond::Or(_)) {
                    format!("({s})")
                } else {
                    s
                }
            })
            .collect::<Vec<_>>()
            .join(" | "),
    }
}

pub fn name(s: &str) -> String {
    if is_plain_ident(s) {
        s.to_string()
    } else {
        format!("{s:?}")
    }
}

pub fn gen(g: &Gen, style: Style) -> String {
    match g {
        Gen::Named(s) => name(s),
        Gen::Open(p, q) => match style {
            Style::Ascii => format!("OI({},{})", expr(p, style), expr(q, style)),
            Style::Unicode => format!("⦅{},{}⦆", expr(p, style), expr(q, style)),
        },
        Gen::CoClosed(p, q) => match style {
            Style::Ascii => format!("CC({},{})", expr(p, style), expr(q, style)),
            Style::Unicode => format!("⦆{},{}⦅", expr(p, style), expr(q, style)),
        },
        Gen::Nat(n) => {
            let inner = match n {
                NatOpen::Empty => "empty".to_string(),
                NatOpen::DownTo(k) => k.to_string(),
                NatOpen::All => "all".to_string(),
            };
            format!("DN({inner})")
        }
        Gen::Tagged(t, inner) => match style {
            Style::Ascii => format!("{} {}", t.ascii(), gen(inner, style)),
            Style::Unicode => format!("{}{}", t.unicode(), gen(inner, style)),
        },
    }
}

pub fn meet(m: &Meet, style: Style) -> String {
    if m.0.is_empty() {
        return "1".into();
    }
    m.0.iter().map(|g| gen(g, style)).collect::<Vec<_>>().join(style.pick(" ^ ", " ∧ "))
}

fn sort_name(s: Sort, style: Style) -> &'static str {
    match s {
        Sort::Int => style.pick("Z", "ℤ"),
        Sort::Rat => style.pick("Q", "ℚ"),
        Sort::Unit => "Unit",
        Sort::Lower => "Lower",
        Sort::Upper => "Upper",
    }
}

/// Binders print their sort only where inference would not recover it.
fn binders(bs: &[Binder], inferred: &Sorts, style: Style) -> String {
    bs.iter()
        .map(|b| {
            if inferred.get(&b.name).copied().unwrap_or(Sort::Rat) == b.sort {
                b.name.clone()
            } else {
                format!("{}:{}", b.name, sort_name(b.sort, style))
            }
        })
        .collect::<Vec<_>>()
        .join(",")
}

pub fn family_inferred(f: &Family) -> Sorts {
    let mut s = Sorts::new();
    f.body.0.iter().for_each(|g| g.infer_sorts(&mut s));
    s
}

pub fn relation_inferred(r: &Relation) -> Sorts {
    let mut s = Sorts::new();
    r.lhs.infer_sorts(&mut s);
    r.rhs.infer_sorts(&mut s);
    s
}

pub fn term(t: &Term, style: Style) -> String {
    match t {
        Term::Join(ms) if ms.is_empty() => "0".into(),
        Term::Join(ms) => ms.iter().map(|m| meet(m, style)).collect::<Vec<_>>().join(style.pick(" v ", " ∨ ")),
        Term::Family(f) => {
            let open = match (f.directed, style) {
                (false, Style::Ascii) => "V[",
                (true, Style::Ascii) => "D[",
                (false, Style::Unicode) => "⋁[",
                (true, Style::Unicode) => "⊔[",
            };
            let mut s = format!("{open}{}", binders(&f.binders, &family_inferred(f), style));
            if f.cond != Cond::True {
                s.push_str(" | ");
                s.push_str(&cond(&f.cond, style));
            }
            s.push_str("] ");
            s.push_str(&meet(&f.body, style));
            s
        }
    }
}

pub fn relation(r: &Relation, style: Style) -> String {
    let op = match r.op {
        RelOp::Le => style.pick("<=", "≤"),
        RelOp::Eq => "=",
    };
    let body = format!("{} {op} {}", term(&r.lhs, style), term(&r.rhs, style));
    if r.params.is_empty() && r.cond == Cond::True {
        return format!("rel {body};");
    }
    let mut s = format!("forall {}", binders(&r.params, &relation_inferred(r), style));
    if r.cond != Cond::True {
        s.push_str(" | ");
        s.push_str(&cond(&r.cond, style));
    }
    format!("{s} : {body};")
}

pub fn domain(d: &GeneratorDomain, style: Style) -> String {
    match d {
        GeneratorDomain::Builtin { name } => format!("domain {};", name.name()),
        GeneratorDomain::Tagged { tag, parent } => format!("domain tagged {} {};", style.pick(tag.ascii(), tag.unicode()), parent.name()),
        GeneratorDomain::Finite(f) => {
            let mut s = String::from("domain finite {\n");
            let gens: Vec<String> = f.elements().iter().map(|g| gen(g, style)).collect();
            s.push_str(&format!("    gens {};\n", gens.join(", ")));
            let pairs = f.cover_pairs();
            if !pairs.is_empty() {
                let le = style.pick("<=", "≤");
                let ps: Vec<String> = pairs.iter().map(|&(a, b)| format!("{} {le} {}", gens[a], gens[b])).collect();
                s.push_str(&format!("    leq {};\n", ps.join(", ")));
            }
            let st = f.structure();
            if st.meets {
                s.push_str("    meets;\n");
            }
            if st.joins {
                s.push_str("    joins;\n");
            }
            if f.zero_meets() {
                s.push_str("    zero-meets;\n");
            }
            s.push_str("  }");
            s
        }
    }
}

pub fn presentation(p: &Presentation, style: Style) -> String {
    let mut s = format!("presentation {} {{\n  {}\n", p.kind.name(), domain(&p.domain, style));
    for r in &p.relations {
        s.push_str("  ");
        s.push_str(&relation(r, style));
        s.push('\n');
    }
    s.push('}');
    s.push('\n');
    s
}

macro_rules! ascii_display {
    ($ty:ty, $f:ident) => {
        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&$f(self, Style::Ascii))
            }
        }
    };
}

ascii_display!(Expr, expr);
ascii_display!(Cond, cond);
ascii_display!(Gen, gen);
ascii_display!(Meet, meet);
ascii_display!(Term, term);
ascii_display!(Relation, relation);
ascii_display!(Presentation, presentation);

pub fn quotient_spec(q: &QuotientSpec, style: Style) -> String {
    let mut s = format!("quotient {} {{\n", q.mode.name());
    for e in &q.image {
        s.push_str(&format!("  image {} = {};\n", gen(&e.generator, style), term(&e.image, style)));
    }
    if let Some(sch) = &q.schematic {
        s.push_str(&format!("  pattern {} {{\n", gen(&sch.pattern, style)));
        for c in &sch.cases {
            s.push_str("    case");
            if !c.pin.is_empty() {
                let pins: Vec<String> = c.pin.iter().map(|(k, v)| format!("{} = {}", name(k), endpoint(v, style))).collect();
                s.push_str(&format!(" pin {}", pins.join(", ")));
            }
            if c.cond != Cond::True {
                s.push_str(&format!(" if {}", cond(&c.cond, style)));
            }
            s.push_str(&format!(" : {};\n", term(&c.image, style)));
        }
        s.push_str("  }\n");
    }
    s.push_str("}\n");
    s
}

ascii_display!(QuotientSpec, quotient_spec);
