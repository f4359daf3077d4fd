//! Text syntax for presentations.
//!
//! ```text
//! presentation Sup {
//!   domain interval-R;
//!   rel OI(-inf,+inf) = 1;
//!   forall p,q,p',q' | p <= p' < q <= q' : OI(p,q) v OI(p',q') = OI(p,q');
//! }
//! ```
//!
//! The same text with `⦅p,q⦆`, `∨`, `∧`, `≤`, `◇`, `⋁` and so on is also
//! accepted; [`print`] produces either spelling.

mod lexer;
mod parser;

pub use lexer::{tokenize, Tok, TokKind};
pub use parser::Parser;

use crate::error::Result;
use crate::presentation::print::{self, Style};
use crate::presentation::{Cond, Expr, Gen, Presentation, Relation, Term};
use crate::transform::QuotientSpec;

fn whole<T>(src: &str, f: impl FnOnce(&mut Parser) -> Result<T>) -> Result<T> {
    let mut p = Parser::new(src)?;
    let v = f(&mut p)?;
    p.expect_eof()?;
    Ok(v)
}

pub fn parse_presentation(src: &str) -> Result<Presentation> {
    whole(src, |p| p.presentation())
}

pub fn parse_relation(src: &str) -> Result<Relation> {
    whole(src, |p| p.relation())
}

pub fn parse_term(src: &str) -> Result<Term> {
    whole(src, |p| p.term())
}

pub fn parse_gen(src: &str) -> Result<Gen> {
    whole(src, |p| p.gen())
}

pub fn parse_expr(src: &str) -> Result<Expr> {
    whole(src, |p| p.expr())
}

pub fn parse_cond(src: &str) -> Result<Cond> {
    whole(src, |p| p.cond())
}

pub fn parse_quotient_spec(src: &str) -> Result<QuotientSpec> {
    whole(src, |p| p.quotient_spec())
}

pub fn print(p: &Presentation, style: Style) -> String {
    print::presentation(p, style)
}

pub fn print_quotient_spec(q: &QuotientSpec, style: Style) -> String {
    print::quotient_spec(q, style)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::presentation::{Builtin, GeneratorDomain, PresentationKind, Sort};

    const REALS: &str = "presentation Sup {
  domain interval-R;
  rel OI(-inf,+inf) = 1;
  forall p,q,p',q' | p <= p' < q <= q' : OI(p,q) v OI(p',q') = OI(p,q');
  forall p,q : OI(p,q) = D[p',q' | p < p' < q' < q] OI(p',q');
}
";

    #[test]
    fn parses_and_prints_reals() {
        let p = parse_presentation(REALS).unwrap();
        assert_eq!(p.kind, PresentationKind::Sup);
        assert_eq!(p.domain, GeneratorDomain::builtin(Builtin::IntervalR));
        assert_eq!(p.relations.len(), 3);
        assert_eq!(p.relations[1].params[0].sort, Sort::Lower);
        assert_eq!(p.relations[1].params[1].sort, Sort::Upper);
        assert_eq!(p.relations[1].params[2].sort, Sort::Lower);
        assert_eq!(p.relations[2].params[0].sort, Sort::Lower);
        assert_eq!(print(&p, Style::Ascii), REALS);
        let uni = print(&p, Style::Unicode);
        assert!(uni.contains("⦅p,q⦆ ∨ ⦅p',q'⦆ = ⦅p,q'⦆"), "{uni}");
        assert_eq!(parse_presentation(&uni).unwrap(), p);
    }

    #[test]
    fn expressions_round_trip() {
        for s in ["p v (p'+n)", "q ^ (q'+n)", "p-1", "-1/2", "-inf", "a v b v c", "a v (b v c)", "a ^ b v c"] {
            let e = parse_expr(s).unwrap();
            assert_eq!(parse_expr(&e.to_string()).unwrap(), e, "{s}");
        }
        assert_eq!(parse_expr("p v (p'+n)").unwrap().to_string(), "p v (p'+n)");
    }

    #[test]
    fn chained_conditions() {
        let c = parse_cond("p <= p' < q <= q'").unwrap();
        assert!(matches!(&c, Cond::And(v) if v.len() == 3));
        assert_eq!(c.to_string(), "p <= p' < q <= q'");
        let d = parse_cond("(p' != 0 | q != 1) & (p != 0 | q' != 1)").unwrap();
        assert_eq!(parse_cond(&d.to_string()).unwrap(), d);
        assert_eq!(parse_cond("(p+1) < q").unwrap().to_string(), "p+1 < q");
    }

    #[test]
    fn tagged_and_family_terms() {
        let t = parse_term("V[n:Z] dia OI(p v (p'+n),q ^ (q'+n))").unwrap();
        assert_eq!(t.to_string(), "V[n:Z] dia OI(p v (p'+n),q ^ (q'+n))");
        let u = parse_term("⋁[n:ℤ] ◇⦅p ∨ (p'+n),q ∧ (q'+n)⦆").unwrap();
        assert_eq!(t, u);
    }

    #[test]
    fn distributes_parenthesised_joins() {
        let t = parse_term("a ^ (b v c)").unwrap();
        assert_eq!(t.to_string(), "a ^ b v a ^ c");
    }

    #[test]
    fn finite_domain_with_declared_meet() {
        let src = "presentation Sup {
  domain finite { gens a, b, c, t; leq a <= b, b <= t, c <= t; meet b c = a; meets; }
  rel b <= c;
}";
        let p = parse_presentation(src).unwrap();
        let f = p.domain.finite().unwrap();
        assert_eq!(f.len(), 4);
        assert!(f.structure().meets);
        let again = parse_presentation(&print(&p, Style::Ascii)).unwrap();
        assert_eq!(again, p);
    }

    #[test]
    fn reports_line_and_column() {
        let src = "presentation Sup {\n  domain interval-R;\n  rel OI(0,1) = = 1;\n}";
        match parse_presentation(src) {
            Err(Error::Parse { line, col, .. }) => assert_eq!((line, col), (3, 17)),
            other => panic!("{other:?}"),
        }
        match parse_presentation("presentation Sup {\n  domain circle;\n}") {
            Err(Error::Parse { line, col, message }) => {
                assert_eq!((line, col), (2, 10));
                assert!(message.contains("circle"));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn quoted_names() {
        let g = parse_gen("\"a∧b\"").unwrap();
        assert_eq!(g, Gen::named("a∧b"));
        assert_eq!(g.to_string(), "\"a∧b\"");
        assert_eq!(Gen::named("v").to_string(), "\"v\"");
    }
}
