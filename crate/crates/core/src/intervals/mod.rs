//! The reals, the unit interval, reverse-ordered ℕ, and the two circles.

mod family;
mod nat;

pub use family::expand_family_meet;
pub use nat::{coinserter_carrier, nat_reverse_counterexample, successor_pullback, upper_adjoint_to_point};

use crate::dsl::{parse_presentation, parse_relation, parse_term};
use crate::error::{Error, Result};
use crate::lattice::QuotientMode;
use crate::presentation::normalize::normalize_relation;
use crate::presentation::{Cond, Env, Expr, Gen, Presentation, Relation};
use crate::rational::Endpoint;
use crate::transform::{present_open, present_proper, ImageCase, QuotientSpec, TransformedPresentation};

pub const REALS: &str = "presentation Sup {
  domain interval-R;
  rel OI(-inf,+inf) = 1;
  forall p,q,p',q' | p <= p' < q <= q' : OI(p,q) v OI(p',q') = OI(p,q');
  forall p,q : OI(p,q) = V[p',q' | p < p' < q' < q] OI(p',q');
}
";

pub const UNIT_INTERVAL: &str = "presentation PreFrm {
  domain interval-01;
  rel CC(0,1) = 0;
  forall p,q,p',q' | p <= p' <= q <= q' : CC(p,q) ^ CC(p',q') = CC(p,q');
  forall p,q | p > q : CC(p,q) = 1;
  forall p,q | p < 1 & q < 1 : CC(p,q) = D[q' | q' > q] CC(p,q');
  forall p,q | 0 < p & 0 < q : CC(p,q) = D[p' | p' < p] CC(p',q);
}
";

fn builtin(src: &str) -> Presentation {
    parse_presentation(src).expect("builtin presentation parses")
}

/// The reals over rational open intervals: top, join rule, refinement.
/// Empty intervals are zero in the domain, so no `p ≥ q` relation is needed.
pub fn real_presentation() -> Presentation {
    builtin(REALS)
}

/// `[0,1]` over complements of closed intervals.
pub fn unit_interval_presentation() -> Presentation {
    builtin(UNIT_INTERVAL)
}

fn open_pattern() -> Gen {
    Gen::open(Expr::var("p"), Expr::var("q"))
}

fn coclosed_pattern() -> Gen {
    Gen::coclosed(Expr::var("p"), Expr::var("q"))
}

/// `⦅p,q⦆ ↦ ⋁_{n ∈ ℤ} ⦅p+n, q+n⦆`.
pub fn circle_open_spec() -> QuotientSpec {
    let image = parse_term("V[n:Z] OI(p+n, q+n)").expect("family parses");
    QuotientSpec::schematic(QuotientMode::Open, open_pattern(), vec![ImageCase { pin: Env::new(), cond: Cond::True, image }])
}

pub fn circle_open_presentation() -> Result<TransformedPresentation> {
    present_open(&real_presentation(), &circle_open_spec())
}

fn pin(pairs: &[(&str, i64)]) -> Env {
    pairs.iter().map(|(k, v)| (k.to_string(), Endpoint::int(*v))).collect()
}

fn case(p: &[(&str, i64)], cond: &str, image: &str) -> ImageCase {
    let cond = if cond.is_empty() { Cond::True } else { crate::dsl::parse_cond(cond).expect("condition parses") };
    ImageCase { pin: pin(p), cond, image: parse_term(image).expect("image parses") }
}

/// The interior operator gluing 0 to 1, by cases on the endpoints.
pub fn circle_proper_spec() -> QuotientSpec {
    QuotientSpec::schematic(
        QuotientMode::Proper,
        coclosed_pattern(),
        vec![
            case(&[], "p > 0 & q < 1", "CC(p,q)"),
            case(&[("p", 0)], "q < 1", "CC(p,q) ^ CC(1,1)"),
            case(&[("q", 1)], "p > 0", "CC(p,q) ^ CC(0,0)"),
            case(&[("p", 0), ("q", 1)], "", "0"),
        ],
    )
}

const EXTENDED_JOIN: &str = "forall p,q,p',q' | (p' > 0 | q < 1) & (p > 0 | q' < 1) : box CC(p,q) v box CC(p',q') = box CC(p v p',q ^ q');";
const MERGED: &str = "forall q,p' : box CC(0,q) v box CC(p',1) = box CC(p',q) ^ box CC(0,0) ^ box CC(1,1);";

fn pinned_side_conditions() -> Vec<Cond> {
    ["q' < 1", "p' > 0"].iter().map(|c| crate::dsl::parse_cond(c).expect("condition parses")).collect()
}

/// The circle as a quotient of `[0,1]`. The pinned cases keep no side
/// condition: at the excluded boundary they follow from the meet rule.
/// With `simplify`, the join rule is extended to all but the glued
/// endpoints and the leftover pinned cases merge into one rule.
pub fn circle_proper_presentation(simplify: bool) -> Result<TransformedPresentation> {
    let mut out = present_proper(&unit_interval_presentation(), &circle_proper_spec())?;
    let dom = out.presentation.domain.clone();
    let residual = pinned_side_conditions();
    for r in &mut out.presentation.relations {
        if residual.contains(&r.cond) {
            r.cond = Cond::True;
        }
    }
    if !simplify {
        return Ok(out);
    }
    let rels = &mut out.presentation.relations;
    // unit relation, then the join rule and the two pinned cases
    if rels.len() < 4 || rels[1].params.len() != 4 || rels[2].cond != Cond::True || rels[3].cond != Cond::True {
        return Err(Error::Shape("unexpected layout of the raw circle presentation".into()));
    }
    let parse = |s: &str| -> Result<Relation> { normalize_relation(&parse_relation(s)?, &dom) };
    rels[1] = parse(EXTENDED_JOIN)?;
    rels[2] = parse(MERGED)?;
    rels.remove(3);
    Ok(out)
}
