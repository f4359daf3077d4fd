//! Meets of an open interval with a ℤ-indexed family of shifted intervals.

use crate::error::{Error, Result};
use crate::presentation::{Builtin, CmpOp, Cond, Expr, Family, Gen, GeneratorDomain, Meet, Sort, Sorts, Term};
use crate::rational::Endpoint;

/// `e = c + k·n` with `k ∈ {0, 1}`.
fn affine(e: &Expr, n: &str) -> Option<(Expr, i32)> {
    match e {
        Expr::Var(v) if v == n => Some((Expr::Const(Endpoint::zero()), 1)),
        Expr::Const(_) | Expr::Var(_) => Some((e.clone(), 0)),
        Expr::Add(a, b) => {
            let (ca, ka) = affine(a, n)?;
            let (cb, kb) = affine(b, n)?;
            (ka + kb <= 1).then(|| (Expr::add(ca, cb).simplify(&Sorts::new()), ka + kb))
        }
        _ => None,
    }
}

fn is_const(e: &Expr, c: Endpoint) -> bool {
    e.as_const() == Some(c)
}

/// Bounds on `n` from `lhs < rhs`, or the residual condition.
enum Atom {
    True,
    False,
    Above(Endpoint),
    Below(Endpoint),
    Keep(Cond),
}

fn atom(lhs: &Expr, rhs: &Expr, n: &str) -> Result<Atom> {
    if is_const(lhs, Endpoint::NegInf) || is_const(rhs, Endpoint::PosInf) {
        return Ok(Atom::True);
    }
    let non_affine = || Error::Shape(format!("family is not affine in {n}"));
    let (cl, kl) = affine(lhs, n).ok_or_else(non_affine)?;
    let (cr, kr) = affine(rhs, n).ok_or_else(non_affine)?;
    let (Some(a), Some(b)) = (cl.as_const(), cr.as_const()) else {
        return Ok(Atom::Keep(Cond::cmp(lhs.clone(), CmpOp::Lt, rhs.clone())));
    };
    let diff = |x: Endpoint, y: Endpoint| x.checked_add(y.neg()).ok_or_else(|| Error::Domain("offset overflow".into()));
    Ok(match kl - kr {
        0 if a < b => Atom::True,
        0 => Atom::False,
        // a + n < b
        1 => Atom::Below(diff(b, a)?),
        // a < b + n
        _ => Atom::Above(diff(a, b)?),
    })
}

/// `s ∧ ⋁_n fam(n)` for an open interval `s` and a family affine in one
/// integer index. Bounded `s` gives the finite join of the nonzero
/// meets; otherwise the family is kept with a tightened condition.
pub fn expand_family_meet(s: &Gen, fam: &Family) -> Result<Term> {
    let reals = GeneratorDomain::builtin(Builtin::IntervalR);
    let (p, q) = s.endpoints().ok_or_else(|| Error::Shape(format!("{s} is not a concrete open interval")))?;
    if reals.is_zero(s) {
        return Ok(Term::zero());
    }
    let [b] = fam.binders.as_slice() else {
        return Err(Error::Shape("family must have exactly one index".into()));
    };
    if b.sort != Sort::Int {
        return Err(Error::Shape("family index must range over ℤ".into()));
    }
    let n = b.name.as_str();
    let body = match fam.body.0.as_slice() {
        [g] => g,
        _ => return Err(Error::Shape("family body must be one generator".into())),
    };
    let tag = body.tag();
    let (a, bb) = match body.untagged() {
        Gen::Open(a, bb) => (a, bb),
        _ => return Err(Error::Shape("family body must be an open interval".into())),
    };
    let (pe, qe) = (Expr::Const(p), Expr::Const(q));
    let mut lo: Option<Endpoint> = None;
    let mut hi: Option<Endpoint> = None;
    let mut keep = vec![fam.cond.clone()];
    for (l, r) in [(&pe, bb), (a, &qe)] {
        match atom(l, r, n)? {
            Atom::True => {}
            Atom::False => return Ok(Term::zero()),
            Atom::Above(e) => lo = Some(e),
            Atom::Below(e) => hi = Some(e),
            Atom::Keep(c) => keep.push(c),
        }
    }
    let lower = if p == Endpoint::NegInf { a.clone() } else { Expr::max(pe, a.clone()) };
    let upper = if q == Endpoint::PosInf { bb.clone() } else { Expr::min(qe, bb.clone()) };
    let mut sorts = Sorts::new();
    sorts.insert(n.to_string(), Sort::Int);
    let meet = Gen::Open(lower, upper);
    let wrap = |g: Gen| match tag {
        Some(t) => Gen::tagged(t, g),
        None => g,
    };
    let cond = Cond::and(keep);
    match (lo, hi, &cond) {
        (Some(Endpoint::Fin(lo)), Some(Endpoint::Fin(hi)), Cond::True) => {
            let first = lo.floor().to_integer() + 1;
            let last = hi.ceil().to_integer() - 1;
            let mut ms = Vec::new();
            for k in first..=last {
                let mut env = crate::presentation::Env::new();
                env.insert(n.to_string(), Endpoint::int(k));
                let g = meet.subst(&env).simplify(&sorts);
                if !reals.is_zero(&g) {
                    ms.push(Meet::single(wrap(g)));
                }
            }
            Ok(Term::Join(ms))
        }
        _ => {
            let mut parts = vec![cond];
            if let Some(Endpoint::Fin(_)) = lo {
                parts.push(Cond::cmp(Expr::Const(p), CmpOp::Lt, bb.clone()));
            }
            if let Some(Endpoint::Fin(_)) = hi {
                parts.push(Cond::cmp(a.clone(), CmpOp::Lt, Expr::Const(q)));
            }
            Ok(Term::Family(Family {
                binders: fam.binders.clone(),
                cond: Cond::and(parts).simplify(&sorts),
                body: Meet::single(wrap(meet.simplify(&sorts))),
                directed: fam.directed,
            }))
        }
    }
}
