//! Canonical forms for terms and relations relative to a domain.

use super::domain::GeneratorDomain;
use super::expr::{Cond, Sorts};
use super::gen::Gen;
use super::relation::{Presentation, RelOp, Relation};
use super::term::{Family, Meet, Term};
use crate::error::Result;

/// Normalises a meet; `None` means the meet is `0`.
pub fn normalize_meet(m: &Meet, dom: &GeneratorDomain, sorts: &Sorts) -> Result<Option<Meet>> {
    let mut gens = Vec::with_capacity(m.0.len());
    for g in &m.0 {
        dom.check_member(g)?;
        let g = g.simplify(sorts);
        if dom.is_zero(&g) {
            return Ok(None);
        }
        gens.push(g);
    }
    if dom.structure().meets && !gens.is_empty() {
        let mut acc = gens[0].clone();
        let mut folded = true;
        for g in &gens[1..] {
            match dom.meet(&acc, g, sorts) {
                Some(Some(x)) => acc = x,
                Some(None) => return Ok(None),
                None => {
                    folded = false;
                    break;
                }
            }
        }
        if folded {
            return Ok(Some(Meet::single(acc)));
        }
    }
    gens.sort();
    gens.dedup();
    let keep: Vec<Gen> = gens
        .iter()
        .enumerate()
        .filter(|(i, g)| !gens.iter().enumerate().any(|(j, h)| j != *i && dom.leq(h, g) == Some(true)))
        .map(|(_, g)| g.clone())
        .collect();
    Ok(Some(Meet(keep)))
}

/// Syntactic `⋀a ≤ ⋀b`: every conjunct of `b` lies above one of `a`.
pub fn meet_leq(a: &Meet, b: &Meet, dom: &GeneratorDomain) -> bool {
    b.0.iter().all(|y| a.0.iter().any(|x| dom.leq(x, y) == Some(true)))
}

fn normalize_join(ms: &[Meet], dom: &GeneratorDomain, sorts: &Sorts) -> Result<Term> {
    let mut out: Vec<Meet> = Vec::new();
    for m in ms {
        if let Some(m) = normalize_meet(m, dom, sorts)? {
            out.push(m);
        }
    }
    if dom.structure().joins {
        let (singles, mut rest): (Vec<Meet>, Vec<Meet>) = out.into_iter().partition(|m| m.0.len() == 1);
        let mut acc: Option<Gen> = None;
        let mut unfolded = Vec::new();
        for m in singles {
            let g = m.0.into_iter().next().expect("single");
            acc = match acc {
                None => Some(g),
                Some(a) => match dom.join(&a, &g, sorts) {
                    Some(j) => Some(j),
                    None => {
                        unfolded.push(Meet::single(g));
                        Some(a)
                    }
                },
            };
        }
        if let Some(a) = acc {
            rest.push(Meet::single(a));
        }
        rest.extend(unfolded);
        out = rest;
    }
    out.sort();
    out.dedup();
    if out.iter().any(|m| m.0.is_empty()) {
        return Ok(Term::one());
    }
    let keep: Vec<Meet> = out
        .iter()
        .enumerate()
        .filter(|(i, m)| !out.iter().enumerate().any(|(j, n)| j != *i && meet_leq(m, n, dom) && (!meet_leq(n, m, dom) || j < *i)))
        .map(|(_, m)| m.clone())
        .collect();
    Ok(Term::Join(keep))
}

pub fn normalize_term(t: &Term, dom: &GeneratorDomain, sorts: &Sorts) -> Result<Term> {
    match t {
        Term::Join(ms) => normalize_join(ms, dom, sorts),
        Term::Family(fam) => {
            let mut inner = sorts.clone();
            for b in &fam.binders {
                inner.insert(b.name.clone(), b.sort);
            }
            let cond = fam.cond.simplify(&inner);
            if cond == Cond::False {
                return Ok(Term::zero());
            }
            match normalize_meet(&fam.body, dom, &inner)? {
                None => Ok(Term::zero()),
                Some(body) => {
                    let mut used = Vec::new();
                    cond.vars(&mut used);
                    body.0.iter().for_each(|g| g.vars(&mut used));
                    if !fam.binders.iter().any(|b| used.contains(&b.name)) && cond == Cond::True {
                        return normalize_join(&[body], dom, sorts);
                    }
                    Ok(Term::Family(Family { binders: fam.binders.clone(), cond, body, directed: fam.directed }))
                }
            }
        }
    }
}

pub fn normalize_relation(r: &Relation, dom: &GeneratorDomain) -> Result<Relation> {
    let sorts = r.sorts();
    Ok(Relation {
        params: r.params.clone(),
        cond: r.cond.simplify(&sorts),
        lhs: normalize_term(&r.lhs, dom, &sorts)?,
        op: r.op,
        rhs: normalize_term(&r.rhs, dom, &sorts)?,
    })
}

/// Syntactic `lhs ≤ rhs` between normalised terms.
pub fn term_leq(lhs: &Term, rhs: &Term, dom: &GeneratorDomain) -> bool {
    if lhs == rhs {
        return true;
    }
    match (lhs, rhs) {
        (Term::Join(a), Term::Join(b)) => a.iter().all(|m| b.iter().any(|n| meet_leq(m, n, dom))),
        (Term::Join(a), Term::Family(_)) => a.is_empty(),
        (Term::Family(_), Term::Join(b)) => b.iter().any(|n| n.0.is_empty()),
        _ => false,
    }
}

/// A normalised relation that holds in every model.
pub fn is_trivial(r: &Relation, dom: &GeneratorDomain) -> bool {
    if r.cond == Cond::False {
        return true;
    }
    match r.op {
        RelOp::Le => term_leq(&r.lhs, &r.rhs, dom),
        RelOp::Eq => term_leq(&r.lhs, &r.rhs, dom) && term_leq(&r.rhs, &r.lhs, dom),
    }
}

/// Two relations saying the same thing (equations up to orientation).
pub fn same_relation(a: &Relation, b: &Relation) -> bool {
    if a == b {
        return true;
    }
    a.op == RelOp::Eq && b.op == RelOp::Eq && a.params == b.params && a.cond == b.cond && a.lhs == b.rhs && a.rhs == b.lhs
}

/// Normalises every relation, dropping trivial ones and duplicates but
/// otherwise keeping the given order.
pub fn normalize_presentation(p: &Presentation) -> Result<Presentation> {
    let mut rels: Vec<Relation> = Vec::new();
    for r in &p.relations {
        let n = normalize_relation(r, &p.domain)?;
        if is_trivial(&n, &p.domain) || rels.iter().any(|s| same_relation(s, &n)) {
            continue;
        }
        rels.push(n);
    }
    Ok(Presentation { kind: p.kind, domain: p.domain.clone(), relations: rels })
}
