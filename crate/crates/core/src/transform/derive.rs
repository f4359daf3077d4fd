//! Quotient specs computed from finite coinserter or coequaliser data.

use serde::Serialize;

use super::spec::{shape_for, ImageShape, QuotientSpec};
use crate::error::{Error, Result};
use crate::eval::PresentedObject;
use crate::lattice::{
    check_quotient_operator, coequaliser_closure, coequaliser_interior, interior_from_pair, kleene_closure, left_adjoint, right_adjoint,
    FiniteLattice, MonotoneMap, OperatorReport, QuotientMode,
};
use crate::presentation::{Gen, Meet, Term};

/// Whether the quotient is the coinserter `{u | g*(u) ≤ f*(u)}` or the
/// coequaliser `{u | g*(u) = f*(u)}` of the pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum Colimit {
    Coinserter,
    Coequaliser,
}

#[derive(Clone, Debug, Serialize)]
pub struct Derivation {
    pub operator: Vec<usize>,
    pub report: OperatorReport,
    /// withheld when the operator fails the mode's laws
    pub spec: Option<QuotientSpec>,
}

fn left(f: &MonotoneMap, what: &str) -> Result<MonotoneMap> {
    left_adjoint(f).ok_or_else(|| Error::MissingAdjoint(format!("left adjoint of {what}")))
}

fn right(f: &MonotoneMap, what: &str) -> Result<MonotoneMap> {
    right_adjoint(f).ok_or_else(|| Error::MissingAdjoint(format!("right adjoint of {what}")))
}

/// The closure operator whose pre-fixed points are the quotient.
pub fn closure_for(fstar: &MonotoneMap, gstar: &MonotoneMap, colimit: Colimit) -> Result<MonotoneMap> {
    let f_left = left(fstar, "f*")?;
    match colimit {
        Colimit::Coinserter => kleene_closure(&f_left.after(gstar)?),
        Colimit::Coequaliser => coequaliser_closure(&f_left, gstar, &left(gstar, "g*")?, fstar),
    }
}

/// The interior operator whose post-fixed points are the quotient.
pub fn interior_for(fstar: &MonotoneMap, gstar: &MonotoneMap, colimit: Colimit) -> Result<(MonotoneMap, OperatorReport)> {
    let g_right = right(gstar, "g*")?;
    match colimit {
        Colimit::Coinserter => interior_from_pair(&g_right, fstar),
        Colimit::Coequaliser => coequaliser_interior(&g_right, fstar, &right(fstar, "f*")?, gstar),
    }
}

fn operator_for(fstar: &MonotoneMap, gstar: &MonotoneMap, mode: QuotientMode, colimit: Colimit) -> Result<MonotoneMap> {
    match mode {
        QuotientMode::SemiOpen | QuotientMode::Open => closure_for(fstar, gstar, colimit),
        QuotientMode::SemiProper | QuotientMode::Proper => Ok(interior_for(fstar, gstar, colimit)?.0),
        QuotientMode::SemiTriquotient | QuotientMode::Triquotient => {
            // a triquotient is witnessed by whichever adjoint route applies
            let open = closure_for(fstar, gstar, colimit);
            if let Ok(c) = &open {
                if check_quotient_operator(c, mode).passed() {
                    return open;
                }
            }
            match interior_for(fstar, gstar, colimit) {
                Ok((p, _)) => Ok(p),
                Err(e) => open.map_err(|_| e),
            }
        }
    }
}

/// Computes the quotient operator on `parent`, checks it, and reads its
/// value on each generator back as a term.
pub fn derive_spec_from_coinserter(
    parent: &PresentedObject,
    fstar: &MonotoneMap,
    gstar: &MonotoneMap,
    mode: QuotientMode,
    colimit: Colimit,
) -> Result<Derivation> {
    let l = parent.lattice()?;
    if fstar.source() != l || gstar.source() != l || fstar.target() != gstar.target() {
        return Err(Error::Shape("f* and g* must both map the parent frame to a common frame".into()));
    }
    let e = operator_for(fstar, gstar, mode, colimit)?;
    let report = check_quotient_operator(&e, mode);
    let operator = e.table().to_vec();
    if !report.passed() {
        return Ok(Derivation { operator, report, spec: None });
    }
    let spec = spec_from_operator(parent, &e, mode)?;
    Ok(Derivation { operator, report, spec: Some(spec) })
}

/// Reads back `e(g)` for every generator `g` in the shape `mode` requires.
pub fn spec_from_operator(parent: &PresentedObject, e: &MonotoneMap, mode: QuotientMode) -> Result<QuotientSpec> {
    let l = parent.lattice()?;
    let mut image = Vec::new();
    for (k, g) in parent.generators.iter().enumerate() {
        let u = e.apply(parent.interp[k]);
        let t = readback(parent, l, u, shape_for(mode)).ok_or_else(|| Error::ImageShape {
            generator: g.to_string(),
            reason: format!("{} is not expressible in the required shape", l.label(u)),
        })?;
        image.push((g.clone(), t));
    }
    Ok(QuotientSpec::new(mode, image))
}

fn maximal(l: &FiniteLattice, xs: Vec<(Gen, usize)>, up: bool) -> Vec<(Gen, usize)> {
    let beats = |a: usize, b: usize| if up { l.leq(b, a) } else { l.leq(a, b) };
    let mut out: Vec<(Gen, usize)> = Vec::new();
    for (g, x) in xs {
        if out.iter().any(|(_, y)| beats(x, *y)) {
            continue;
        }
        out.retain(|(_, y)| !beats(*y, x));
        out.push((g, x));
    }
    out
}

fn gens_below(parent: &PresentedObject, l: &FiniteLattice, u: usize) -> Vec<(Gen, usize)> {
    let xs = parent.generators.iter().cloned().zip(parent.interp.iter().copied()).filter(|(_, x)| l.leq(*x, u)).collect();
    maximal(l, xs, false)
}

fn meet_above(parent: &PresentedObject, l: &FiniteLattice, u: usize) -> Option<Meet> {
    let xs = parent.generators.iter().cloned().zip(parent.interp.iter().copied()).filter(|(_, x)| l.leq(u, *x)).collect();
    let ms = maximal(l, xs, true);
    (l.meet_all(ms.iter().map(|(_, x)| *x)) == u).then(|| Meet(ms.into_iter().map(|(g, _)| g).collect()))
}

fn readback(parent: &PresentedObject, l: &FiniteLattice, u: usize, shape: ImageShape) -> Option<Term> {
    if shape == ImageShape::DirectedGens {
        if let Some(k) = parent.interp.iter().position(|&x| x == u) {
            return Some(Term::gen(parent.generators[k].clone()));
        }
    }
    let below = gens_below(parent, l, u);
    if l.join_all(below.iter().map(|(_, x)| *x)) == u {
        return Some(Term::join_of(below.into_iter().map(|(g, _)| g).collect()));
    }
    if shape != ImageShape::JoinOfMeets {
        return None;
    }
    if let Some(m) = meet_above(parent, l, u) {
        return Some(Term::Join(vec![m]));
    }
    let pieces: Vec<(Meet, usize)> =
        l.elements().filter(|&x| l.leq(x, u)).filter_map(|x| meet_above(parent, l, x).map(|m| (m, x))).collect();
    let tops: Vec<&(Meet, usize)> = pieces.iter().filter(|(_, x)| !pieces.iter().any(|(_, y)| y != x && l.leq(*x, *y))).collect();
    (l.join_all(tops.iter().map(|(_, x)| *x)) == u).then(|| Term::Join(tops.into_iter().map(|(m, _)| m.clone()).collect()))
}
