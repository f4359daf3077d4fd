//! Closure, interior and dcpo-idempotent operators on finite frames, and the
//! quotient frames they carve out as fixed points.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::adjoint::left_adjoint;
use super::lattice::FiniteLattice;
use super::map::{MonotoneMap, Role};
use super::report::{Law, LawScan, OperatorReport, Witness};
use crate::error::{Error, Result};

/// The six kinds of quotient handled by the transformers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum QuotientMode {
    SemiOpen,
    Open,
    SemiProper,
    Proper,
    SemiTriquotient,
    Triquotient,
}

impl QuotientMode {
    pub const ALL: [QuotientMode; 6] = [
        QuotientMode::SemiOpen,
        QuotientMode::Open,
        QuotientMode::SemiProper,
        QuotientMode::Proper,
        QuotientMode::SemiTriquotient,
        QuotientMode::Triquotient,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            QuotientMode::SemiOpen => "semi-open",
            QuotientMode::Open => "open",
            QuotientMode::SemiProper => "semi-proper",
            QuotientMode::Proper => "proper",
            QuotientMode::SemiTriquotient => "semi-triquotient",
            QuotientMode::Triquotient => "triquotient",
        }
    }

    /// The weaker mode whose laws are implied by this one.
    pub fn weakening(&self) -> QuotientMode {
        match self {
            QuotientMode::Open => QuotientMode::SemiOpen,
            QuotientMode::Proper => QuotientMode::SemiProper,
            QuotientMode::Triquotient => QuotientMode::SemiTriquotient,
            m => *m,
        }
    }

    pub fn is_semi(&self) -> bool {
        self.weakening() == *self
    }
}

impl fmt::Display for QuotientMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for QuotientMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        QuotientMode::ALL
            .iter()
            .copied()
            .find(|m| m.name() == s || m.name().replace('-', "") == s.to_ascii_lowercase())
            .ok_or_else(|| Error::Precondition(format!("unknown quotient mode {s:?}")))
    }
}

fn require_endo(e: &MonotoneMap) -> Result<()> {
    if !e.is_endo() {
        return Err(Error::Shape("expected an endomap".into()));
    }
    Ok(())
}

fn require_frame(l: &FiniteLattice) -> Result<()> {
    if !l.is_frame() {
        let (a, b, c) = l.distributivity_witness().unwrap_or_default();
        return Err(Error::LawFailure {
            law: "distributivity".into(),
            witness: format!("({}, {}, {})", l.label(a), l.label(b), l.label(c)),
        });
    }
    Ok(())
}

fn report_to_error(r: OperatorReport) -> Error {
    let w = &r.witnesses[0];
    Error::LawFailure { law: w.law.to_string(), witness: format!("({})", w.labels.join(", ")) }
}

/// Grants `closureOp`: join-preserving, inflationary, idempotent.
pub fn verify_closure(e: MonotoneMap) -> Result<MonotoneMap> {
    require_endo(&e)?;
    let r = check_quotient_operator(&e, QuotientMode::SemiOpen);
    if r.passed() {
        Ok(e.with_role(Role::ClosureOp))
    } else {
        Err(report_to_error(r))
    }
}

/// Grants `interiorOp`: finite-meet preserving, deflationary, idempotent.
pub fn verify_interior(e: MonotoneMap) -> Result<MonotoneMap> {
    require_endo(&e)?;
    let r = check_quotient_operator(&e, QuotientMode::SemiProper);
    if r.passed() {
        Ok(e.with_role(Role::InteriorOp))
    } else {
        Err(report_to_error(r))
    }
}

fn require_join_preserving(j: &MonotoneMap) -> Result<()> {
    require_endo(j)?;
    require_frame(j.source())?;
    let r = LawScan::new(j).nullary(Law::PreservesBottom).binary(Law::BinaryJoins).finish();
    if r.passed() {
        Ok(())
    } else {
        Err(report_to_error(r))
    }
}

/// The least join-preserving closure operator above `id` with the same
/// pre-fixed points as `j`: the pointwise join `⋁ₙ jⁿ`, reached by iterating
/// `c ↦ id ∨ j∘c` to stability.
pub fn kleene_closure(j: &MonotoneMap) -> Result<MonotoneMap> {
    require_join_preserving(j)?;
    let l = j.source();
    let mut c: Vec<usize> = l.elements().collect();
    loop {
        let next: Vec<usize> = l.elements().map(|a| l.join(a, j.apply(c[a]))).collect();
        if next == c {
            break;
        }
        c = next;
    }
    let m = MonotoneMap::new(l.clone(), l.clone(), c)?;
    verify_closure(m)
}

/// The subframe `{u : j(u) ≤ u}` together with its inclusion, which is a
/// frame homomorphism with a left adjoint.
pub fn prefixed_subframe(j: &MonotoneMap) -> Result<(Arc<FiniteLattice>, MonotoneMap)> {
    require_join_preserving(j)?;
    let l = j.source();
    let keep: Vec<usize> = l.elements().filter(|&u| l.leq(j.apply(u), u)).collect();
    sub_frame(l, &keep)
}

fn sub_frame(l: &Arc<FiniteLattice>, keep: &[usize]) -> Result<(Arc<FiniteLattice>, MonotoneMap)> {
    for &a in keep {
        for &b in keep {
            if !keep.contains(&l.meet(a, b)) || !keep.contains(&l.join(a, b)) {
                return Err(Error::LawFailure {
                    law: "closed under binary meets and joins".into(),
                    witness: format!("({}, {})", l.label(a), l.label(b)),
                });
            }
        }
    }
    if !keep.contains(&l.bottom()) || !keep.contains(&l.top()) {
        return Err(Error::LawFailure { law: "contains 0 and 1".into(), witness: "()".into() });
    }
    let sub = Arc::new(FiniteLattice::from_poset(l.poset().restrict(keep))?);
    require_frame(&sub)?;
    let inclusion = MonotoneMap::new(sub.clone(), l.clone(), keep.to_vec())?.verify_frame_hom()?;
    if left_adjoint(&inclusion).is_none() {
        return Err(Error::MissingAdjoint("inclusion of pre-fixed points".into()));
    }
    Ok((sub, inclusion))
}

/// `g_* ∘ f* ∧ id`. The result carries role `interiorOp` exactly when it is
/// idempotent (and hence an interior operator); the report says which.
pub fn interior_from_pair(gstar_radj: &MonotoneMap, fstar: &MonotoneMap) -> Result<(MonotoneMap, OperatorReport)> {
    let composite = gstar_radj.after(fstar)?;
    require_endo(&composite)?;
    let l = composite.source().clone();
    let table: Vec<usize> = l.elements().map(|a| l.meet(composite.apply(a), a)).collect();
    let p = MonotoneMap::new(l.clone(), l, table)?;
    let report = LawScan::new(&p).unary(Law::Idempotent).finish();
    if report.passed() {
        let checked = check_quotient_operator(&p, QuotientMode::SemiProper);
        if checked.passed() {
            return Ok((p.with_role(Role::InteriorOp), checked));
        }
        return Ok((p, checked));
    }
    Ok((p, report))
}

/// Checks caller-supplied inequalities `lhs ≤ rhs` pointwise, e.g. the
/// frame-level forms of the transitivity hypotheses on a coinserter.
pub fn check_inequalities(pairs: &[(MonotoneMap, MonotoneMap)]) -> OperatorReport {
    let mut witnesses = Vec::new();
    for (i, (lhs, rhs)) in pairs.iter().enumerate() {
        if lhs.source() != rhs.source() || lhs.target() != rhs.target() {
            witnesses.push(Witness { law: Law::PointwiseLeq, elements: vec![i], labels: vec!["type mismatch".into()] });
            continue;
        }
        if let Some(a) = lhs.source().elements().find(|&a| !lhs.target().leq(lhs.apply(a), rhs.apply(a))) {
            witnesses.push(Witness {
                law: Law::PointwiseLeq,
                elements: vec![i, a],
                labels: vec![format!("pair {i}"), lhs.source().label(a).into()],
            });
        }
    }
    OperatorReport::from_witnesses(witnesses)
}

/// Closure operator of the coequaliser of two semi-open maps: the Kleene
/// closure of `f_! g* ∨ g_! f*`.
pub fn coequaliser_closure(f_left: &MonotoneMap, gstar: &MonotoneMap, g_left: &MonotoneMap, fstar: &MonotoneMap) -> Result<MonotoneMap> {
    let j = f_left.after(gstar)?.join_with(&g_left.after(fstar)?)?;
    kleene_closure(&j)
}

/// Interior operator of the coequaliser of two proper maps:
/// `g_* f* ∧ f_* g* ∧ id`, checked for idempotence.
pub fn coequaliser_interior(
    g_right: &MonotoneMap,
    fstar: &MonotoneMap,
    f_right: &MonotoneMap,
    gstar: &MonotoneMap,
) -> Result<(MonotoneMap, OperatorReport)> {
    let a = g_right.after(fstar)?;
    let b = f_right.after(gstar)?;
    let both = a.meet_with(&b)?;
    interior_from_pair_composite(both)
}

fn interior_from_pair_composite(composite: MonotoneMap) -> Result<(MonotoneMap, OperatorReport)> {
    let l = composite.source().clone();
    let id = MonotoneMap::identity(l.clone());
    let p = composite.meet_with(&id)?;
    let report = check_quotient_operator(&p, QuotientMode::SemiProper);
    if report.passed() {
        Ok((p.with_role(Role::InteriorOp), report))
    } else {
        Ok((p, report))
    }
}

/// Checks exactly the law set of `mode` on an endomap of a finite frame.
pub fn check_quotient_operator(e: &MonotoneMap, mode: QuotientMode) -> OperatorReport {
    if !e.is_endo() {
        return OperatorReport::fail(Law::Idempotent, vec!["not an endomap".into()]);
    }
    let mut scan = LawScan::new(e);
    match mode {
        QuotientMode::SemiOpen | QuotientMode::Open => {
            scan.nullary(Law::PreservesBottom).binary(Law::BinaryJoins).unary(Law::Inflationary).unary(Law::Idempotent);
            if mode == QuotientMode::Open {
                scan.binary(Law::OpenLaw);
            }
        }
        QuotientMode::SemiProper | QuotientMode::Proper => {
            scan.nullary(Law::PreservesTop).binary(Law::BinaryMeets).unary(Law::Deflationary).unary(Law::Idempotent);
            if mode == QuotientMode::Proper {
                scan.binary(Law::ProperLaw);
            }
        }
        QuotientMode::SemiTriquotient => {
            scan.unary(Law::Idempotent)
                .nullary(Law::PreservesBottom)
                .nullary(Law::PreservesTop)
                .binary(Law::WeakMeetLaw)
                .binary(Law::WeakJoinLaw);
        }
        QuotientMode::Triquotient => {
            scan.unary(Law::Idempotent)
                .nullary(Law::PreservesBottom)
                .nullary(Law::PreservesTop)
                .binary(Law::OpenLaw)
                .binary(Law::ProperLaw);
        }
    }
    scan.finish()
}

/// Fixed points of an idempotent endomap with the induced order.
#[derive(Clone, Debug)]
pub struct FixedPoints {
    pub lattice: Arc<FiniteLattice>,
    /// `e` corestricted to the fixed points.
    pub retraction: MonotoneMap,
    /// index in the ambient lattice of each fixed point
    pub inclusion: Vec<usize>,
}

pub fn fixed_points(e: &MonotoneMap) -> Result<FixedPoints> {
    require_endo(e)?;
    if !e.is_idempotent() {
        let l = e.source();
        let a = l.elements().find(|&a| e.apply(e.apply(a)) != e.apply(a)).unwrap_or(0);
        return Err(Error::LawFailure { law: "idempotent".into(), witness: format!("({})", l.label(a)) });
    }
    let l = e.source();
    let keep: Vec<usize> = l.elements().filter(|&u| e.apply(u) == u).collect();
    let lattice = Arc::new(FiniteLattice::from_poset(l.poset().restrict(&keep))?);
    let passes_some_mode = QuotientMode::ALL.iter().any(|&m| check_quotient_operator(e, m).passed());
    if passes_some_mode && l.is_frame() {
        require_frame(&lattice)?;
    }
    let position = |x: usize| keep.iter().position(|&k| k == x).expect("image is a fixed point");
    let retraction = MonotoneMap::from_fn(l.clone(), lattice.clone(), |a| position(e.apply(a)))?;
    Ok(FixedPoints { lattice, retraction, inclusion: keep })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn boolean2() -> Arc<FiniteLattice> {
        Arc::new(FiniteLattice::boolean(&["a", "b"]))
    }

    /// swap of the two atoms of the 4-element Boolean algebra
    fn swap(b: &Arc<FiniteLattice>) -> MonotoneMap {
        // labels {} {a} {b} {a,b} at indices 0..4 as bitmasks
        MonotoneMap::new(b.clone(), b.clone(), vec![0, 2, 1, 3]).unwrap()
    }

    fn three_chain() -> Arc<FiniteLattice> {
        Arc::new(FiniteLattice::chain(&["0", "m", "1"]))
    }

    #[test]
    fn kleene_of_identity_and_zero() {
        let b = boolean2();
        let id = MonotoneMap::identity(b.clone());
        assert_eq!(kleene_closure(&id).unwrap().table(), id.table());
        let zero = MonotoneMap::constant(b.clone(), b.clone(), b.bottom());
        assert_eq!(kleene_closure(&zero).unwrap().table(), id.table());
    }

    #[test]
    fn kleene_of_swap() {
        let b = boolean2();
        let c = kleene_closure(&swap(&b)).unwrap();
        // independent oracle: iterate id ∨ j by hand
        let mut manual: Vec<usize> = (0..4).collect();
        for _ in 0..4 {
            manual = (0..4).map(|a| manual[a] | [0, 2, 1, 3][manual[a]] | a).collect();
        }
        assert_eq!(c.table(), &manual[..]);
        assert_eq!(c.table(), &[0, 3, 3, 3]);
        assert_eq!(c.role(), Role::ClosureOp);
    }

    #[test]
    fn kleene_rejects_non_join_preserving() {
        let b = boolean2();
        let top = MonotoneMap::constant(b.clone(), b.clone(), b.top());
        assert!(matches!(kleene_closure(&top), Err(Error::LawFailure { .. })));
    }

    #[test]
    fn prefixed_subframes() {
        let b = boolean2();
        let (whole, _) = prefixed_subframe(&MonotoneMap::identity(b.clone())).unwrap();
        assert_eq!(whole.len(), 4);
        let (two, inc) = prefixed_subframe(&swap(&b)).unwrap();
        assert_eq!(two.len(), 2);
        assert_eq!(inc.table(), &[0, 3]);
        let (all, _) = prefixed_subframe(&MonotoneMap::constant(b.clone(), b.clone(), 0)).unwrap();
        assert_eq!(all.len(), 4);
    }

    #[test]
    fn endpoint_gluing_interior() {
        // g_* f* on the 3-chain, arranged so that the composite is 0 ↦ 0, m ↦ 0, 1 ↦ 1
        let c3 = three_chain();
        let c2 = Arc::new(FiniteLattice::two());
        let fstar = MonotoneMap::new(c3.clone(), c2.clone(), vec![0, 0, 1]).unwrap();
        let g_right = MonotoneMap::new(c2, c3.clone(), vec![0, 2]).unwrap();
        let (p, report) = interior_from_pair(&g_right, &fstar).unwrap();
        assert!(report.passed());
        assert_eq!(p.role(), Role::InteriorOp);
        assert_eq!(p.table(), &[0, 0, 2]);
        let fp = fixed_points(&p).unwrap();
        assert_eq!(fp.inclusion, vec![0, 2]);
    }

    #[test]
    fn interior_failure_reports_idempotence() {
        // on the 4-chain 0 < x < y < 1 the map 1 ↦ y, y ↦ x, x ↦ 0 is deflationary but not idempotent
        let c4 = Arc::new(FiniteLattice::chain(&["0", "x", "y", "1"]));
        let comp = MonotoneMap::new(c4.clone(), c4.clone(), vec![0, 0, 1, 2]).unwrap();
        let id = MonotoneMap::identity(c4.clone());
        let (p, report) = interior_from_pair(&comp, &id).unwrap();
        assert!(!report.passed());
        assert_eq!(report.witnesses[0].law, Law::Idempotent);
        assert!(!Law::Idempotent.holds_at(&p, &report.witnesses[0].elements));
        assert_ne!(p.role(), Role::InteriorOp);
    }

    #[test]
    fn coequaliser_of_identity_and_swap() {
        let b = boolean2();
        let id = MonotoneMap::identity(b.clone());
        let s = swap(&b);
        let c = coequaliser_closure(&id, &s, &s, &id).unwrap();
        let fp = fixed_points(&c).unwrap();
        assert_eq!(fp.inclusion, vec![0, 3]);
        let c2 = coequaliser_closure(&s, &id, &id, &s).unwrap();
        assert_eq!(c.table(), c2.table());
    }

    #[test]
    fn quotient_operator_modes() {
        let b = boolean2();
        let id = MonotoneMap::identity(b.clone());
        for m in QuotientMode::ALL {
            assert!(check_quotient_operator(&id, m).passed(), "{m}");
        }
        let c = kleene_closure(&swap(&b)).unwrap();
        assert!(check_quotient_operator(&c, QuotientMode::Open).passed());
        assert!(check_quotient_operator(&c, QuotientMode::Triquotient).passed());

        let c3 = three_chain();
        let p = MonotoneMap::new(c3.clone(), c3, vec![0, 0, 2]).unwrap();
        let r = check_quotient_operator(&p, QuotientMode::Open);
        assert!(!r.passed());
        assert!(r.failed_laws().contains(&Law::Inflationary));
        assert!(check_quotient_operator(&p, QuotientMode::Proper).passed());
    }

    #[test]
    fn fixed_points_rejects_non_idempotent() {
        let c4 = Arc::new(FiniteLattice::chain(&["0", "x", "y", "1"]));
        let m = MonotoneMap::new(c4.clone(), c4, vec![0, 0, 1, 2]).unwrap();
        assert!(fixed_points(&m).is_err());
    }

    #[test]
    fn mode_names_parse() {
        for m in QuotientMode::ALL {
            assert_eq!(m.name().parse::<QuotientMode>().unwrap(), m);
        }
        assert_eq!("semiOpen".parse::<QuotientMode>().unwrap(), QuotientMode::SemiOpen);
    }
}
