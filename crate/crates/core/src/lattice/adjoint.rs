//! Galois adjoints of monotone maps between finite lattices, and the
//! open/proper classification of frame homomorphisms.

use super::map::{MonotoneMap, Role};
use super::report::{Law, OperatorReport, Witness};
use crate::error::{Error, Result};

/// `ℓ(b) = ⋀{a : b ≤ f(a)}`, returned only if `ℓ ⊣ f` holds on every pair.
pub fn left_adjoint(f: &MonotoneMap) -> Option<MonotoneMap> {
    let (s, t) = (f.source(), f.target());
    let table: Vec<usize> = t.elements().map(|b| s.meet_all(s.elements().filter(|&a| t.leq(b, f.apply(a))))).collect();
    let galois = t.elements().all(|b| s.elements().all(|a| s.leq(table[b], a) == t.leq(b, f.apply(a))));
    if !galois {
        return None;
    }
    let l = MonotoneMap::new(t.clone(), s.clone(), table).ok()?;
    // left adjoints preserve all joins
    Some(l.with_role(Role::SuplatticeHom))
}

/// `r(b) = ⋁{a : f(a) ≤ b}`, returned only if `f ⊣ r` holds on every pair.
pub fn right_adjoint(f: &MonotoneMap) -> Option<MonotoneMap> {
    let (s, t) = (f.source(), f.target());
    let table: Vec<usize> = t.elements().map(|b| s.join_all(s.elements().filter(|&a| t.leq(f.apply(a), b)))).collect();
    let galois = t.elements().all(|b| s.elements().all(|a| t.leq(f.apply(a), b) == s.leq(a, table[b])));
    if !galois {
        return None;
    }
    let r = MonotoneMap::new(t.clone(), s.clone(), table).ok()?;
    Some(r.with_role(Role::PreframeHom))
}

fn require_frame_hom(f: &MonotoneMap) -> Result<()> {
    if f.role() != Role::FrameHom {
        return Err(Error::Precondition(format!("expected a frame homomorphism, got role {}", f.role())));
    }
    Ok(())
}

/// A locale map is open when `f*` has a left adjoint satisfying Frobenius
/// reciprocity `f_!(a ∧ f*(b)) = f_!(a) ∧ b`.
pub fn classify_open(fstar: &MonotoneMap) -> Result<OperatorReport> {
    require_frame_hom(fstar)?;
    let Some(l) = left_adjoint(fstar) else {
        return Ok(OperatorReport::fail(Law::LeftAdjointExists, vec![]));
    };
    let (s, t) = (fstar.source(), fstar.target());
    for a in t.elements() {
        for b in s.elements() {
            if l.apply(t.meet(a, fstar.apply(b))) != s.meet(l.apply(a), b) {
                return Ok(OperatorReport::from_witnesses(vec![Witness {
                    law: Law::Frobenius,
                    elements: vec![a, b],
                    labels: vec![t.label(a).into(), s.label(b).into()],
                }]));
            }
        }
    }
    Ok(OperatorReport::pass())
}

/// A locale map is proper when `f_*` satisfies `f_*(a ∨ f*(b)) = f_*(a) ∨ b`.
/// Scott continuity of `f_*` is automatic on finite carriers.
pub fn classify_proper(fstar: &MonotoneMap) -> Result<OperatorReport> {
    require_frame_hom(fstar)?;
    let Some(r) = right_adjoint(fstar) else {
        return Ok(OperatorReport::fail(Law::RightAdjointExists, vec![]));
    };
    let (s, t) = (fstar.source(), fstar.target());
    for a in t.elements() {
        for b in s.elements() {
            if r.apply(t.join(a, fstar.apply(b))) != s.join(r.apply(a), b) {
                return Ok(OperatorReport::from_witnesses(vec![Witness {
                    law: Law::CoFrobenius,
                    elements: vec![a, b],
                    labels: vec![t.label(a).into(), s.label(b).into()],
                }]));
            }
        }
    }
    Ok(OperatorReport::pass())
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::lattice::FiniteLattice;

    /// Independent oracle: scan every candidate table for the Galois property.
    fn galois_scan_left(f: &MonotoneMap) -> Option<Vec<usize>> {
        let (s, t) = (f.source(), f.target());
        let mut found = None;
        let n = t.len();
        let m = s.len();
        let mut table = vec![0; n];
        fn rec(i: usize, table: &mut Vec<usize>, m: usize, ok: &dyn Fn(&[usize]) -> bool, found: &mut Option<Vec<usize>>) {
            if found.is_some() {
                return;
            }
            if i == table.len() {
                if ok(table) {
                    *found = Some(table.clone());
                }
                return;
            }
            for v in 0..m {
                table[i] = v;
                rec(i + 1, table, m, ok, found);
            }
        }
        let ok = |tab: &[usize]| t.elements().all(|b| s.elements().all(|a| s.leq(tab[b], a) == t.leq(b, f.apply(a))));
        rec(0, &mut table, m, &ok, &mut found);
        found
    }

    #[test]
    fn identity_adjoints() {
        let b = Arc::new(FiniteLattice::boolean(&["a", "b"]));
        let id = MonotoneMap::identity(b);
        assert_eq!(left_adjoint(&id).unwrap().table(), id.table());
        assert_eq!(right_adjoint(&id).unwrap().table(), id.table());
    }

    #[test]
    fn three_chain_to_two_chain() {
        let c3 = Arc::new(FiniteLattice::chain(&["0", "m", "1"]));
        let c2 = Arc::new(FiniteLattice::two());
        let f = MonotoneMap::new(c3, c2, vec![0, 1, 1]).unwrap();
        let l = left_adjoint(&f).unwrap();
        assert_eq!(l.table(), &[0, 1]);
        assert_eq!(galois_scan_left(&f).unwrap(), l.table());
    }

    #[test]
    fn top_detector_on_boolean() {
        let b = Arc::new(FiniteLattice::boolean(&["a", "b"]));
        let c2 = Arc::new(FiniteLattice::two());
        let top = b.top();
        let f = MonotoneMap::from_fn(b.clone(), c2, |x| usize::from(x == top)).unwrap();
        let l = left_adjoint(&f).unwrap();
        assert_eq!(l.table(), &[b.bottom(), top]);
        assert_eq!(galois_scan_left(&f).unwrap(), l.table());
    }

    #[test]
    fn inclusion_right_adjoint() {
        let c2 = Arc::new(FiniteLattice::two());
        let c3 = Arc::new(FiniteLattice::chain(&["0", "m", "1"]));
        let inc = MonotoneMap::new(c2, c3, vec![0, 2]).unwrap();
        assert_eq!(right_adjoint(&inc).unwrap().table(), &[0, 0, 1]);
    }

    #[test]
    fn constant_maps_on_two_chain() {
        let c2 = Arc::new(FiniteLattice::two());
        let one = MonotoneMap::constant(c2.clone(), c2.clone(), 1);
        // constant 1 fails the empty join, so it has no right adjoint, but it
        // preserves all meets and so has a left adjoint
        assert!(right_adjoint(&one).is_none());
        assert!(left_adjoint(&one).is_some());
        let zero = MonotoneMap::constant(c2.clone(), c2, 0);
        assert!(right_adjoint(&zero).is_some());
        assert!(left_adjoint(&zero).is_none());
        assert_eq!(galois_scan_left(&zero), None);
    }

    #[test]
    fn classifiers() {
        let b = Arc::new(FiniteLattice::boolean(&["a", "b"]));
        let id = MonotoneMap::identity(b.clone());
        assert!(classify_open(&id).unwrap().passed());
        assert!(classify_proper(&id).unwrap().passed());

        let c2 = Arc::new(FiniteLattice::two());
        let qstar = MonotoneMap::new(c2.clone(), b.clone(), vec![b.bottom(), b.top()]).unwrap().verify_frame_hom().unwrap();
        assert!(classify_open(&qstar).unwrap().passed());
        assert!(classify_proper(&qstar).unwrap().passed());

        // 2-chain into 3-chain: exhaustive verdicts computed by brute force below
        let c3 = Arc::new(FiniteLattice::chain(&["0", "m", "1"]));
        let f = MonotoneMap::new(c2.clone(), c3.clone(), vec![0, 2]).unwrap().verify_frame_hom().unwrap();
        let open = classify_open(&f).unwrap();
        let proper = classify_proper(&f).unwrap();
        let l = left_adjoint(&f).unwrap();
        let r = right_adjoint(&f).unwrap();
        let brute_open = c3.elements().all(|a| c2.elements().all(|bb| l.apply(c3.meet(a, f.apply(bb))) == c2.meet(l.apply(a), bb)));
        let brute_proper = c3.elements().all(|a| c2.elements().all(|bb| r.apply(c3.join(a, f.apply(bb))) == c2.join(r.apply(a), bb)));
        assert_eq!(open.passed(), brute_open);
        assert_eq!(proper.passed(), brute_proper);
        // the point {m} is open and closed-complemented; both hold here
        assert!(open.passed() && proper.passed());
    }

    #[test]
    fn role_mismatch_is_precondition_error() {
        let c2 = Arc::new(FiniteLattice::two());
        let plain = MonotoneMap::new(c2.clone(), c2, vec![0, 1]).unwrap();
        assert!(matches!(classify_open(&plain), Err(Error::Precondition(_))));
    }
}
