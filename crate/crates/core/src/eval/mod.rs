//! Brute-force evaluation of finite presentations, and the coverage
//! theorems checked by isomorphism.

mod base;
mod closure;
mod object;
mod present;
mod spatial;

pub use closure::ClosureSystem;
pub use object::{ObjectDoc, ObjectKind, PresentedObject};
pub use present::{eval_dcpo, eval_frame, eval_frame_with_limit, eval_preframe, eval_suplattice, Prepared, DEFAULT_LIMIT};
pub use spatial::{points, PointSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{poset_isomorphism, Verdict};
use crate::presentation::{Presentation, PresentationKind};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CoverageReport {
    pub kind: PresentationKind,
    pub verdict: Verdict,
    pub frame_size: usize,
    pub other_size: usize,
    /// frame element ↦ element of the other structure
    #[serde(skip_serializing_if = "Option::is_none")]
    pub isomorphism: Option<Vec<usize>>,
    pub note: String,
}

/// Checks that the frame presented agrees with the sup-lattice, preframe or
/// dcpo presented by the same data, via an order isomorphism that matches
/// generator interpretations.
pub fn verify_coverage(p: &Presentation) -> Result<CoverageReport> {
    let s = p.domain.structure();
    let (other, what) = match p.kind {
        PresentationKind::Sup if s.meets => (eval_suplattice(p)?, "sup-lattice"),
        PresentationKind::PreFrm if s.joins => (eval_preframe(p)?, "preframe"),
        PresentationKind::Dcpo if s.distributive => (eval_dcpo(p)?, "dcpo"),
        PresentationKind::Plain => {
            return Err(Error::Precondition("plain presentations have no coverage theorem".into()));
        }
        k => {
            return Err(Error::Precondition(format!(
                "a {} presentation needs a domain with {}",
                k.name(),
                match k {
                    PresentationKind::Sup => "meets",
                    PresentationKind::PreFrm => "joins",
                    _ => "distributive meets and joins",
                }
            )));
        }
    };
    let frame = eval_frame(p)?;
    let seeds: Vec<(usize, usize)> = frame.interp.iter().copied().zip(other.interp.iter().copied()).collect();
    let iso = poset_isomorphism(&frame.poset, &other.poset, &seeds);
    let note = match &iso {
        Some(_) => format!("frame ≅ {what} ({} elements)", frame.len()),
        None => format!("frame has {} elements, {what} has {}; no generator-preserving isomorphism", frame.len(), other.len()),
    };
    Ok(CoverageReport {
        kind: p.kind,
        verdict: if iso.is_some() { Verdict::Pass } else { Verdict::Fail },
        frame_size: frame.len(),
        other_size: other.len(),
        isomorphism: iso,
        note,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse_presentation;
    use crate::lattice::order_isomorphic;

    fn pres(src: &str) -> Presentation {
        parse_presentation(src).unwrap()
    }

    #[test]
    fn free_frame_on_two_generators() {
        let p = pres("presentation Fr { domain finite { gens a, b; } }");
        let f = eval_frame(&p).unwrap();
        assert_eq!(f.len(), 6);
        let sp = points(&p, 100).unwrap();
        assert_eq!(sp.len(), 4);
        let g = sp.frame(100).unwrap();
        assert!(order_isomorphic(f.lattice().unwrap(), g.lattice().unwrap()).is_some());
    }

    #[test]
    fn relations_cut_the_frame() {
        // a ≤ b leaves the three-element chain 0 < a < b < 1 plus nothing else
        let p = pres("presentation Fr { domain finite { gens a, b; } rel a <= b; }");
        let f = eval_frame(&p).unwrap();
        assert_eq!(f.len(), 4);
        assert!(f.holds(&p.relations[0]).unwrap());
        // a = 1 and b = 0
        let p = pres("presentation Fr { domain finite { gens a, b; } rel a = 1; rel b = 0; }");
        assert_eq!(eval_frame(&p).unwrap().len(), 2);
    }

    #[test]
    fn sup_coverage_on_boolean_generators() {
        let p = pres(
            "presentation Sup {
  domain finite { gens z, a, b, t; leq z <= a, z <= b, a <= t, b <= t; meets; }
  rel t <= a v b;
}",
        );
        let r = verify_coverage(&p).unwrap();
        assert_eq!(r.verdict, Verdict::Pass, "{}", r.note);
        assert_eq!(r.frame_size, 5);
    }

    #[test]
    fn preframe_and_dcpo_coverage() {
        let pf = pres(
            "presentation PreFrm {
  domain finite { gens z, a, b, t; leq z <= a, z <= b, a <= t, b <= t; joins; }
}",
        );
        let r = verify_coverage(&pf).unwrap();
        assert_eq!(r.verdict, Verdict::Pass, "{}", r.note);
        assert_eq!(r.frame_size, 6);
        let d = pres(
            "presentation DCPO {
  domain finite { gens z, m, t; leq z <= m, m <= t; meets; joins; }
  rel m <= z;
}",
        );
        let r = verify_coverage(&d).unwrap();
        assert_eq!(r.verdict, Verdict::Pass, "{}", r.note);
        assert_eq!(r.frame_size, 2);
        // a ≤ b on the four-element Boolean algebra is not stable, and the
        // frame collapses further than the dcpo
        let u = pres(
            "presentation DCPO {
  domain finite { gens z, a, b, t; leq z <= a, z <= b, a <= t, b <= t; meets; joins; }
  rel a <= b;
}",
        );
        assert_eq!(verify_coverage(&u).unwrap().verdict, Verdict::Fail);
    }

    #[test]
    fn unstable_relation_breaks_coverage() {
        // b ≤ a is not stable under meeting with c: the frame identifies
        // b ∧ c ≤ a ∧ c but the sup-lattice does not
        let p = pres(
            "presentation Sup {
  domain finite { gens bc, ac, c, a, b, t; leq bc <= b, bc <= c, ac <= a, ac <= c, a <= t, b <= t, c <= t; zero-meets; meets; }
  rel b <= a;
}",
        );
        let r = verify_coverage(&p);
        assert!(matches!(r, Ok(ref r) if r.verdict == Verdict::Fail) || r.is_err(), "{r:?}");
    }

    #[test]
    fn schemas_need_instantiation() {
        let p = pres("presentation Sup { domain interval-R; forall p,q : OI(p,q) <= OI(p,q); }");
        assert!(matches!(eval_frame(&p), Err(Error::Precondition(_))));
    }

    #[test]
    fn builtin_domain_restricted_to_mentioned_generators() {
        let p = pres("presentation Sup { domain interval-R; rel OI(0,1) v OI(1/2,2) = OI(0,2); }");
        let f = eval_frame(&p).unwrap();
        let sp = points(&p, 1000).unwrap().frame(1000).unwrap();
        assert!(order_isomorphic(f.lattice().unwrap(), sp.lattice().unwrap()).is_some());
    }
}
