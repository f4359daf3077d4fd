//! Seeded randomized suites: transformer output against fixed points,
//! coverage isomorphisms, and Kleene closures.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::eval::{eval_frame, verify_coverage, PresentedObject};
use crate::lattice::{
    check_quotient_operator, fixed_points, kleene_closure, order_isomorphic, FiniteLattice, MonotoneMap, QuotientMode, Verdict,
};
use crate::presentation::{saturate, Presentation, PresentationKind};
use crate::random::{instance_rng, interior_below, random_frame, random_join_endo, random_meet_endo, random_presentation, SuiteRng};
use crate::transform::{present, required_kind, spec_from_operator, TransformedPresentation};
use rand::Rng;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteFailure {
    pub index: u64,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SuiteSummary {
    pub suite: String,
    pub seed: u64,
    /// instances drawn, including ones skipped as ineligible
    pub drawn: u64,
    /// instances actually checked
    pub checked: usize,
    /// transformer runs, each also checked for the size bound
    pub transforms: usize,
    /// checked instances whose operator is not the identity
    pub nontrivial: usize,
    pub failures: Vec<SuiteFailure>,
}

impl SuiteSummary {
    fn new(suite: String, seed: u64) -> Self {
        SuiteSummary { suite, seed, drawn: 0, checked: 0, transforms: 0, nontrivial: 0, failures: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn verdict(&self) -> Verdict {
        if self.passed() {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

/// How many draws a suite may spend per requested instance.
const DRAWS_PER_INSTANCE: u64 = 200;

enum Outcome {
    Checked { transforms: usize, nontrivial: bool },
    Skipped,
}

fn run_suite(name: String, seed: u64, count: usize, mut one: impl FnMut(&mut SuiteRng) -> Result<Outcome>) -> Result<SuiteSummary> {
    let mut s = SuiteSummary::new(name, seed);
    while s.checked < count {
        if s.drawn >= DRAWS_PER_INSTANCE * count.max(1) as u64 {
            return Err(Error::TooLarge(format!("{}: only {} eligible instances in {} draws", s.suite, s.checked, s.drawn)));
        }
        let index = s.drawn;
        s.drawn += 1;
        let mut rng = instance_rng(seed, index);
        match one(&mut rng) {
            Ok(Outcome::Checked { transforms, nontrivial }) => {
                s.checked += 1;
                s.transforms += transforms;
                s.nontrivial += usize::from(nontrivial);
            }
            Ok(Outcome::Skipped) => {}
            Err(e) => {
                s.checked += 1;
                s.failures.push(SuiteFailure { index, detail: e.to_string() });
            }
        }
    }
    Ok(s)
}

fn mismatch(what: impl Into<String>) -> Error {
    Error::LawFailure { law: "oracle equivalence".into(), witness: what.into() }
}

/// Generator count preserved and at most three new schemas.
pub fn check_size_bound(parent: &Presentation, out: &TransformedPresentation) -> Result<()> {
    let (a, b) = (parent.generator_count(), out.presentation.generator_count());
    if a != b {
        return Err(mismatch(format!("generator count {a:?} became {b:?}")));
    }
    let (s, t) = (parent.schema_count(), out.presentation.schema_count());
    if t > s + 3 {
        return Err(mismatch(format!("schema count grew from {s} to {t}")));
    }
    Ok(())
}

/// Transforms `parent` along `e` in `mode` and compares the presented frame
/// with the fixed points of `e`. `None` when some image is not expressible
/// in the mode's shape.
pub fn oracle_check(parent: &Presentation, obj: &PresentedObject, e: &MonotoneMap, mode: QuotientMode) -> Result<Option<PresentedObject>> {
    let spec = match spec_from_operator(obj, e, mode) {
        Ok(s) => s,
        Err(Error::ImageShape { .. }) => return Ok(None),
        Err(err) => return Err(err),
    };
    let out = present(parent, &spec)?;
    check_size_bound(parent, &out)?;
    let got = eval_frame(&out.presentation)?;
    let want = fixed_points(e)?;
    if order_isomorphic(got.lattice()?, &want.lattice).is_none() {
        return Err(mismatch(format!("{mode}: presented frame has {} elements, fixed points {}", got.len(), want.lattice.len())));
    }
    Ok(Some(got))
}

fn random_operator(rng: &mut SuiteRng, l: &std::sync::Arc<FiniteLattice>, closure: bool) -> Result<MonotoneMap> {
    if closure {
        kleene_closure(&random_join_endo(rng, l))
    } else {
        interior_below(&random_meet_endo(rng, l))
    }
}

/// Oracle equivalence over random parents of the kind `mode` needs and
/// random operators passing `mode`'s laws. Triquotient modes replay open
/// and proper operators, and also compare against the open or proper
/// transformer on the same parent.
pub fn oracle_suite(mode: QuotientMode, seed: u64, count: usize) -> Result<SuiteSummary> {
    let kind = required_kind(mode);
    run_suite(format!("oracle/{mode}"), seed, count, |rng| {
        let parent = random_presentation(rng, kind)?;
        let obj = eval_frame(&parent)?;
        let l = obj.lattice()?.clone();
        let closure = match mode {
            QuotientMode::SemiOpen | QuotientMode::Open => true,
            QuotientMode::SemiProper | QuotientMode::Proper => false,
            _ => rng.gen_bool(0.5),
        };
        let e = random_operator(rng, &l, closure)?;
        let lawful = check_quotient_operator(&e, mode).passed();
        if kind == PresentationKind::Dcpo {
            // every open or proper operator must also be a triquotient one
            let base = if closure { QuotientMode::Open } else { QuotientMode::Proper };
            let base = if mode.is_semi() { base.weakening() } else { base };
            if !lawful && check_quotient_operator(&e, base).passed() {
                return Err(mismatch(format!("{base} operator {:?} fails the {mode} laws", e.table())));
            }
        }
        if !lawful {
            return Ok(Outcome::Skipped);
        }
        let Some(got) = oracle_check(&parent, &obj, &e, mode)? else { return Ok(Outcome::Skipped) };
        let mut transforms = 1;
        if kind == PresentationKind::Dcpo {
            let (other, other_kind) =
                if closure { (QuotientMode::Open, PresentationKind::Sup) } else { (QuotientMode::Proper, PresentationKind::PreFrm) };
            let other = if check_quotient_operator(&e, other).passed() { other } else { other.weakening() };
            // the same frame as a presentation of the other kind
            let relabelled = saturate(&parent, other_kind)?;
            if let Some(via) = oracle_check(&relabelled, &obj, &e, other)? {
                transforms += 1;
                if order_isomorphic(got.lattice()?, via.lattice()?).is_none() {
                    return Err(mismatch(format!("{mode} and {other} outputs differ")));
                }
            }
        }
        Ok(Outcome::Checked { transforms, nontrivial: e.table().iter().enumerate().any(|(i, &x)| i != x) })
    })
}

/// `verify_coverage` on random stable presentations of `kind`.
pub fn coverage_suite(kind: PresentationKind, seed: u64, count: usize) -> Result<SuiteSummary> {
    run_suite(format!("coverage/{}", kind.name()), seed, count, |rng| {
        let p = random_presentation(rng, kind)?;
        let r = verify_coverage(&p)?;
        if r.verdict != Verdict::Pass {
            return Err(mismatch(r.note));
        }
        Ok(Outcome::Checked { transforms: 0, nontrivial: !p.relations.is_empty() })
    })
}

/// Kleene closures of random join-preserving endomaps of random frames
/// with at most 32 elements, checked law by law.
pub fn kleene_suite(seed: u64, count: usize) -> Result<SuiteSummary> {
    run_suite("kleene".into(), seed, count, |rng| {
        let l = random_frame(rng, 5);
        let j = random_join_endo(rng, &l);
        let c = kleene_closure(&j)?;
        if !c.is_inflationary() || !c.is_idempotent() || !c.preserves_joins() {
            return Err(mismatch(format!("closure {:?} of {:?} breaks a law", c.table(), j.table())));
        }
        let fixed: Vec<usize> = l.elements().filter(|&u| c.apply(u) == u).collect();
        let pre: Vec<usize> = l.elements().filter(|&u| l.leq(j.apply(u), u)).collect();
        if fixed != pre {
            return Err(mismatch(format!("fixed points {fixed:?} differ from pre-fixed points {pre:?}")));
        }
        Ok(Outcome::Checked { transforms: 0, nontrivial: fixed.len() < l.len() })
    })
}
