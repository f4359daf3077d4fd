use std::fmt;

use serde::{Deserialize, Serialize};

use super::adjoint::{left_adjoint, right_adjoint};
use super::map::MonotoneMap;

/// The individual laws checked by the classifiers. Each witness names one and
/// can be re-evaluated with [`Law::holds_at`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Law {
    PreservesBottom,
    PreservesTop,
    BinaryJoins,
    BinaryMeets,
    Inflationary,
    Deflationary,
    Idempotent,
    /// `j(a) ∧ j(b) ≤ j(a ∧ j(b))`
    OpenLaw,
    /// `p(a) ∨ p(b) ≥ p(a ∨ p(b))`
    ProperLaw,
    /// `e(a) ∧ e(b) ≤ e(e(a) ∧ e(b))`
    WeakMeetLaw,
    /// `e(a) ∨ e(b) ≥ e(e(a) ∨ e(b))`
    WeakJoinLaw,
    LeftAdjointExists,
    RightAdjointExists,
    /// `f_!(a ∧ f*(b)) = f_!(a) ∧ b`
    Frobenius,
    /// `f_*(a ∨ f*(b)) = f_*(a) ∨ b`
    CoFrobenius,
    /// pointwise `lhs ≤ rhs` of two caller-supplied maps
    PointwiseLeq,
    /// the two presented structures are not isomorphic over the generators
    CoverageIso,
    /// the transformed presentation and the operator's fixed points disagree
    OracleEquivalence,
    /// a directed join is not preserved
    ScottContinuity,
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = serde_json::to_value(self).ok();
        f.write_str(v.as_ref().and_then(|v| v.as_str()).unwrap_or("?"))
    }
}

impl Law {
    /// Re-evaluates the law for `map` at the given elements. Laws on pairs use
    /// `elements[0..2]`, unary laws `elements[0]`, nullary laws ignore them.
    /// Laws about two maps or presentations are not re-checkable here and return `false`.
    pub fn holds_at(&self, map: &MonotoneMap, elements: &[usize]) -> bool {
        let s = map.source();
        let t = map.target();
        let f = |x: usize| map.apply(x);
        let a = elements.first().copied().unwrap_or(0);
        let b = elements.get(1).copied().unwrap_or(0);
        match self {
            Law::PreservesBottom => f(s.bottom()) == t.bottom(),
            Law::PreservesTop => f(s.top()) == t.top(),
            Law::BinaryJoins => f(s.join(a, b)) == t.join(f(a), f(b)),
            Law::BinaryMeets => f(s.meet(a, b)) == t.meet(f(a), f(b)),
            Law::Inflationary => s.leq(a, f(a)),
            Law::Deflationary => s.leq(f(a), a),
            Law::Idempotent => f(f(a)) == f(a),
            Law::OpenLaw => s.leq(s.meet(f(a), f(b)), f(s.meet(a, f(b)))),
            Law::ProperLaw => s.leq(f(s.join(a, f(b))), s.join(f(a), f(b))),
            Law::WeakMeetLaw => s.leq(s.meet(f(a), f(b)), f(s.meet(f(a), f(b)))),
            Law::WeakJoinLaw => s.leq(f(s.join(f(a), f(b))), s.join(f(a), f(b))),
            Law::LeftAdjointExists => left_adjoint(map).is_some(),
            Law::RightAdjointExists => right_adjoint(map).is_some(),
            // a ∈ target of f*, b ∈ source of f*
            Law::Frobenius => match left_adjoint(map) {
                Some(l) => l.apply(t.meet(a, f(b))) == s.meet(l.apply(a), b),
                None => false,
            },
            Law::CoFrobenius => match right_adjoint(map) {
                Some(r) => r.apply(t.join(a, f(b))) == s.join(r.apply(a), b),
                None => false,
            },
            Law::PointwiseLeq | Law::CoverageIso | Law::OracleEquivalence | Law::ScottContinuity => false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub law: Law,
    pub elements: Vec<usize>,
    pub labels: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Verdict {
    Pass,
    Fail,
}

/// Outcome of a law check. A failing report always carries a witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperatorReport {
    pub verdict: Verdict,
    pub witnesses: Vec<Witness>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl OperatorReport {
    pub fn pass() -> Self {
        OperatorReport { verdict: Verdict::Pass, witnesses: Vec::new(), notes: Vec::new() }
    }

    pub fn from_witnesses(witnesses: Vec<Witness>) -> Self {
        let verdict = if witnesses.is_empty() { Verdict::Pass } else { Verdict::Fail };
        OperatorReport { verdict, witnesses, notes: Vec::new() }
    }

    pub fn fail(law: Law, labels: Vec<String>) -> Self {
        Self::from_witnesses(vec![Witness { law, elements: Vec::new(), labels }])
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn failed_laws(&self) -> Vec<Law> {
        let mut v: Vec<Law> = self.witnesses.iter().map(|w| w.law).collect();
        v.dedup();
        v
    }

    pub fn merge(mut self, other: OperatorReport) -> Self {
        self.witnesses.extend(other.witnesses);
        self.notes.extend(other.notes);
        if !self.witnesses.is_empty() {
            self.verdict = Verdict::Fail;
        }
        self
    }
}

/// Collects the first counterexample per law over an endomap.
pub(crate) struct LawScan<'a> {
    map: &'a MonotoneMap,
    witnesses: Vec<Witness>,
}

impl<'a> LawScan<'a> {
    pub fn new(map: &'a MonotoneMap) -> Self {
        LawScan { map, witnesses: Vec::new() }
    }

    pub fn nullary(&mut self, law: Law) -> &mut Self {
        if !law.holds_at(self.map, &[]) {
            self.push(law, vec![]);
        }
        self
    }

    pub fn unary(&mut self, law: Law) -> &mut Self {
        if let Some(a) = self.map.source().elements().find(|&a| !law.holds_at(self.map, &[a])) {
            self.push(law, vec![a]);
        }
        self
    }

    pub fn binary(&mut self, law: Law) -> &mut Self {
        let n = self.map.source().len();
        'outer: for a in 0..n {
            for b in 0..n {
                if !law.holds_at(self.map, &[a, b]) {
                    self.push(law, vec![a, b]);
                    break 'outer;
                }
            }
        }
        self
    }

    fn push(&mut self, law: Law, elements: Vec<usize>) {
        let labels = elements.iter().map(|&e| self.map.source().label(e).to_string()).collect();
        self.witnesses.push(Witness { law, elements, labels });
    }

    pub fn finish(&mut self) -> OperatorReport {
        OperatorReport::from_witnesses(std::mem::take(&mut self.witnesses))
    }
}
