use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::lattice::FiniteLattice;
use crate::error::{Error, Result};

/// Which structure a map has been checked to preserve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Role {
    Plain,
    SuplatticeHom,
    PreframeHom,
    FrameHom,
    Nucleus,
    ClosureOp,
    InteriorOp,
    DcpoIdempotent,
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).ok().and_then(|v| v.as_str().map(String::from));
        f.write_str(&s.unwrap_or_default())
    }
}

/// A monotone map between finite lattices. The role tag is only ever set by
/// a constructor that has verified the corresponding laws.
#[derive(Clone, Debug)]
pub struct MonotoneMap {
    source: Arc<FiniteLattice>,
    target: Arc<FiniteLattice>,
    table: Vec<usize>,
    role: Role,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapDoc {
    pub table: Vec<usize>,
    pub role: Role,
}

impl PartialEq for MonotoneMap {
    fn eq(&self, other: &Self) -> bool {
        self.table == other.table && self.source == other.source && self.target == other.target
    }
}

impl MonotoneMap {
    pub fn new(source: Arc<FiniteLattice>, target: Arc<FiniteLattice>, table: Vec<usize>) -> Result<Self> {
        if table.len() != source.len() {
            return Err(Error::Shape(format!("table has {} entries for a source of {} elements", table.len(), source.len())));
        }
        if let Some(&bad) = table.iter().find(|&&t| t >= target.len()) {
            return Err(Error::Shape(format!("image index {bad} out of range")));
        }
        for a in source.elements() {
            for b in source.elements() {
                if source.leq(a, b) && !target.leq(table[a], table[b]) {
                    return Err(Error::NotMonotone(source.label(a).into(), source.label(b).into()));
                }
            }
        }
        Ok(MonotoneMap { source, target, table, role: Role::Plain })
    }

    pub fn from_fn(source: Arc<FiniteLattice>, target: Arc<FiniteLattice>, f: impl Fn(usize) -> usize) -> Result<Self> {
        let table = source.elements().map(f).collect();
        Self::new(source, target, table)
    }

    pub fn identity(l: Arc<FiniteLattice>) -> Self {
        let table = l.elements().collect();
        MonotoneMap { source: l.clone(), target: l, table, role: Role::FrameHom }
    }

    pub fn constant(source: Arc<FiniteLattice>, target: Arc<FiniteLattice>, value: usize) -> Self {
        let table = vec![value; source.len()];
        MonotoneMap { source, target, table, role: Role::Plain }
    }

    pub(crate) fn with_role(mut self, role: Role) -> Self {
        self.role = role;
        self
    }

    pub fn role(&self) -> Role {
        self.role
    }

    pub fn source(&self) -> &Arc<FiniteLattice> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteLattice> {
        &self.target
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn apply(&self, a: usize) -> usize {
        self.table[a]
    }

    pub fn is_endo(&self) -> bool {
        Arc::ptr_eq(&self.source, &self.target) || self.source == self.target
    }

    /// `self ∘ inner`.
    pub fn after(&self, inner: &MonotoneMap) -> Result<MonotoneMap> {
        if inner.target.as_ref() != self.source.as_ref() {
            return Err(Error::Shape("maps are not composable".into()));
        }
        let table = inner.table.iter().map(|&x| self.table[x]).collect();
        Ok(MonotoneMap { source: inner.source.clone(), target: self.target.clone(), table, role: Role::Plain })
    }

    fn pointwise(&self, other: &MonotoneMap, op: impl Fn(usize, usize) -> usize) -> Result<MonotoneMap> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::Shape("pointwise operation on maps with different types".into()));
        }
        let table = self.table.iter().zip(&other.table).map(|(&a, &b)| op(a, b)).collect();
        Ok(MonotoneMap { source: self.source.clone(), target: self.target.clone(), table, role: Role::Plain })
    }

    pub fn join_with(&self, other: &MonotoneMap) -> Result<MonotoneMap> {
        let t = self.target.clone();
        self.pointwise(other, |a, b| t.join(a, b))
    }

    pub fn meet_with(&self, other: &MonotoneMap) -> Result<MonotoneMap> {
        let t = self.target.clone();
        self.pointwise(other, |a, b| t.meet(a, b))
    }

    pub fn pointwise_leq(&self, other: &MonotoneMap) -> bool {
        self.table.iter().zip(&other.table).all(|(&a, &b)| self.target.leq(a, b))
    }

    /// First pair whose join is not preserved (`None` for the empty join means `f(0) ≠ 0`).
    pub fn join_failure(&self) -> Option<Option<(usize, usize)>> {
        let (s, t) = (&self.source, &self.target);
        if self.table[s.bottom()] != t.bottom() {
            return Some(None);
        }
        for a in s.elements() {
            for b in a + 1..s.len() {
                if self.table[s.join(a, b)] != t.join(self.table[a], self.table[b]) {
                    return Some(Some((a, b)));
                }
            }
        }
        None
    }

    pub fn meet_failure(&self) -> Option<Option<(usize, usize)>> {
        let (s, t) = (&self.source, &self.target);
        if self.table[s.top()] != t.top() {
            return Some(None);
        }
        for a in s.elements() {
            for b in a + 1..s.len() {
                if self.table[s.meet(a, b)] != t.meet(self.table[a], self.table[b]) {
                    return Some(Some((a, b)));
                }
            }
        }
        None
    }

    pub fn preserves_joins(&self) -> bool {
        self.join_failure().is_none()
    }

    pub fn preserves_meets(&self) -> bool {
        self.meet_failure().is_none()
    }

    pub fn is_idempotent(&self) -> bool {
        self.is_endo() && self.table.iter().all(|&x| self.table[x] == x)
    }

    pub fn is_inflationary(&self) -> bool {
        self.is_endo() && self.table.iter().enumerate().all(|(a, &fa)| self.source.leq(a, fa))
    }

    pub fn is_deflationary(&self) -> bool {
        self.is_endo() && self.table.iter().enumerate().all(|(a, &fa)| self.source.leq(fa, a))
    }

    /// Grants `suplatticeHom` after checking all joins are preserved.
    pub fn verify_suplattice_hom(self) -> Result<Self> {
        match self.join_failure() {
            None => Ok(self.with_role(Role::SuplatticeHom)),
            Some(w) => Err(law_error(&self.source, "join preservation", w)),
        }
    }

    /// Grants `preframeHom`: finite meets preserved. Directed joins are
    /// maxima in a finite lattice, so monotonicity covers them.
    pub fn verify_preframe_hom(self) -> Result<Self> {
        match self.meet_failure() {
            None => Ok(self.with_role(Role::PreframeHom)),
            Some(w) => Err(law_error(&self.source, "finite meet preservation", w)),
        }
    }

    pub fn verify_frame_hom(self) -> Result<Self> {
        if let Some(w) = self.join_failure() {
            return Err(law_error(&self.source, "join preservation", w));
        }
        if let Some(w) = self.meet_failure() {
            return Err(law_error(&self.source, "finite meet preservation", w));
        }
        Ok(self.with_role(Role::FrameHom))
    }

    /// Grants `nucleus`: inflationary, idempotent, finite-meet preserving endomap.
    pub fn verify_nucleus(self) -> Result<Self> {
        if !self.is_inflationary() {
            return Err(Error::LawFailure { law: "inflationary".into(), witness: "some element".into() });
        }
        if !self.is_idempotent() {
            return Err(Error::LawFailure { law: "idempotent".into(), witness: "some element".into() });
        }
        if let Some(w) = self.meet_failure() {
            return Err(law_error(&self.source, "finite meet preservation", w));
        }
        Ok(self.with_role(Role::Nucleus))
    }

    pub fn to_doc(&self) -> MapDoc {
        MapDoc { table: self.table.clone(), role: self.role }
    }

    /// Rebuilds a map from its wire form; the recorded role is re-verified.
    pub fn from_doc(source: Arc<FiniteLattice>, target: Arc<FiniteLattice>, doc: &MapDoc) -> Result<Self> {
        let m = Self::new(source, target, doc.table.clone())?;
        match doc.role {
            Role::Plain => Ok(m),
            Role::SuplatticeHom => m.verify_suplattice_hom(),
            Role::PreframeHom => m.verify_preframe_hom(),
            Role::FrameHom => m.verify_frame_hom(),
            Role::Nucleus => m.verify_nucleus(),
            Role::ClosureOp => super::operators::verify_closure(m),
            Role::InteriorOp => super::operators::verify_interior(m),
            Role::DcpoIdempotent => {
                if m.is_idempotent() {
                    Ok(m.with_role(Role::DcpoIdempotent))
                } else {
                    Err(Error::LawFailure { law: "idempotent".into(), witness: "some element".into() })
                }
            }
        }
    }
}

fn law_error(l: &FiniteLattice, law: &str, w: Option<(usize, usize)>) -> Error {
    let witness = match w {
        None => "the empty family".to_string(),
        Some((a, b)) => format!("({}, {})", l.label(a), l.label(b)),
    };
    Error::LawFailure { law: law.into(), witness }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn non_monotone_rejected() {
        let two = Arc::new(FiniteLattice::two());
        let err = MonotoneMap::new(two.clone(), two, vec![1, 0]);
        assert!(matches!(err, Err(Error::NotMonotone(..))));
    }

    #[test]
    fn constant_one_is_not_a_suplattice_hom() {
        let two = Arc::new(FiniteLattice::two());
        let m = MonotoneMap::constant(two.clone(), two, 1);
        assert!(m.clone().verify_suplattice_hom().is_err());
        assert!(m.verify_preframe_hom().is_ok());
    }

    #[test]
    fn doc_reverifies_role() {
        let b = Arc::new(FiniteLattice::boolean(&["a", "b"]));
        let id = MonotoneMap::identity(b.clone());
        let doc = id.to_doc();
        assert_eq!(doc.role, Role::FrameHom);
        let back = MonotoneMap::from_doc(b.clone(), b.clone(), &doc).unwrap();
        assert_eq!(back, id);
        let forged = MapDoc { table: vec![0, 3, 3, 3], role: Role::FrameHom };
        assert!(MonotoneMap::from_doc(b.clone(), b, &forged).is_err());
    }
}
