//! Finite structures produced by evaluating a presentation.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{FiniteLattice, FinitePoset};
use crate::presentation::{Gen, RelOp, Relation, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum ObjectKind {
    Frame,
    SupLattice,
    Preframe,
    Dcpo,
}

/// A presented structure together with where each generator went.
#[derive(Clone, Debug)]
pub struct PresentedObject {
    pub kind: ObjectKind,
    pub poset: FinitePoset,
    pub lattice: Option<Arc<FiniteLattice>>,
    pub generators: Vec<Gen>,
    pub interp: Vec<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ObjectDoc {
    pub kind: ObjectKind,
    pub size: usize,
    pub elements: Vec<String>,
    pub covers: Vec<[usize; 2]>,
    pub interp: BTreeMap<String, usize>,
}

impl PresentedObject {
    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    pub fn lattice(&self) -> Result<&Arc<FiniteLattice>> {
        self.lattice.as_ref().ok_or_else(|| Error::Precondition(format!("the presented {:?} is not a lattice", self.kind)))
    }

    pub fn interp_of(&self, g: &Gen) -> Result<usize> {
        self.generators.iter().position(|h| h == g).map(|i| self.interp[i]).ok_or_else(|| Error::ForeignGenerator(g.to_string()))
    }

    /// The value of a finite term.
    pub fn value(&self, t: &Term) -> Result<usize> {
        let l = self.lattice()?;
        let Some(ms) = t.meets() else {
            return Err(Error::Precondition("families must be expanded before evaluation".into()));
        };
        let mut acc = l.bottom();
        for m in ms {
            let mut v = l.top();
            for g in &m.0 {
                v = l.meet(v, self.interp_of(g)?);
            }
            acc = l.join(acc, v);
        }
        Ok(acc)
    }

    pub fn holds(&self, r: &Relation) -> Result<bool> {
        let (a, b) = (self.value(&r.lhs)?, self.value(&r.rhs)?);
        let l = self.lattice()?;
        Ok(match r.op {
            RelOp::Le => l.leq(a, b),
            RelOp::Eq => a == b,
        })
    }

    pub fn to_doc(&self) -> ObjectDoc {
        let n = self.len();
        let mut covers = Vec::new();
        for b in 0..n {
            for a in self.poset.lower_covers(b) {
                covers.push([a, b]);
            }
        }
        ObjectDoc {
            kind: self.kind,
            size: n,
            elements: self.poset.labels().to_vec(),
            covers,
            interp: self.generators.iter().zip(&self.interp).map(|(g, &i)| (g.to_string(), i)).collect(),
        }
    }
}
