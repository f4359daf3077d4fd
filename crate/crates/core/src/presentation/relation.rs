//! Relations, schemas and presentations.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::domain::GeneratorDomain;
use super::expr::{Cond, Env, Sorts};
use super::gen::Gen;
use super::term::{Binder, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RelOp {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "=")]
    Eq,
}

/// `lhs op rhs`, universally quantified over `params` subject to `cond`.
/// A relation with no parameters is concrete.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Relation {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub params: Vec<Binder>,
    #[serde(default = "cond_true", skip_serializing_if = "is_true")]
    pub cond: Cond,
    pub lhs: Term,
    pub op: RelOp,
    pub rhs: Term,
}

fn cond_true() -> Cond {
    Cond::True
}

fn is_true(c: &Cond) -> bool {
    *c == Cond::True
}

impl Relation {
    pub fn le(lhs: Term, rhs: Term) -> Relation {
        Relation { params: Vec::new(), cond: Cond::True, lhs, op: RelOp::Le, rhs }
    }

    pub fn eq(lhs: Term, rhs: Term) -> Relation {
        Relation { params: Vec::new(), cond: Cond::True, lhs, op: RelOp::Eq, rhs }
    }

    pub fn schema(params: Vec<Binder>, cond: Cond, lhs: Term, op: RelOp, rhs: Term) -> Relation {
        Relation { params, cond, lhs, op, rhs }
    }

    pub fn is_schema(&self) -> bool {
        !self.params.is_empty()
    }

    /// Parameter sorts, with the declared binders taking precedence.
    pub fn sorts(&self) -> Sorts {
        let mut s = Sorts::new();
        self.lhs.infer_sorts(&mut s);
        self.rhs.infer_sorts(&mut s);
        for b in &self.params {
            s.insert(b.name.clone(), b.sort);
        }
        s
    }

    pub fn subst(&self, env: &Env) -> Relation {
        Relation {
            params: self.params.iter().filter(|b| !env.contains_key(&b.name)).cloned().collect(),
            cond: self.cond.subst(env),
            lhs: self.lhs.subst(env),
            op: self.op,
            rhs: self.rhs.subst(env),
        }
    }

    pub fn rename(&self, map: &BTreeMap<String, String>) -> Relation {
        Relation {
            params: self
                .params
                .iter()
                .map(|b| Binder { name: map.get(&b.name).cloned().unwrap_or_else(|| b.name.clone()), sort: b.sort })
                .collect(),
            cond: self.cond.rename(map),
            lhs: self.lhs.rename(map),
            op: self.op,
            rhs: self.rhs.rename(map),
        }
    }

    pub fn map_gens(&self, f: &mut impl FnMut(&Gen) -> Gen) -> Relation {
        Relation { lhs: self.lhs.map_gens(f), rhs: self.rhs.map_gens(f), ..self.clone() }
    }

    /// The two inequalities an equation stands for.
    pub fn as_inequalities(&self) -> Vec<(Term, Term)> {
        match self.op {
            RelOp::Le => vec![(self.lhs.clone(), self.rhs.clone())],
            RelOp::Eq => vec![(self.lhs.clone(), self.rhs.clone()), (self.rhs.clone(), self.lhs.clone())],
        }
    }
}

/// Which coverage theorem a presentation is meant for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum PresentationKind {
    /// frame presented by a ∧-semilattice and join-stable relations
    Sup,
    /// frame presented by a ∨-semilattice and meet-stable relations
    PreFrm,
    /// frame presented by a distributive lattice and directed relations
    Dcpo,
    /// no stability requirement
    Plain,
}

impl PresentationKind {
    pub fn name(self) -> &'static str {
        match self {
            PresentationKind::Sup => "Sup",
            PresentationKind::PreFrm => "PreFrm",
            PresentationKind::Dcpo => "DCPO",
            PresentationKind::Plain => "Fr",
        }
    }

    pub fn from_name(s: &str) -> Option<PresentationKind> {
        match s {
            "Sup" | "sup" => Some(PresentationKind::Sup),
            "PreFrm" | "preframe" | "prefrm" => Some(PresentationKind::PreFrm),
            "DCPO" | "Dcpo" | "dcpo" => Some(PresentationKind::Dcpo),
            "Fr" | "plain" | "Plain" => Some(PresentationKind::Plain),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Presentation {
    pub kind: PresentationKind,
    pub domain: GeneratorDomain,
    pub relations: Vec<Relation>,
}

impl Presentation {
    pub fn new(kind: PresentationKind, domain: GeneratorDomain, relations: Vec<Relation>) -> Presentation {
        Presentation { kind, domain, relations }
    }

    pub fn has_schemas(&self) -> bool {
        self.relations.iter().any(|r| r.is_schema() || r.lhs.is_family() || r.rhs.is_family())
    }

    pub fn schema_count(&self) -> usize {
        self.relations.iter().filter(|r| r.is_schema()).count()
    }

    /// Number of generators of a finite domain.
    pub fn generator_count(&self) -> Option<usize> {
        self.domain.finite().map(|f| f.len())
    }
}
