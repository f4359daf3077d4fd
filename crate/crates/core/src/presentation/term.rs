//! Relation sides: joins of finite meets, and indexed families.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::expr::{Cond, Env, Sort, Sorts};
use super::gen::Gen;

/// A finite meet of generators; the empty meet is `1`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Meet(pub Vec<Gen>);

impl Meet {
    pub fn one() -> Meet {
        Meet(Vec::new())
    }

    pub fn single(g: Gen) -> Meet {
        Meet(vec![g])
    }

    pub fn gens(&self) -> &[Gen] {
        &self.0
    }

    pub fn map(&self, f: impl FnMut(&Gen) -> Gen) -> Meet {
        Meet(self.0.iter().map(f).collect())
    }
}

/// A bound index variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Binder {
    pub name: String,
    pub sort: Sort,
}

impl Binder {
    pub fn new(name: &str, sort: Sort) -> Binder {
        Binder { name: name.to_string(), sort }
    }
}

/// `⋁ { body(x) | x ∈ binders, cond(x) }`, possibly marked directed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Family {
    pub binders: Vec<Binder>,
    pub cond: Cond,
    pub body: Meet,
    #[serde(default)]
    pub directed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Term {
    /// finite join of finite meets; the empty join is `0`
    Join(Vec<Meet>),
    Family(Family),
}

impl Term {
    pub fn zero() -> Term {
        Term::Join(Vec::new())
    }

    pub fn one() -> Term {
        Term::Join(vec![Meet::one()])
    }

    pub fn gen(g: Gen) -> Term {
        Term::Join(vec![Meet::single(g)])
    }

    pub fn meet(gens: Vec<Gen>) -> Term {
        Term::Join(vec![Meet(gens)])
    }

    pub fn join_of(gens: Vec<Gen>) -> Term {
        Term::Join(gens.into_iter().map(Meet::single).collect())
    }

    pub fn is_family(&self) -> bool {
        matches!(self, Term::Family(_))
    }

    /// All meets of a finite join.
    pub fn meets(&self) -> Option<&[Meet]> {
        match self {
            Term::Join(ms) => Some(ms),
            Term::Family(_) => None,
        }
    }

    pub fn for_each_gen(&self, f: &mut impl FnMut(&Gen)) {
        match self {
            Term::Join(ms) => ms.iter().flat_map(|m| m.0.iter()).for_each(f),
            Term::Family(fam) => fam.body.0.iter().for_each(f),
        }
    }

    pub fn map_gens(&self, f: &mut impl FnMut(&Gen) -> Gen) -> Term {
        match self {
            Term::Join(ms) => Term::Join(ms.iter().map(|m| m.map(&mut *f)).collect()),
            Term::Family(fam) => Term::Family(Family { body: fam.body.map(f), ..fam.clone() }),
        }
    }

    /// Substitutes free variables; family binders shadow the environment.
    pub fn subst(&self, env: &Env) -> Term {
        match self {
            Term::Join(_) => self.map_gens(&mut |g| g.subst(env)),
            Term::Family(fam) => {
                let mut inner = env.clone();
                for b in &fam.binders {
                    inner.remove(&b.name);
                }
                Term::Family(Family {
                    binders: fam.binders.clone(),
                    cond: fam.cond.subst(&inner),
                    body: fam.body.map(|g| g.subst(&inner)),
                    directed: fam.directed,
                })
            }
        }
    }

    pub fn rename(&self, map: &BTreeMap<String, String>) -> Term {
        match self {
            Term::Join(_) => self.map_gens(&mut |g| g.rename(map)),
            Term::Family(fam) => {
                let mut inner = map.clone();
                for b in &fam.binders {
                    inner.remove(&b.name);
                }
                Term::Family(Family {
                    binders: fam.binders.clone(),
                    cond: fam.cond.rename(&inner),
                    body: fam.body.map(|g| g.rename(&inner)),
                    directed: fam.directed,
                })
            }
        }
    }

    /// Free variables, in first-occurrence order.
    pub fn free_vars(&self, out: &mut Vec<String>) {
        match self {
            Term::Join(_) => self.for_each_gen(&mut |g| g.vars(out)),
            Term::Family(fam) => {
                let mut inner = Vec::new();
                fam.cond.vars(&mut inner);
                fam.body.0.iter().for_each(|g| g.vars(&mut inner));
                for v in inner {
                    if !fam.binders.iter().any(|b| b.name == v) && !out.contains(&v) {
                        out.push(v);
                    }
                }
            }
        }
    }

    pub fn infer_sorts(&self, sorts: &mut Sorts) {
        match self {
            Term::Join(_) => self.for_each_gen(&mut |g| g.infer_sorts(sorts)),
            Term::Family(fam) => {
                let mut inner = Sorts::new();
                fam.body.0.iter().for_each(|g| g.infer_sorts(&mut inner));
                for (v, s) in inner {
                    if !fam.binders.iter().any(|b| b.name == v) {
                        sorts.entry(v).and_modify(|o| *o = o.unify(s)).or_insert(s);
                    }
                }
            }
        }
    }
}
