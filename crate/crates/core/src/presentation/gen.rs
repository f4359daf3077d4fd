//! Generator syntax.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::expr::{Env, Expr, Sort, Sorts};
use crate::rational::Endpoint;

/// Marks a generator as the image of a parent generator under a quotient
/// transformer: `◇g`, `□g`, `⊠g`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Tag {
    Dia,
    Box,
    BoxTimes,
}

impl Tag {
    pub fn ascii(self) -> &'static str {
        match self {
            Tag::Dia => "dia",
            Tag::Box => "box",
            Tag::BoxTimes => "boxtimes",
        }
    }

    pub fn unicode(self) -> &'static str {
        match self {
            Tag::Dia => "◇",
            Tag::Box => "□",
            Tag::BoxTimes => "⊠",
        }
    }
}

/// Opens of ℕ with the reverse specialisation order: `∅`, `↓k = {0..k}`, `ℕ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum NatOpen {
    Empty,
    DownTo(u64),
    All,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Gen {
    /// element of an explicitly tabulated domain
    Named(String),
    /// rational open interval `⦅p, q⦆`
    Open(Expr, Expr),
    /// complement in `[0, 1]` of the closed interval `[p, q]`, written `⦆p, q⦅`
    CoClosed(Expr, Expr),
    Nat(NatOpen),
    Tagged(Tag, Box<Gen>),
}

impl Gen {
    pub fn named(s: &str) -> Gen {
        Gen::Named(s.to_string())
    }

    pub fn open(p: Expr, q: Expr) -> Gen {
        Gen::Open(p, q)
    }

    pub fn open_c(p: Endpoint, q: Endpoint) -> Gen {
        Gen::Open(Expr::Const(p), Expr::Const(q))
    }

    pub fn coclosed(p: Expr, q: Expr) -> Gen {
        Gen::CoClosed(p, q)
    }

    pub fn coclosed_c(p: Endpoint, q: Endpoint) -> Gen {
        Gen::CoClosed(Expr::Const(p), Expr::Const(q))
    }

    pub fn tagged(tag: Tag, g: Gen) -> Gen {
        Gen::Tagged(tag, Box::new(g))
    }

    pub fn tag(&self) -> Option<Tag> {
        match self {
            Gen::Tagged(t, _) => Some(*t),
            _ => None,
        }
    }

    /// The generator underneath any tag.
    pub fn untagged(&self) -> &Gen {
        match self {
            Gen::Tagged(_, g) => g.untagged(),
            g => g,
        }
    }

    pub fn map_exprs(&self, f: &mut impl FnMut(&Expr) -> Expr) -> Gen {
        match self {
            Gen::Open(p, q) => Gen::Open(f(p), f(q)),
            Gen::CoClosed(p, q) => Gen::CoClosed(f(p), f(q)),
            Gen::Tagged(t, g) => Gen::Tagged(*t, Box::new(g.map_exprs(f))),
            other => other.clone(),
        }
    }

    pub fn subst(&self, env: &Env) -> Gen {
        self.map_exprs(&mut |e| e.subst(env))
    }

    pub fn rename(&self, map: &BTreeMap<String, String>) -> Gen {
        self.map_exprs(&mut |e| e.rename(map))
    }

    pub fn simplify(&self, sorts: &Sorts) -> Gen {
        self.map_exprs(&mut |e| e.simplify(sorts))
    }

    pub fn is_concrete(&self) -> bool {
        let mut vars = Vec::new();
        self.vars(&mut vars);
        vars.is_empty()
    }

    pub fn vars(&self, out: &mut Vec<String>) {
        match self {
            Gen::Open(p, q) | Gen::CoClosed(p, q) => {
                p.vars(out);
                q.vars(out);
            }
            Gen::Tagged(_, g) => g.vars(out),
            _ => {}
        }
    }

    /// Records the sort each variable must have from where it occurs.
    pub fn infer_sorts(&self, sorts: &mut Sorts) {
        let mut note = |e: &Expr, s: Sort| {
            let mut vs = Vec::new();
            e.vars(&mut vs);
            for v in vs {
                sorts.entry(v).and_modify(|old| *old = old.unify(s)).or_insert(s);
            }
        };
        match self {
            Gen::Open(p, q) => {
                note(p, Sort::Lower);
                note(q, Sort::Upper);
            }
            Gen::CoClosed(p, q) => {
                note(p, Sort::Unit);
                note(q, Sort::Unit);
            }
            Gen::Tagged(_, g) => g.infer_sorts(sorts),
            _ => {}
        }
    }

    /// Endpoints of a concrete interval generator.
    pub fn endpoints(&self) -> Option<(Endpoint, Endpoint)> {
        match self {
            Gen::Open(p, q) | Gen::CoClosed(p, q) => Some((p.as_const()?, q.as_const()?)),
            _ => None,
        }
    }
}
