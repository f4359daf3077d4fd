//! Generator domains: the (partially) structured sets generators range over.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::expr::{Expr, Sorts};
use super::gen::{Gen, NatOpen, Tag};
use crate::error::{Error, Result};
use crate::rational::Endpoint;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Builtin {
    /// `⦅p, q⦆` for `p < q` in `ℚ ∪ {±∞}`; `p ≥ q` is the empty interval
    #[serde(rename = "interval-R")]
    IntervalR,
    /// `⦆p, q⦅` for `p, q ∈ [0, 1]`, the complement of `[p, q]`
    #[serde(rename = "interval-01")]
    Interval01,
    /// opens `∅ ⊂ ↓0 ⊂ ↓1 ⊂ … ⊂ ℕ`
    #[serde(rename = "nat-reverse")]
    NatReverse,
}

impl Builtin {
    pub fn name(self) -> &'static str {
        match self {
            Builtin::IntervalR => "interval-R",
            Builtin::Interval01 => "interval-01",
            Builtin::NatReverse => "nat-reverse",
        }
    }

    pub fn from_name(s: &str) -> Option<Builtin> {
        match s {
            "interval-R" => Some(Builtin::IntervalR),
            "interval-01" => Some(Builtin::Interval01),
            "nat-reverse" => Some(Builtin::NatReverse),
            _ => None,
        }
    }
}

/// Which lattice operations a domain carries.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Structure {
    pub meets: bool,
    pub joins: bool,
    pub distributive: bool,
}

/// An explicitly tabulated domain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "FiniteDoc", into = "FiniteDoc")]
pub struct FiniteDomain {
    elements: Vec<Gen>,
    leq: Vec<Vec<bool>>,
    /// `None` entries stand for the empty meet `0`
    meet: Option<Vec<Vec<Option<usize>>>>,
    join: Option<Vec<Vec<usize>>>,
    zero_meets: bool,
    distributive: bool,
    index: HashMap<Gen, usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct FiniteDoc {
    pub elements: Vec<Gen>,
    pub leq: Vec<[usize; 2]>,
    #[serde(default)]
    pub meets: bool,
    #[serde(default)]
    pub joins: bool,
    #[serde(default)]
    pub zero_meets: bool,
}

impl TryFrom<FiniteDoc> for FiniteDomain {
    type Error = Error;
    fn try_from(d: FiniteDoc) -> Result<Self> {
        let mut pairs = Vec::new();
        for [a, b] in d.leq {
            if a >= d.elements.len() || b >= d.elements.len() {
                return Err(Error::InvalidPoset(format!("order pair ({a}, {b}) out of range")));
            }
            pairs.push((a, b));
        }
        FiniteDomain::new(d.elements, &pairs, d.meets, d.joins, d.zero_meets)
    }
}

impl From<FiniteDomain> for FiniteDoc {
    fn from(f: FiniteDomain) -> Self {
        FiniteDoc {
            leq: f.cover_pairs().into_iter().map(|(a, b)| [a, b]).collect(),
            meets: f.meet.is_some(),
            joins: f.join.is_some(),
            zero_meets: f.zero_meets,
            elements: f.elements,
        }
    }
}

impl FiniteDomain {
    /// Builds a domain from generating order pairs, taking the reflexive
    /// transitive closure. `meets` / `joins` ask for the corresponding
    /// operations to be derived from the order; with `zero_meets` a pair
    /// without common lower bound meets to `0`.
    pub fn new(elements: Vec<Gen>, pairs: &[(usize, usize)], meets: bool, joins: bool, zero_meets: bool) -> Result<Self> {
        let n = elements.len();
        let mut index = HashMap::new();
        for (i, g) in elements.iter().enumerate() {
            if index.insert(g.clone(), i).is_some() {
                return Err(Error::InvalidPoset(format!("duplicate generator {g}")));
            }
            if !g.is_concrete() {
                return Err(Error::InvalidPoset(format!("generator {g} of a finite domain must be concrete")));
            }
        }
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(a, b) in pairs {
            leq[a][b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if leq[i][k] {
                    for j in 0..n {
                        if leq[k][j] {
                            leq[i][j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..i {
                if leq[i][j] && leq[j][i] {
                    return Err(Error::InvalidPoset(format!("{} and {} are identified by the order", elements[i], elements[j])));
                }
            }
        }
        let mut dom = FiniteDomain { elements, leq, meet: None, join: None, zero_meets, distributive: false, index };
        if meets {
            let mut table = vec![vec![None; n]; n];
            for a in 0..n {
                for b in 0..n {
                    let lower: Vec<usize> = (0..n).filter(|&c| dom.leq[c][a] && dom.leq[c][b]).collect();
                    let best = lower.iter().copied().find(|&c| lower.iter().all(|&d| dom.leq[d][c]));
                    table[a][b] = match (best, lower.is_empty()) {
                        (Some(c), _) => Some(c),
                        (None, true) if zero_meets => None,
                        _ => return Err(Error::NotALattice(dom.elements[a].to_string(), dom.elements[b].to_string(), "meet")),
                    };
                }
            }
            if n > 0 && (0..n).all(|t| (0..n).any(|u| !dom.leq[u][t])) {
                return Err(Error::NotALattice("∅".into(), "∅".into(), "top"));
            }
            dom.meet = Some(table);
        }
        if joins {
            let mut table = vec![vec![0; n]; n];
            for a in 0..n {
                for b in 0..n {
                    let upper: Vec<usize> = (0..n).filter(|&c| dom.leq[a][c] && dom.leq[b][c]).collect();
                    let Some(c) = upper.iter().copied().find(|&c| upper.iter().all(|&d| dom.leq[c][d])) else {
                        return Err(Error::NotALattice(dom.elements[a].to_string(), dom.elements[b].to_string(), "join"));
                    };
                    table[a][b] = c;
                }
            }
            if n > 0 && (0..n).all(|t| (0..n).any(|u| !dom.leq[t][u])) {
                return Err(Error::NotALattice("∅".into(), "∅".into(), "bottom"));
            }
            dom.join = Some(table);
        }
        if let (Some(m), Some(j)) = (&dom.meet, &dom.join) {
            dom.distributive = (0..n).all(|a| {
                (0..n).all(|b| {
                    (0..n).all(|c| {
                        let lhs = m[a][j[b][c]];
                        let rhs = match (m[a][b], m[a][c]) {
                            (Some(x), Some(y)) => Some(j[x][y]),
                            (Some(x), None) | (None, Some(x)) => Some(x),
                            (None, None) => None,
                        };
                        lhs == rhs
                    })
                })
            });
        }
        Ok(dom)
    }

    /// A finite set of generators with no order and no operations.
    pub fn discrete(elements: Vec<Gen>) -> Result<Self> {
        FiniteDomain::new(elements, &[], false, false, false)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Gen] {
        &self.elements
    }

    pub fn index_of(&self, g: &Gen) -> Option<usize> {
        self.index.get(g).copied()
    }

    pub fn leq_idx(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    pub fn meet_idx(&self, a: usize, b: usize) -> Option<Option<usize>> {
        self.meet.as_ref().map(|m| m[a][b])
    }

    pub fn join_idx(&self, a: usize, b: usize) -> Option<usize> {
        self.join.as_ref().map(|j| j[a][b])
    }

    pub fn zero_meets(&self) -> bool {
        self.zero_meets
    }

    pub fn top_idx(&self) -> Option<usize> {
        (0..self.len()).find(|&t| (0..self.len()).all(|u| self.leq[u][t]))
    }

    pub fn bottom_idx(&self) -> Option<usize> {
        (0..self.len()).find(|&t| (0..self.len()).all(|u| self.leq[t][u]))
    }

    /// Covering pairs of the order (its Hasse diagram).
    pub fn cover_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a != b && self.leq[a][b] && !(0..n).any(|c| c != a && c != b && self.leq[a][c] && self.leq[c][b]) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn structure(&self) -> Structure {
        Structure { meets: self.meet.is_some(), joins: self.join.is_some(), distributive: self.distributive }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", tag = "type")]
pub enum GeneratorDomain {
    Builtin {
        name: Builtin,
    },
    /// the unstructured set of tagged copies of a builtin domain
    Tagged {
        tag: Tag,
        parent: Builtin,
    },
    Finite(FiniteDomain),
}

impl GeneratorDomain {
    pub fn builtin(b: Builtin) -> Self {
        GeneratorDomain::Builtin { name: b }
    }

    pub fn finite(&self) -> Option<&FiniteDomain> {
        match self {
            GeneratorDomain::Finite(f) => Some(f),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, GeneratorDomain::Finite(_))
    }

    pub fn structure(&self) -> Structure {
        match self {
            GeneratorDomain::Builtin { name: Builtin::IntervalR } => Structure { meets: true, ..Default::default() },
            GeneratorDomain::Builtin { name: Builtin::Interval01 } => Structure { joins: true, ..Default::default() },
            GeneratorDomain::Builtin { name: Builtin::NatReverse } => Structure { meets: true, joins: true, distributive: true },
            GeneratorDomain::Tagged { .. } => Structure::default(),
            GeneratorDomain::Finite(f) => f.structure(),
        }
    }

    /// Finite enumeration of the generators.
    pub fn elements(&self) -> Result<&[Gen]> {
        match self {
            GeneratorDomain::Finite(f) => Ok(f.elements()),
            GeneratorDomain::Builtin { name } => Err(Error::InfiniteDomain(name.name().into())),
            GeneratorDomain::Tagged { parent, .. } => Err(Error::InfiniteDomain(parent.name().into())),
        }
    }

    /// Rejects generators that do not belong to the domain.
    pub fn check_member(&self, g: &Gen) -> Result<()> {
        let foreign = || Error::ForeignGenerator(g.to_string());
        match self {
            GeneratorDomain::Finite(f) => f.index_of(g).map(|_| ()).ok_or_else(foreign),
            GeneratorDomain::Builtin { name } => builtin_member(*name, g).then_some(()).ok_or_else(foreign),
            GeneratorDomain::Tagged { tag, parent } => match g {
                Gen::Tagged(t, inner) if t == tag && builtin_member(*parent, inner) => Ok(()),
                _ => Err(foreign()),
            },
        }
    }

    /// `true` if a (concrete) generator denotes the empty meet `0`.
    pub fn is_zero(&self, g: &Gen) -> bool {
        match (self, g) {
            (GeneratorDomain::Builtin { name: Builtin::IntervalR }, Gen::Open(..)) => {
                matches!(g.endpoints(), Some((p, q)) if p >= q)
            }
            // ◇ and ⊠ preserve 0
            (GeneratorDomain::Tagged { tag: Tag::Dia | Tag::BoxTimes, parent }, Gen::Tagged(t, inner)) if *t != Tag::Box => {
                GeneratorDomain::builtin(*parent).is_zero(inner)
            }
            _ => false,
        }
    }

    /// Decides `a ≤ b` in the domain order when both are concrete.
    pub fn leq(&self, a: &Gen, b: &Gen) -> Option<bool> {
        if a == b {
            return Some(true);
        }
        match self {
            GeneratorDomain::Finite(f) => Some(f.leq_idx(f.index_of(a)?, f.index_of(b)?)),
            GeneratorDomain::Builtin { name } => builtin_leq(*name, a, b),
            GeneratorDomain::Tagged { .. } => {
                if a.is_concrete() && b.is_concrete() {
                    Some(false)
                } else {
                    None
                }
            }
        }
    }

    /// Binary meet. `None` if the domain has no meets; `Some(None)` is `0`.
    pub fn meet(&self, a: &Gen, b: &Gen, sorts: &Sorts) -> Option<Option<Gen>> {
        match self {
            GeneratorDomain::Finite(f) => {
                let m = f.meet_idx(f.index_of(a)?, f.index_of(b)?)?;
                Some(m.map(|i| f.elements()[i].clone()))
            }
            GeneratorDomain::Builtin { name: Builtin::IntervalR } => match (a, b) {
                (Gen::Open(p, q), Gen::Open(p2, q2)) => {
                    let g = Gen::Open(Expr::max(p.clone(), p2.clone()), Expr::min(q.clone(), q2.clone())).simplify(sorts);
                    if self.is_zero(&g) {
                        Some(None)
                    } else {
                        Some(Some(g))
                    }
                }
                _ => None,
            },
            GeneratorDomain::Builtin { name: Builtin::NatReverse } => match (a, b) {
                (Gen::Nat(x), Gen::Nat(y)) => Some(Some(Gen::Nat(*x.min(y)))),
                _ => None,
            },
            _ => None,
        }
    }

    pub fn join(&self, a: &Gen, b: &Gen, sorts: &Sorts) -> Option<Gen> {
        match self {
            GeneratorDomain::Finite(f) => {
                let j = f.join_idx(f.index_of(a)?, f.index_of(b)?)?;
                Some(f.elements()[j].clone())
            }
            GeneratorDomain::Builtin { name: Builtin::Interval01 } => match (a, b) {
                (Gen::CoClosed(p, q), Gen::CoClosed(p2, q2)) => {
                    Some(Gen::CoClosed(Expr::max(p.clone(), p2.clone()), Expr::min(q.clone(), q2.clone())).simplify(sorts))
                }
                _ => None,
            },
            GeneratorDomain::Builtin { name: Builtin::NatReverse } => match (a, b) {
                (Gen::Nat(x), Gen::Nat(y)) => Some(Gen::Nat(*x.max(y))),
                _ => None,
            },
            _ => None,
        }
    }

    pub fn top(&self) -> Option<Gen> {
        match self {
            GeneratorDomain::Finite(f) => f.top_idx().map(|i| f.elements()[i].clone()),
            GeneratorDomain::Builtin { name: Builtin::IntervalR } => Some(Gen::open_c(Endpoint::NegInf, Endpoint::PosInf)),
            GeneratorDomain::Builtin { name: Builtin::NatReverse } => Some(Gen::Nat(NatOpen::All)),
            _ => None,
        }
    }

    pub fn bottom(&self) -> Option<Gen> {
        match self {
            GeneratorDomain::Finite(f) => f.bottom_idx().map(|i| f.elements()[i].clone()),
            GeneratorDomain::Builtin { name: Builtin::Interval01 } => Some(Gen::coclosed_c(Endpoint::zero(), Endpoint::int(1))),
            GeneratorDomain::Builtin { name: Builtin::NatReverse } => Some(Gen::Nat(NatOpen::Empty)),
            _ => None,
        }
    }

    /// The smallest finite subdomain of a builtin domain containing `gens`
    /// and closed under the builtin's operations.
    pub fn restrict(&self, gens: &[Gen]) -> Result<FiniteDomain> {
        let b = match self {
            GeneratorDomain::Builtin { name } => *name,
            GeneratorDomain::Finite(f) => return Ok(f.clone()),
            GeneratorDomain::Tagged { .. } => return FiniteDomain::discrete(dedup(gens)),
        };
        let s = self.structure();
        let sorts = Sorts::new();
        let mut els: Vec<Gen> = Vec::new();
        let push = |g: Gen, els: &mut Vec<Gen>| {
            if !self.is_zero(&g) && !els.contains(&g) {
                els.push(g);
            }
        };
        for g in gens {
            self.check_member(g)?;
            if !g.is_concrete() {
                return Err(Error::Domain(format!("cannot restrict to symbolic generator {g}")));
            }
            push(g.clone(), &mut els);
        }
        if s.meets {
            if let Some(t) = self.top() {
                push(t, &mut els);
            }
        }
        if s.joins {
            if let Some(t) = self.bottom() {
                push(t, &mut els);
            }
        }
        let mut i = 0;
        while i < els.len() {
            for j in 0..=i {
                let (a, b) = (els[i].clone(), els[j].clone());
                if s.meets {
                    if let Some(Some(m)) = self.meet(&a, &b, &sorts) {
                        push(m, &mut els);
                    }
                }
                if s.joins {
                    if let Some(m) = self.join(&a, &b, &sorts) {
                        push(m, &mut els);
                    }
                }
            }
            if els.len() > 4096 {
                return Err(Error::TooLarge(format!("restriction of {} exceeds 4096 generators", b.name())));
            }
            i += 1;
        }
        els.sort();
        let mut pairs = Vec::new();
        for (x, a) in els.iter().enumerate() {
            for (y, c) in els.iter().enumerate() {
                if x != y && builtin_leq(b, a, c) == Some(true) {
                    pairs.push((x, y));
                }
            }
        }
        FiniteDomain::new(els, &pairs, s.meets, s.joins, b == Builtin::IntervalR)
    }
}

fn dedup(gens: &[Gen]) -> Vec<Gen> {
    let mut v = gens.to_vec();
    v.sort();
    v.dedup();
    v
}

fn builtin_member(b: Builtin, g: &Gen) -> bool {
    match (b, g) {
        (Builtin::IntervalR, Gen::Open(..)) => true,
        (Builtin::Interval01, Gen::CoClosed(p, q)) => [p, q].iter().all(|e| match e.as_const() {
            Some(c) => c >= Endpoint::zero() && c <= Endpoint::int(1),
            None => true,
        }),
        (Builtin::NatReverse, Gen::Nat(_)) => true,
        _ => false,
    }
}

fn builtin_leq(b: Builtin, a: &Gen, c: &Gen) -> Option<bool> {
    match (b, a, c) {
        (Builtin::IntervalR, Gen::Open(..), Gen::Open(..)) => {
            let (p, q) = a.endpoints()?;
            let (p2, q2) = c.endpoints()?;
            if p >= q {
                return Some(true);
            }
            Some(p2 <= p && q <= q2)
        }
        (Builtin::Interval01, Gen::CoClosed(..), Gen::CoClosed(..)) => {
            let (p, q) = a.endpoints()?;
            let (p2, q2) = c.endpoints()?;
            Some(p <= p2 && q2 <= q)
        }
        (Builtin::NatReverse, Gen::Nat(x), Gen::Nat(y)) => Some(x <= y),
        _ => None,
    }
}
