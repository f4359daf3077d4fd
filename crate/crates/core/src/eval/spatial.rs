//! Points of a finite presentation: assignments of truth values to the
//! generators that respect the domain structure and every relation. A
//! finite frame is spatial, so it is the lattice of up-sets of its points.

use std::collections::BTreeSet;

use fixedbitset::FixedBitSet;

use super::closure::{index_sets, ClosureSystem};
use super::object::{ObjectKind, PresentedObject};
use super::present::Prepared;
use crate::error::{Error, Result};
use crate::lattice::FinitePoset;
use crate::presentation::{Gen, Meet, Presentation, RelOp};

type Side = Vec<Vec<usize>>;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Tri {
    F,
    T,
    U,
}

fn side_value(side: &Side, val: &[Option<bool>]) -> Tri {
    let mut any_unknown = false;
    for m in side {
        let mut v = Tri::T;
        for &g in m {
            match val[g] {
                Some(false) => {
                    v = Tri::F;
                    break;
                }
                None => v = Tri::U,
                Some(true) => {}
            }
        }
        match v {
            Tri::T => return Tri::T,
            Tri::U => any_unknown = true,
            Tri::F => {}
        }
    }
    if any_unknown {
        Tri::U
    } else {
        Tri::F
    }
}

#[derive(Clone, Debug)]
pub struct PointSet {
    pub generators: Vec<Gen>,
    /// each point as the set of generators it satisfies
    pub points: Vec<FixedBitSet>,
}

fn encode(side: &[Meet], index: &dyn Fn(&Gen) -> Result<usize>) -> Result<Side> {
    side.iter().map(|m| m.0.iter().map(index).collect()).collect()
}

/// Enumerates all points, failing beyond `limit` of them.
pub fn points(p: &Presentation, limit: usize) -> Result<PointSet> {
    let prep = Prepared::new(p)?;
    let dom = &prep.domain;
    let n = dom.len();
    let index = |g: &Gen| dom.index_of(g).ok_or_else(|| Error::ForeignGenerator(g.to_string()));
    let mut cons: Vec<(Side, Side)> = Vec::new();
    for (a, b) in dom.cover_pairs() {
        cons.push((vec![vec![a]], vec![vec![b]]));
    }
    let st = dom.structure();
    for a in 0..n {
        for b in 0..a {
            if st.meets {
                let rhs = match dom.meet_idx(a, b).expect("meets") {
                    Some(m) => vec![vec![m]],
                    None => Vec::new(),
                };
                cons.push((vec![vec![a, b]], rhs));
            }
            if st.joins {
                let j = dom.join_idx(a, b).expect("joins");
                cons.push((vec![vec![j]], vec![vec![a], vec![b]]));
            }
        }
    }
    if st.meets {
        if let Some(t) = dom.top_idx() {
            cons.push((vec![vec![]], vec![vec![t]]));
        }
    }
    if st.joins {
        if let Some(b) = dom.bottom_idx() {
            cons.push((vec![vec![b]], Vec::new()));
        }
    }
    for r in &prep.relations {
        let (Some(l), Some(rr)) = (r.lhs.meets(), r.rhs.meets()) else { continue };
        let (l, rr) = (encode(l, &index)?, encode(rr, &index)?);
        if r.op == RelOp::Eq {
            cons.push((rr.clone(), l.clone()));
        }
        cons.push((l, rr));
    }
    // a constraint is checked once its last variable is assigned, and
    // partially whenever any of its variables is
    let mut watch: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut ground: Vec<usize> = Vec::new();
    for (k, (l, r)) in cons.iter().enumerate() {
        let mut vars: Vec<usize> = l.iter().chain(r.iter()).flatten().copied().collect();
        vars.sort();
        vars.dedup();
        if vars.is_empty() {
            ground.push(k);
        }
        for v in vars {
            watch[v].push(k);
        }
    }
    let violated = |k: usize, val: &[Option<bool>]| {
        let (l, r) = &cons[k];
        side_value(l, val) == Tri::T && side_value(r, val) == Tri::F
    };
    let none: Vec<Option<bool>> = vec![None; n];
    if ground.iter().any(|&k| violated(k, &none)) {
        return Ok(PointSet { generators: dom.elements().to_vec(), points: Vec::new() });
    }
    let mut out = Vec::new();
    let mut val = none;
    // iterative depth-first search over 0/1 assignments
    let mut stack: Vec<(usize, bool)> = vec![(0, false)];
    while let Some((i, b)) = stack.pop() {
        if i == n {
            let mut s = FixedBitSet::with_capacity(n);
            (0..n).filter(|&g| val[g] == Some(true)).for_each(|g| s.insert(g));
            out.push(s);
            if out.len() > limit {
                return Err(Error::TooLarge(format!("more than {limit} points")));
            }
            continue;
        }
        for v in val.iter_mut().skip(i) {
            *v = None;
        }
        val[i] = Some(b);
        if !b {
            stack.push((i, true));
        }
        if watch[i].iter().any(|&k| violated(k, &val)) {
            continue;
        }
        stack.push((i + 1, false));
    }
    Ok(PointSet { generators: dom.elements().to_vec(), points: out })
}

impl PointSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// The points as truth tables over `gens` (which must all be known).
    pub fn project(&self, gens: &[Gen]) -> Result<BTreeSet<Vec<bool>>> {
        let idx: Vec<usize> = gens
            .iter()
            .map(|g| self.generators.iter().position(|h| h == g).ok_or_else(|| Error::ForeignGenerator(g.to_string())))
            .collect::<Result<_>>()?;
        Ok(self.points.iter().map(|p| idx.iter().map(|&i| p.contains(i)).collect()).collect())
    }

    /// The frame of up-sets of points under the specialisation order.
    pub fn frame(&self, limit: usize) -> Result<PresentedObject> {
        let k = self.points.len();
        // up-sets of the points are down-sets of the reversed order
        let cs = ClosureSystem::new(k, |a, b| self.points[b].is_subset(&self.points[a]));
        let sets = cs.enumerate(limit)?;
        let index = index_sets(&sets);
        let names = sets.iter().map(|d| format!("{{{}}}", d.ones().map(|x| x.to_string()).collect::<Vec<_>>().join(","))).collect();
        let poset = FinitePoset::from_fn(names, |a, b| sets[a].is_subset(&sets[b]))?;
        let interp = (0..self.generators.len())
            .map(|g| {
                let mut s = FixedBitSet::with_capacity(k);
                (0..k).filter(|&x| self.points[x].contains(g)).for_each(|x| s.insert(x));
                index[&s]
            })
            .collect();
        let lattice = crate::lattice::FiniteLattice::from_poset(poset.clone()).ok().map(std::sync::Arc::new);
        Ok(PresentedObject { kind: ObjectKind::Frame, poset, lattice, generators: self.generators.clone(), interp })
    }
}
