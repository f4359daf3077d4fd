//! Evaluation of finite presentations by closure systems and congruences.

use std::collections::HashSet;
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use super::base::Base;
use super::closure::{index_sets, ClosureSystem};
use super::object::{ObjectKind, PresentedObject};
use crate::error::{Error, Result};
use crate::lattice::{FiniteLattice, FinitePoset};
use crate::presentation::normalize::normalize_relation;
use crate::presentation::{FiniteDomain, Gen, GeneratorDomain, Meet, Presentation, Relation, Term};

/// Default cap on the number of elements of an evaluated structure.
pub const DEFAULT_LIMIT: usize = 1024;

/// A presentation over a finite domain with concrete, normalised relations.
#[derive(Clone, Debug)]
pub struct Prepared {
    pub domain: FiniteDomain,
    pub relations: Vec<Relation>,
}

impl Prepared {
    pub fn new(p: &Presentation) -> Result<Prepared> {
        if p.has_schemas() {
            return Err(Error::Precondition("relation schemas must be instantiated on a grid before evaluation".into()));
        }
        let domain = match &p.domain {
            GeneratorDomain::Finite(f) => f.clone(),
            other => {
                let mut gens = Vec::new();
                for r in &p.relations {
                    let n = normalize_relation(r, other)?;
                    n.lhs.for_each_gen(&mut |g| gens.push(g.clone()));
                    n.rhs.for_each_gen(&mut |g| gens.push(g.clone()));
                }
                other.restrict(&gens)?
            }
        };
        let fd = GeneratorDomain::Finite(domain.clone());
        let relations = p.relations.iter().map(|r| normalize_relation(r, &fd)).collect::<Result<_>>()?;
        Ok(Prepared { domain, relations })
    }

    fn inequalities(&self) -> Vec<(&[Meet], &[Meet])> {
        let mut out = Vec::new();
        for r in &self.relations {
            let (Some(l), Some(rr)) = (r.lhs.meets(), r.rhs.meets()) else { continue };
            out.push((l, rr));
            if r.op == crate::presentation::RelOp::Eq {
                out.push((rr, l));
            }
        }
        out
    }
}

fn build(kind: ObjectKind, poset: FinitePoset, generators: Vec<Gen>, interp: Vec<usize>) -> PresentedObject {
    let lattice = FiniteLattice::from_poset(poset.clone()).ok().map(Arc::new);
    PresentedObject { kind, poset, lattice, generators, interp }
}

fn closed_sets_object(
    kind: ObjectKind,
    cs: &ClosureSystem,
    order: &dyn Fn(usize, usize) -> bool,
    labels: &[String],
    skip: Option<usize>,
    generators: Vec<Gen>,
    gen_elem: &[usize],
    limit: usize,
) -> Result<PresentedObject> {
    let sets = cs.enumerate(limit)?;
    let index = index_sets(&sets);
    let names: Vec<String> = sets
        .iter()
        .map(|d| {
            let tops: Vec<&str> = d
                .ones()
                .filter(|&x| Some(x) != skip && !d.ones().any(|y| y != x && Some(y) != skip && order(x, y)))
                .map(|x| labels[x].as_str())
                .collect();
            if tops.is_empty() {
                "0".to_string()
            } else {
                tops.join(" v ")
            }
        })
        .collect();
    let poset = FinitePoset::from_fn(names, |a, b| sets[a].is_subset(&sets[b]))?;
    let interp = gen_elem
        .iter()
        .map(|&x| {
            let mut seed = FixedBitSet::with_capacity(cs.len());
            seed.insert(x);
            index[&cs.close(&seed)]
        })
        .collect();
    Ok(build(kind, poset, generators, interp))
}

/// The frame presented, computed as the lattice of ideals of the
/// ∧-semilattice of finite meets closed under the meet-stabilised covers.
pub fn eval_frame(p: &Presentation) -> Result<PresentedObject> {
    eval_frame_with_limit(p, DEFAULT_LIMIT)
}

pub fn eval_frame_with_limit(p: &Presentation, limit: usize) -> Result<PresentedObject> {
    let prep = Prepared::new(p)?;
    let dom = &prep.domain;
    let base = Base::new(dom, true)?;
    let mut raw: Vec<(usize, Vec<usize>)> = Vec::new();
    for (lhs, rhs) in prep.inequalities() {
        let u: Vec<usize> = rhs.iter().map(|m| base.meet_of(m, dom)).collect::<Result<_>>()?;
        for m in lhs {
            raw.push((base.meet_of(m, dom)?, u.clone()));
        }
    }
    let st = dom.structure();
    let n = dom.len();
    if st.joins {
        for a in 0..n {
            for b in 0..a {
                let j = dom.join_idx(a, b).expect("joins");
                raw.push((base.of_gen[j], vec![base.of_gen[a], base.of_gen[b]]));
            }
        }
        if let Some(b) = dom.bottom_idx() {
            raw.push((base.of_gen[b], Vec::new()));
        }
    }
    if let Some(z) = base.zero {
        raw.push((z, Vec::new()));
    }
    let mut covers: HashSet<(usize, Vec<usize>)> = HashSet::new();
    for (s, u) in raw {
        for t in 0..base.len() {
            let mut v: Vec<usize> = u.iter().map(|&x| base.meet[x][t]).filter(|&x| Some(x) != base.zero).collect();
            v.sort();
            v.dedup();
            covers.insert((base.meet[s][t], v));
        }
    }
    let mut cs = ClosureSystem::new(base.len(), |a, b| base.leq[a][b]);
    let mut covers: Vec<_> = covers.into_iter().collect();
    covers.sort();
    for (s, u) in covers {
        cs.add_cover(s, &u);
    }
    closed_sets_object(
        ObjectKind::Frame,
        &cs,
        &|a, b| base.leq[a][b],
        &base.labels,
        base.zero,
        dom.elements().to_vec(),
        &base.of_gen,
        limit,
    )
}

fn single_gens(side: &[Meet], dom: &FiniteDomain) -> Result<Vec<usize>> {
    side.iter()
        .map(|m| match m.0.as_slice() {
            [g] => dom.index_of(g).ok_or_else(|| Error::ForeignGenerator(g.to_string())),
            [] => dom.top_idx().ok_or_else(|| Error::Shape("`1` needs a top generator".into())),
            _ => Err(Error::Shape(format!("meet {m} is not a generator"))),
        })
        .collect()
}

/// The sup-lattice presented by the generators qua poset.
pub fn eval_suplattice(p: &Presentation) -> Result<PresentedObject> {
    let prep = Prepared::new(p)?;
    let dom = &prep.domain;
    let n = dom.len();
    let mut cs = ClosureSystem::new(n, |a, b| dom.leq_idx(a, b));
    for (lhs, rhs) in prep.inequalities() {
        let u = single_gens(rhs, dom)?;
        for s in single_gens(lhs, dom)? {
            cs.add_cover(s, &u);
        }
    }
    let labels: Vec<String> = dom.elements().iter().map(|g| g.to_string()).collect();
    let ids: Vec<usize> = (0..n).collect();
    closed_sets_object(ObjectKind::SupLattice, &cs, &|a, b| dom.leq_idx(a, b), &labels, None, dom.elements().to_vec(), &ids, DEFAULT_LIMIT)
}

/// Least preorder containing `pairs` and `leq`, closed under `compat`.
fn congruence(n: usize, leq: impl Fn(usize, usize) -> bool, pairs: &[(usize, usize)], meet: Option<&[Vec<usize>]>) -> Vec<Vec<bool>> {
    let mut p: Vec<Vec<bool>> = (0..n).map(|a| (0..n).map(|b| leq(a, b)).collect()).collect();
    for &(a, b) in pairs {
        p[a][b] = true;
    }
    loop {
        for k in 0..n {
            for i in 0..n {
                if p[i][k] {
                    for j in 0..n {
                        if p[k][j] {
                            p[i][j] = true;
                        }
                    }
                }
            }
        }
        let mut changed = false;
        if let Some(m) = meet {
            for a in 0..n {
                for b in 0..n {
                    if a != b && p[a][b] {
                        for c in 0..n {
                            let (x, y) = (m[a][c], m[b][c]);
                            if !p[x][y] {
                                p[x][y] = true;
                                changed = true;
                            }
                        }
                    }
                }
            }
        }
        if !changed {
            return p;
        }
    }
}

fn collapse(kind: ObjectKind, pre: &[Vec<bool>], labels: &[String], generators: Vec<Gen>, gen_elem: &[usize]) -> Result<PresentedObject> {
    let n = pre.len();
    let mut class = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for a in 0..n {
        if class[a] == usize::MAX {
            let c = reps.len();
            reps.push(a);
            for b in a..n {
                if pre[a][b] && pre[b][a] {
                    class[b] = c;
                }
            }
        }
    }
    let names = reps.iter().map(|&r| labels[r].clone()).collect();
    let poset = FinitePoset::from_fn(names, |x, y| pre[reps[x]][reps[y]])?;
    let interp = gen_elem.iter().map(|&x| class[x]).collect();
    Ok(build(kind, poset, generators, interp))
}

/// The preframe presented by the generators qua poset: finite meets modulo
/// the least ∧-compatible preorder containing the relations. Right-hand
/// sides must have a greatest disjunct (a finite directed join).
pub fn eval_preframe(p: &Presentation) -> Result<PresentedObject> {
    let prep = Prepared::new(p)?;
    let dom = &prep.domain;
    let base = Base::new(dom, false)?;
    let mut pairs = Vec::new();
    for (lhs, rhs) in prep.inequalities() {
        let [m] = rhs else {
            return Err(Error::Shape(format!("right-hand side {} is not a directed join", Term::Join(rhs.to_vec()))));
        };
        let b = base.meet_of(m, dom)?;
        for l in lhs {
            pairs.push((base.meet_of(l, dom)?, b));
        }
    }
    let pre = congruence(base.len(), |a, b| base.leq[a][b], &pairs, Some(&base.meet));
    collapse(ObjectKind::Preframe, &pre, &base.labels, dom.elements().to_vec(), &base.of_gen)
}

/// The dcpo presented by the generators qua poset; relations must compare
/// generators with a greatest one.
pub fn eval_dcpo(p: &Presentation) -> Result<PresentedObject> {
    let prep = Prepared::new(p)?;
    let dom = &prep.domain;
    let mut pairs = Vec::new();
    for (lhs, rhs) in prep.inequalities() {
        let [_] = rhs else {
            return Err(Error::Shape(format!("right-hand side {} is not a directed join", Term::Join(rhs.to_vec()))));
        };
        let b = single_gens(rhs, dom)?[0];
        for a in single_gens(lhs, dom)? {
            pairs.push((a, b));
        }
    }
    let pre = congruence(dom.len(), |a, b| dom.leq_idx(a, b), &pairs, None);
    let labels: Vec<String> = dom.elements().iter().map(|g| g.to_string()).collect();
    let ids: Vec<usize> = (0..dom.len()).collect();
    collapse(ObjectKind::Dcpo, &pre, &labels, dom.elements().to_vec(), &ids)
}
