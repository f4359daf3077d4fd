//! Grounding relation schemas on a finite grid of rationals.

use num_traits::Signed;

use super::domain::GeneratorDomain;
use super::expr::{Env, Sort};
use super::gen::Gen;
use super::normalize::{is_trivial, normalize_relation, same_relation};
use super::relation::{Presentation, Relation};
use super::term::{Binder, Family, Meet, Term};
use crate::error::{Error, Result};
use crate::rational::{Endpoint, Rat};

/// How to treat families over rational parameters, whose finite
/// truncations are degenerate (`⦅0,1⦆ = ⊔{⦅p',q'⦆ | 0 < p' < q' < 1}` on a
/// grid with no interior points makes `⦅0,1⦆ = 0`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum GridMode {
    /// expand everything over the grid
    #[default]
    Full,
    /// drop relations containing families over rational binders, and
    /// drop members of the remaining families that leave the grid
    Finitary,
    /// as `Finitary`, and parameters take finite grid values only
    Bounded,
}

/// Parameter values on a grid, by sort.
#[derive(Clone, Debug)]
pub struct Grid {
    pub points: Vec<Rat>,
    /// integer parameters range over `-int_bound ..= int_bound`
    pub int_bound: i64,
    /// no infinite endpoints
    pub bounded: bool,
}

impl Grid {
    pub fn new(points: &[Rat]) -> Result<Grid> {
        if points.is_empty() {
            return Err(Error::Domain("the sample grid is empty".into()));
        }
        let mut points = points.to_vec();
        points.sort();
        points.dedup();
        // shifts beyond twice the grid's extent cannot make bounded intervals meet
        let m = points.iter().map(|r| r.abs().ceil().to_integer()).max().unwrap_or(0);
        Ok(Grid { points, int_bound: 2 * m + 2, bounded: false })
    }

    pub fn values(&self, s: Sort) -> Vec<Endpoint> {
        let fin = self.points.iter().map(|r| Endpoint::Fin(*r));
        match s {
            Sort::Lower if !self.bounded => std::iter::once(Endpoint::NegInf).chain(fin).collect(),
            Sort::Upper if !self.bounded => fin.chain(std::iter::once(Endpoint::PosInf)).collect(),
            Sort::Lower | Sort::Upper => fin.collect(),
            Sort::Rat => fin.collect(),
            Sort::Unit => fin.filter(|e| *e >= Endpoint::zero() && *e <= Endpoint::int(1)).collect(),
            Sort::Int => (-self.int_bound..=self.int_bound).map(Endpoint::int).collect(),
        }
    }

    /// Every assignment of grid values to the binders.
    pub fn assignments(&self, binders: &[Binder], base: &Env) -> Vec<Env> {
        let mut out = vec![base.clone()];
        for b in binders {
            let vals = self.values(b.sort);
            out = out
                .into_iter()
                .flat_map(|e| {
                    vals.iter().map(move |v| {
                        let mut e = e.clone();
                        e.insert(b.name.clone(), *v);
                        e
                    })
                })
                .collect();
        }
        out
    }
}

impl Grid {
    fn contains(&self, e: Endpoint) -> bool {
        match e {
            Endpoint::Fin(r) => self.points.binary_search(&r).is_ok(),
            _ => !self.bounded,
        }
    }

    /// Whether all endpoints of a concrete generator lie on the grid.
    fn on_grid(&self, g: &Gen) -> bool {
        g.untagged().endpoints().is_none_or(|(p, q)| self.contains(p) && self.contains(q))
    }
}

fn expand_term(t: &Term, env: &Env, grid: &Grid, mode: GridMode) -> Result<Term> {
    match t {
        Term::Join(_) => Ok(t.subst(env)),
        Term::Family(f) => {
            let mut ms = Vec::new();
            for e in grid.assignments(&f.binders, env) {
                if f.cond.eval(&e)? {
                    let m = Meet(f.body.0.iter().map(|g| g.subst(&e)).collect());
                    // finitary truncation confines shifted members to the grid
                    if mode != GridMode::Full && !m.0.iter().all(|g| grid.on_grid(g)) {
                        continue;
                    }
                    ms.push(m);
                }
            }
            Ok(Term::Join(ms))
        }
    }
}

fn has_rational_family(t: &Term) -> bool {
    matches!(t, Term::Family(Family { binders, .. }) if binders.iter().any(|b| b.sort != Sort::Int))
}

/// Instantiates every schema and family on the grid and restricts the
/// domain to the generators that occur (closed under its operations).
/// Returns the index of the originating relation for each output relation.
pub fn instantiate_with_origins(p: &Presentation, points: &[Rat], mode: GridMode) -> Result<(Presentation, Vec<usize>)> {
    let mut grid = Grid::new(points)?;
    grid.bounded = mode == GridMode::Bounded;
    let mut raw: Vec<(Relation, usize)> = Vec::new();
    for (k, r) in p.relations.iter().enumerate() {
        if mode != GridMode::Full && (has_rational_family(&r.lhs) || has_rational_family(&r.rhs)) {
            continue;
        }
        for env in grid.assignments(&r.params, &Env::new()) {
            if !r.cond.eval(&env)? {
                continue;
            }
            let lhs = expand_term(&r.lhs, &env, &grid, mode)?;
            let rhs = expand_term(&r.rhs, &env, &grid, mode)?;
            let inst = Relation::eq(lhs, rhs);
            raw.push((Relation { op: r.op, ..inst }, k));
        }
    }
    // normalise against the symbolic domain first so that e.g. empty
    // intervals disappear before restricting
    let mut gens: Vec<Gen> = Vec::new();
    let mut staged = Vec::new();
    for (r, k) in raw {
        let n = normalize_relation(&r, &p.domain)?;
        n.lhs.for_each_gen(&mut |g| gens.push(g.clone()));
        n.rhs.for_each_gen(&mut |g| gens.push(g.clone()));
        staged.push((n, k));
    }
    let domain = GeneratorDomain::Finite(p.domain.restrict(&gens)?);
    let mut rels: Vec<Relation> = Vec::new();
    let mut origins = Vec::new();
    for (r, k) in staged {
        let n = normalize_relation(&r, &domain)?;
        if is_trivial(&n, &domain) || rels.iter().any(|s| same_relation(s, &n)) {
            continue;
        }
        rels.push(n);
        origins.push(k);
    }
    Ok((Presentation { kind: p.kind, domain, relations: rels }, origins))
}

pub fn instantiate_schemas(p: &Presentation, points: &[Rat]) -> Result<Presentation> {
    Ok(instantiate_with_origins(p, points, GridMode::Full)?.0)
}

pub fn instantiate_finitary(p: &Presentation, points: &[Rat]) -> Result<Presentation> {
    Ok(instantiate_with_origins(p, points, GridMode::Finitary)?.0)
}

pub fn instantiate_bounded(p: &Presentation, points: &[Rat]) -> Result<Presentation> {
    Ok(instantiate_with_origins(p, points, GridMode::Bounded)?.0)
}
