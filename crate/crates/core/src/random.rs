//! Seeded generators for randomized suites: finite presentations of each
//! kind, finite frames, and endomaps of finite frames.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::lattice::{downsets, FiniteLattice, FinitePoset, MonotoneMap};
use crate::presentation::{saturate, FiniteDomain, Gen, GeneratorDomain, Meet, Presentation, PresentationKind, RelOp, Relation, Term};

pub type SuiteRng = ChaCha8Rng;

pub const DEFAULT_SEED: u64 = 20_240_601;

/// Overridden by `LOCALE_FORGE_SEED`.
pub fn default_seed() -> u64 {
    std::env::var("LOCALE_FORGE_SEED").ok().and_then(|s| s.trim().parse().ok()).unwrap_or(DEFAULT_SEED)
}

pub fn seeded(seed: u64) -> SuiteRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Independent stream for instance `index` of a suite.
pub fn instance_rng(seed: u64, index: u64) -> SuiteRng {
    let mut r = seeded(seed);
    r.set_stream(index);
    r
}

const UNIVERSE: u32 = 4;

/// A family of at most `max` subsets of a 4-point set, closed under the
/// finite operations the kind needs: ∩ (with the whole set) for `Sup`,
/// ∪ (with ∅) for `PreFrm`, both for `Dcpo`.
fn set_family(rng: &mut SuiteRng, kind: PresentationKind, max: usize) -> Vec<u32> {
    let (inter, union) = match kind {
        PresentationKind::Sup => (true, false),
        PresentationKind::PreFrm => (false, true),
        _ => (true, true),
    };
    loop {
        let seeds = rng.gen_range(2..=4);
        let mut fam: Vec<u32> = (0..seeds).map(|_| rng.gen_range(0..(1 << UNIVERSE))).collect();
        if inter {
            fam.push((1 << UNIVERSE) - 1);
        }
        if union {
            fam.push(0);
        }
        fam.sort_unstable();
        fam.dedup();
        let mut grew = true;
        while grew && fam.len() <= max {
            grew = false;
            for i in 0..fam.len() {
                for j in 0..fam.len() {
                    for c in [inter.then(|| fam[i] & fam[j]), union.then(|| fam[i] | fam[j])].into_iter().flatten() {
                        if !fam.contains(&c) {
                            fam.push(c);
                            grew = true;
                        }
                    }
                }
            }
        }
        fam.sort_unstable();
        if !grew && (2..=max).contains(&fam.len()) {
            return fam;
        }
    }
}

/// A finite generator domain of at most 5 elements with the structure
/// `kind` needs.
pub fn random_domain(rng: &mut SuiteRng, kind: PresentationKind) -> Result<FiniteDomain> {
    let fam = set_family(rng, kind, 5);
    let gens: Vec<Gen> = (0..fam.len()).map(|i| Gen::named(&format!("g{i}"))).collect();
    let mut pairs = Vec::new();
    for (i, a) in fam.iter().enumerate() {
        for (j, b) in fam.iter().enumerate() {
            if i != j && a & b == *a {
                pairs.push((i, j));
            }
        }
    }
    let (meets, joins) = match kind {
        PresentationKind::Sup => (true, false),
        PresentationKind::PreFrm => (false, true),
        _ => (true, true),
    };
    FiniteDomain::new(gens, &pairs, meets, joins, false)
}

fn random_side(rng: &mut SuiteRng, gens: &[Gen], kind: PresentationKind, directed: bool) -> Term {
    let pick = |rng: &mut SuiteRng| gens.choose(rng).expect("nonempty domain").clone();
    match kind {
        // directed joins of generators: on a finite domain, single generators
        PresentationKind::Dcpo => Term::gen(pick(rng)),
        PresentationKind::Sup => {
            let k = rng.gen_range(0..=2);
            Term::join_of((0..k).map(|_| pick(rng)).collect())
        }
        // a directed join of meets: nonempty, and a single meet suffices
        _ => {
            let k = if directed { 1 } else { rng.gen_range(1..=2) };
            Term::Join(
                (0..k)
                    .map(|_| {
                        let w = rng.gen_range(1..=2);
                        Meet((0..w).map(|_| pick(rng)).collect())
                    })
                    .collect(),
            )
        }
    }
}

/// A random presentation of `kind` over at most 5 generators, with at most
/// 4 seed relations, closed under the stabilisation the kind requires.
pub fn random_presentation(rng: &mut SuiteRng, kind: PresentationKind) -> Result<Presentation> {
    let dom = random_domain(rng, kind)?;
    let gens = dom.elements().to_vec();
    let count = rng.gen_range(0..=4);
    let relations = (0..count)
        .map(|_| {
            let eq = rng.gen_bool(0.5);
            let lhs = random_side(rng, &gens, kind, eq);
            let rhs = random_side(rng, &gens, kind, true);
            if eq {
                Relation { op: RelOp::Eq, ..Relation::le(lhs, rhs) }
            } else {
                Relation::le(lhs, rhs)
            }
        })
        .collect();
    saturate(&Presentation::new(kind, GeneratorDomain::Finite(dom), relations), kind)
}

/// Downsets of a random poset on at most `points` elements (at most
/// `2^points` opens).
pub fn random_frame(rng: &mut SuiteRng, points: usize) -> Arc<FiniteLattice> {
    let n = rng.gen_range(1..=points);
    let labels: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    let density = rng.gen_range(0.0..0.6);
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(density) {
                pairs.push((i, j));
            }
        }
    }
    let poset = FinitePoset::from_pairs(labels, &pairs).expect("pairs go upward");
    Arc::new(downsets(&poset))
}

fn covers(l: &FiniteLattice, x: usize, up: bool) -> usize {
    let below = |a: usize, b: usize| a != b && l.leq(a, b);
    l.elements()
        .filter(|&y| {
            let (a, b) = if up { (x, y) } else { (y, x) };
            below(a, b) && !l.elements().any(|z| below(a, z) && below(z, b))
        })
        .count()
}

/// Mostly a value not on the same side of `x` as `toward`, so that the
/// closure (or interior) built from it moves `x`.
fn random_value(rng: &mut SuiteRng, l: &FiniteLattice, x: usize, toward: usize) -> usize {
    let moving: Vec<usize> = l.elements().filter(|&y| if toward == l.bottom() { !l.leq(y, x) } else { !l.leq(x, y) }).collect();
    if moving.is_empty() || rng.gen_bool(0.3) {
        return if rng.gen_bool(0.5) { x } else { toward };
    }
    *moving.choose(rng).expect("nonempty")
}

/// A random endomap preserving all joins, fixed by its values on the join
/// irreducibles. Requires a distributive lattice.
pub fn random_join_endo(rng: &mut SuiteRng, l: &Arc<FiniteLattice>) -> MonotoneMap {
    let irr: Vec<usize> = l.elements().filter(|&x| covers(l, x, false) == 1).collect();
    let mut v: Vec<usize> = vec![l.bottom(); l.len()];
    for &j in &irr {
        v[j] = random_value(rng, l, j, l.bottom());
    }
    // make the values monotone on the irreducibles
    let on_irr: Vec<usize> = irr.iter().map(|&j| l.join_all(irr.iter().filter(|&&k| l.leq(k, j)).map(|&k| v[k]))).collect();
    MonotoneMap::from_fn(l.clone(), l.clone(), |x| l.join_all(irr.iter().zip(&on_irr).filter(|(&j, _)| l.leq(j, x)).map(|(_, &y)| y)))
        .expect("join extension is monotone")
}

/// Dual of [`random_join_endo`]: preserves all meets.
pub fn random_meet_endo(rng: &mut SuiteRng, l: &Arc<FiniteLattice>) -> MonotoneMap {
    let irr: Vec<usize> = l.elements().filter(|&x| covers(l, x, true) == 1).collect();
    let mut v: Vec<usize> = vec![l.top(); l.len()];
    for &m in &irr {
        v[m] = random_value(rng, l, m, l.top());
    }
    let on_irr: Vec<usize> = irr.iter().map(|&m| l.meet_all(irr.iter().filter(|&&k| l.leq(m, k)).map(|&k| v[k]))).collect();
    MonotoneMap::from_fn(l.clone(), l.clone(), |x| l.meet_all(irr.iter().zip(&on_irr).filter(|(&m, _)| l.leq(x, m)).map(|(_, &y)| y)))
        .expect("meet extension is monotone")
}

/// `⋀ₙ mⁿ`: the largest interior operator below `id ∧ m`, for a
/// meet-preserving `m`.
pub fn interior_below(m: &MonotoneMap) -> Result<MonotoneMap> {
    let l = m.source().clone();
    let mut c: Vec<usize> = l.elements().collect();
    loop {
        let next: Vec<usize> = l.elements().map(|a| l.meet(a, m.apply(c[a]))).collect();
        if next == c {
            break;
        }
        c = next;
    }
    MonotoneMap::new(l.clone(), l, c)
}
