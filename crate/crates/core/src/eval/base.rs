//! The ∧-semilattice of finite meets of generators.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::presentation::print::{self, Style};
use crate::presentation::{FiniteDomain, Meet};

/// Finite meets of the generators of a finite domain, either using the
/// domain's own meets or freely (formal meets of antichains).
#[derive(Clone, Debug)]
pub struct Base {
    pub labels: Vec<String>,
    pub leq: Vec<Vec<bool>>,
    pub meet: Vec<Vec<usize>>,
    pub top: usize,
    /// the meet of generators with no common lower bound, if it occurs
    pub zero: Option<usize>,
    pub of_gen: Vec<usize>,
}

pub const BASE_LIMIT: usize = 4096;

impl Base {
    pub fn new(f: &FiniteDomain, use_domain_meets: bool) -> Result<Base> {
        if use_domain_meets && f.structure().meets {
            Self::from_domain(f)
        } else {
            Self::free(f)
        }
    }

    fn from_domain(f: &FiniteDomain) -> Result<Base> {
        let n = f.len();
        let top = f.top_idx().ok_or_else(|| Error::NotALattice("∅".into(), "∅".into(), "top"))?;
        let needs_zero = (0..n).any(|a| (0..n).any(|b| f.meet_idx(a, b) == Some(None)));
        let size = n + usize::from(needs_zero);
        let zero = needs_zero.then_some(n);
        let mut labels: Vec<String> = f.elements().iter().map(|g| print::gen(g, Style::Ascii)).collect();
        if needs_zero {
            labels.push("0".into());
        }
        let leq = (0..size).map(|a| (0..size).map(|b| Some(a) == zero || (a < n && b < n && f.leq_idx(a, b))).collect()).collect();
        let meet = (0..size)
            .map(|a| (0..size).map(|b| if a >= n || b >= n { n } else { f.meet_idx(a, b).flatten().unwrap_or(n) }).collect())
            .collect();
        Ok(Base { labels, leq, meet, top, zero, of_gen: (0..n).collect() })
    }

    fn free(f: &FiniteDomain) -> Result<Base> {
        let n = f.len();
        let minimal = |xs: Vec<usize>| -> Vec<usize> {
            let mut v: Vec<usize> = xs.iter().copied().filter(|&x| !xs.iter().any(|&y| y != x && f.leq_idx(y, x))).collect();
            v.sort();
            v.dedup();
            v
        };
        let mut elems: Vec<Vec<usize>> = vec![Vec::new()];
        elems.extend((0..n).map(|g| vec![g]));
        let mut index: HashMap<Vec<usize>, usize> = elems.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        let mut i = 0;
        while i < elems.len() {
            for j in 0..i {
                let mut u = elems[i].clone();
                u.extend(elems[j].iter().copied());
                let m = minimal(u);
                if !index.contains_key(&m) {
                    index.insert(m.clone(), elems.len());
                    elems.push(m);
                    if elems.len() > BASE_LIMIT {
                        return Err(Error::TooLarge(format!("more than {BASE_LIMIT} formal meets")));
                    }
                }
            }
            i += 1;
        }
        let size = elems.len();
        let leq_el = |x: &[usize], y: &[usize]| y.iter().all(|&b| x.iter().any(|&a| f.leq_idx(a, b)));
        let leq = (0..size).map(|a| (0..size).map(|b| leq_el(&elems[a], &elems[b])).collect()).collect();
        let meet = (0..size)
            .map(|a| {
                (0..size)
                    .map(|b| {
                        let mut u = elems[a].clone();
                        u.extend(elems[b].iter().copied());
                        index[&minimal(u)]
                    })
                    .collect()
            })
            .collect();
        let names: Vec<String> = f.elements().iter().map(|g| print::gen(g, Style::Ascii)).collect();
        let labels = elems
            .iter()
            .map(|e| if e.is_empty() { "1".to_string() } else { e.iter().map(|&g| names[g].clone()).collect::<Vec<_>>().join(" ^ ") })
            .collect();
        Ok(Base { labels, leq, meet, top: 0, zero: None, of_gen: (1..=n).collect() })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    /// The element for a meet of domain generators (`1` for the empty meet).
    pub fn meet_of(&self, m: &Meet, f: &FiniteDomain) -> Result<usize> {
        let mut acc = self.top;
        for g in &m.0 {
            let i = f.index_of(g).ok_or_else(|| Error::ForeignGenerator(g.to_string()))?;
            acc = self.meet[acc][self.of_gen[i]];
        }
        Ok(acc)
    }
}
