//! Closed downsets of a finite preorder under a family of covers.

use std::collections::{HashMap, HashSet, VecDeque};

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

/// Downsets `D` of a finite order such that for every cover `(s, U)`,
/// `U ⊆ D` implies `s ∈ D`.
#[derive(Clone, Debug)]
pub struct ClosureSystem {
    n: usize,
    down: Vec<FixedBitSet>,
    covers: Vec<(usize, FixedBitSet)>,
    /// cover indices by element of `U`, to re-examine only what can fire
    watch: Vec<Vec<usize>>,
    empty_covers: Vec<usize>,
}

impl ClosureSystem {
    pub fn new(n: usize, leq: impl Fn(usize, usize) -> bool) -> Self {
        let down = (0..n)
            .map(|x| {
                let mut b = FixedBitSet::with_capacity(n);
                (0..n).filter(|&y| leq(y, x)).for_each(|y| b.insert(y));
                b
            })
            .collect();
        ClosureSystem { n, down, covers: Vec::new(), watch: vec![Vec::new(); n], empty_covers: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn add_cover(&mut self, s: usize, u: &[usize]) {
        let mut b = FixedBitSet::with_capacity(self.n);
        u.iter().for_each(|&x| b.insert(x));
        if b.contains(s) {
            return;
        }
        let k = self.covers.len();
        if u.is_empty() {
            self.empty_covers.push(k);
        }
        for x in b.ones() {
            self.watch[x].push(k);
        }
        self.covers.push((s, b));
    }

    pub fn cover_count(&self) -> usize {
        self.covers.len()
    }

    /// Least closed downset containing `seed`.
    pub fn close(&self, seed: &FixedBitSet) -> FixedBitSet {
        let mut d = FixedBitSet::with_capacity(self.n);
        let mut queue: VecDeque<usize> = VecDeque::new();
        let add = |x: usize, d: &mut FixedBitSet, queue: &mut VecDeque<usize>| {
            if !d.contains(x) {
                for y in self.down[x].ones() {
                    if !d.contains(y) {
                        d.insert(y);
                        queue.push_back(y);
                    }
                }
            }
        };
        for x in seed.ones() {
            add(x, &mut d, &mut queue);
        }
        for &k in &self.empty_covers {
            add(self.covers[k].0, &mut d, &mut queue);
        }
        while let Some(x) = queue.pop_front() {
            for &k in &self.watch[x] {
                let (s, u) = &self.covers[k];
                if !d.contains(*s) && u.is_subset(&d) {
                    add(*s, &mut d, &mut queue);
                }
            }
        }
        d
    }

    pub fn is_closed(&self, d: &FixedBitSet) -> bool {
        d.ones().all(|x| self.down[x].is_subset(d)) && self.covers.iter().all(|(s, u)| d.contains(*s) || !u.is_subset(d))
    }

    /// Every closed downset, starting from the least one. Fails with
    /// [`Error::TooLarge`] beyond `limit` elements.
    pub fn enumerate(&self, limit: usize) -> Result<Vec<FixedBitSet>> {
        let bottom = self.close(&FixedBitSet::with_capacity(self.n));
        let mut seen: HashSet<FixedBitSet> = HashSet::new();
        let mut out = vec![bottom.clone()];
        seen.insert(bottom);
        let mut i = 0;
        while i < out.len() {
            let d = out[i].clone();
            for x in 0..self.n {
                if d.contains(x) {
                    continue;
                }
                let mut seed = d.clone();
                seed.insert(x);
                let e = self.close(&seed);
                if seen.insert(e.clone()) {
                    out.push(e);
                    if out.len() > limit {
                        return Err(Error::TooLarge(format!("more than {limit} closed sets")));
                    }
                }
            }
            i += 1;
        }
        out.sort_by_key(|d| d.count_ones(..));
        Ok(out)
    }
}

/// Index lookup for a family of sets.
pub fn index_sets(sets: &[FixedBitSet]) -> HashMap<FixedBitSet, usize> {
    sets.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect()
}
