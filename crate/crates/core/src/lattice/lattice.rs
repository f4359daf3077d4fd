use serde::{Deserialize, Serialize};

use super::poset::{FinitePoset, PosetDoc};
use crate::error::{Error, Result};

/// A finite lattice with precomputed meet and join tables.
///
/// Every finite lattice is complete. The `distributive` flag doubles as the
/// frame flag, since a finite distributive lattice is a frame.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteLattice {
    poset: FinitePoset,
    meet: Vec<usize>,
    join: Vec<usize>,
    bottom: usize,
    top: usize,
    distributive: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeDoc {
    #[serde(flatten)]
    pub poset: PosetDoc,
    pub frame: bool,
}

impl FiniteLattice {
    pub fn from_poset(poset: FinitePoset) -> Result<Self> {
        let n = poset.len();
        if n == 0 {
            return Err(Error::InvalidPoset("a lattice needs at least one element".into()));
        }
        let mut meet = vec![0; n * n];
        let mut join = vec![0; n * n];
        for i in 0..n {
            for j in i..n {
                let m =
                    bound(&poset, i, j, false).ok_or_else(|| Error::NotALattice(poset.label(i).into(), poset.label(j).into(), "meet"))?;
                let s =
                    bound(&poset, i, j, true).ok_or_else(|| Error::NotALattice(poset.label(i).into(), poset.label(j).into(), "join"))?;
                meet[i * n + j] = m;
                meet[j * n + i] = m;
                join[i * n + j] = s;
                join[j * n + i] = s;
            }
        }
        let bottom = (0..n)
            .find(|&b| (0..n).all(|x| poset.leq(b, x)))
            .ok_or_else(|| Error::NotALattice("(empty)".into(), "(empty)".into(), "bottom"))?;
        let top = (0..n)
            .find(|&t| (0..n).all(|x| poset.leq(x, t)))
            .ok_or_else(|| Error::NotALattice("(empty)".into(), "(empty)".into(), "top"))?;
        let mut lat = FiniteLattice { poset, meet, join, bottom, top, distributive: false };
        lat.distributive = lat.distributivity_witness().is_none();
        Ok(lat)
    }

    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.poset.leq(a, b)
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.len() + b]
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.len() + b]
    }

    pub fn meet_all(&self, xs: impl IntoIterator<Item = usize>) -> usize {
        xs.into_iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    pub fn join_all(&self, xs: impl IntoIterator<Item = usize>) -> usize {
        xs.into_iter().fold(self.bottom, |acc, x| self.join(acc, x))
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn label(&self, a: usize) -> &str {
        self.poset.label(a)
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.poset.index_of(label)
    }

    pub fn is_distributive(&self) -> bool {
        self.distributive
    }

    /// Finite lattices are frames exactly when they are distributive.
    pub fn is_frame(&self) -> bool {
        self.distributive
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.len()
    }

    /// A triple violating `a ∧ (b ∨ c) = (a ∧ b) ∨ (a ∧ c)`, if any.
    pub fn distributivity_witness(&self) -> Option<(usize, usize, usize)> {
        let n = self.len();
        for a in 0..n {
            for b in 0..n {
                for c in b + 1..n {
                    if self.meet(a, self.join(b, c)) != self.join(self.meet(a, b), self.meet(a, c)) {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    /// Height of each element above the bottom (longest chain length).
    pub fn ranks(&self) -> Vec<usize> {
        let n = self.len();
        let mut order: Vec<usize> = (0..n).collect();
        // a linear extension: sort by number of elements below
        let below: Vec<usize> = (0..n).map(|x| (0..n).filter(|&y| self.leq(y, x)).count()).collect();
        order.sort_by_key(|&x| below[x]);
        let mut rank = vec![0; n];
        for &x in &order {
            rank[x] = (0..n).filter(|&y| y != x && self.leq(y, x)).map(|y| rank[y] + 1).max().unwrap_or(0);
        }
        rank
    }

    pub fn to_doc(&self) -> LatticeDoc {
        LatticeDoc { poset: self.poset.to_doc(), frame: self.is_frame() }
    }

    pub fn from_doc(doc: &LatticeDoc) -> Result<Self> {
        Self::from_poset(FinitePoset::from_doc(&doc.poset)?)
    }

    /// The 2-element chain `0 < 1`.
    pub fn two() -> Self {
        Self::from_poset(FinitePoset::chain(&["0", "1"])).expect("chain")
    }

    pub fn chain(labels: &[&str]) -> Self {
        Self::from_poset(FinitePoset::chain(labels)).expect("chain")
    }

    /// Powerset of `n` atoms; elements are bitmasks, labelled `{a,b}` style.
    pub fn boolean(atoms: &[&str]) -> Self {
        let n = atoms.len();
        let labels: Vec<String> = (0..1usize << n)
            .map(|m| {
                let parts: Vec<&str> = (0..n).filter(|i| m >> i & 1 == 1).map(|i| atoms[i]).collect();
                format!("{{{}}}", parts.join(","))
            })
            .collect();
        Self::from_poset(FinitePoset::from_fn(labels, |i, j| i & j == i).expect("powerset")).expect("lattice")
    }
}

fn bound(p: &FinitePoset, i: usize, j: usize, upper: bool) -> Option<usize> {
    let n = p.len();
    let is_bound = |k: usize| if upper { p.leq(i, k) && p.leq(j, k) } else { p.leq(k, i) && p.leq(k, j) };
    let cands: Vec<usize> = (0..n).filter(|&k| is_bound(k)).collect();
    cands.iter().copied().find(|&k| cands.iter().all(|&c| if upper { p.leq(k, c) } else { p.leq(c, k) }))
}

/// The lattice of down-closed subsets of a finite poset, ordered by inclusion.
///
/// This is the free frame on a finite meet-semilattice, and its elements are
/// labelled by their maximal members, e.g. `{a,b}`.
pub fn downsets(p: &FinitePoset) -> FiniteLattice {
    let n = p.len();
    let mut sets: Vec<Vec<bool>> = Vec::new();
    let mut current = vec![false; n];
    enumerate_downsets(p, 0, &mut current, &mut sets);
    sets.sort_by_key(|s| (s.iter().filter(|&&b| b).count(), s.iter().map(|&b| !b).collect::<Vec<_>>()));
    let labels = sets
        .iter()
        .map(|s| {
            let maxes: Vec<&str> = (0..n).filter(|&i| s[i] && !(0..n).any(|j| j != i && s[j] && p.leq(i, j))).map(|i| p.label(i)).collect();
            format!("{{{}}}", maxes.join(","))
        })
        .collect();
    let poset = FinitePoset::from_fn(labels, |a, b| (0..n).all(|k| !sets[a][k] || sets[b][k])).expect("inclusion order");
    FiniteLattice::from_poset(poset).expect("downsets form a lattice")
}

fn enumerate_downsets(p: &FinitePoset, i: usize, cur: &mut Vec<bool>, out: &mut Vec<Vec<bool>>) {
    if i == p.len() {
        if p.is_downset(cur) {
            out.push(cur.clone());
        }
        return;
    }
    enumerate_downsets(p, i + 1, cur, out);
    // including i requires everything below it to be includable; checked at the leaf
    cur[i] = true;
    enumerate_downsets(p, i + 1, cur, out);
    cur[i] = false;
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn antichain_downsets_are_boolean() {
        let l = downsets(&FinitePoset::antichain(&["a", "b"]));
        assert_eq!(l.len(), 4);
        assert!(l.is_frame());
        // {a} and {b} are incomparable atoms
        let a = l.index_of("{a}").unwrap();
        let b = l.index_of("{b}").unwrap();
        assert_eq!(l.join(a, b), l.top());
        assert_eq!(l.meet(a, b), l.bottom());
    }

    #[test]
    fn chain_downsets() {
        let l = downsets(&FinitePoset::chain(&["a", "b"]));
        assert_eq!(l.len(), 3);
        assert_eq!(l.labels_in_order(), vec!["{}", "{a}", "{b}"]);
    }

    #[test]
    fn vee_poset_downsets() {
        // a < c, b < c
        let p = FinitePoset::from_pairs(vec!["a".into(), "b".into(), "c".into()], &[(0, 2), (1, 2)]).unwrap();
        let l = downsets(&p);
        // brute force: subsets of {a,b,c} closed downward
        let mut count = 0;
        for m in 0..8u32 {
            let s: Vec<bool> = (0..3).map(|i| m >> i & 1 == 1).collect();
            if p.is_downset(&s) {
                count += 1;
            }
        }
        assert_eq!(count, 5);
        assert_eq!(l.len(), 5);
        assert!(l.index_of("{a,b}").is_some());
        assert!(l.index_of("{c}").is_some());
    }

    #[test]
    fn pentagon_is_not_distributive() {
        // N5: 0 < a < b < 1, 0 < c < 1
        let p = FinitePoset::from_pairs(
            ["0", "a", "b", "c", "1"].iter().map(|s| s.to_string()).collect(),
            &[(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)],
        )
        .unwrap();
        let l = FiniteLattice::from_poset(p).unwrap();
        assert!(!l.is_frame());
    }

    #[test]
    fn non_lattice_rejected() {
        let p = FinitePoset::antichain(&["a", "b"]);
        assert!(matches!(FiniteLattice::from_poset(p), Err(Error::NotALattice(..))));
    }

    impl FiniteLattice {
        fn labels_in_order(&self) -> Vec<&str> {
            (0..self.len()).map(|i| self.label(i)).collect()
        }
    }
}
