use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite partial order over labelled elements, stored as a full relation table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinitePoset {
    labels: Vec<String>,
    leq: Vec<Vec<bool>>,
}

/// Wire form: `{"elements": [...], "leq": [[i, j], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetDoc {
    pub elements: Vec<String>,
    pub leq: Vec<[usize; 2]>,
}

impl FinitePoset {
    /// Builds a poset from generating pairs `i <= j`; the reflexive-transitive
    /// closure is taken and antisymmetry checked.
    pub fn from_pairs(labels: Vec<String>, pairs: &[(usize, usize)]) -> Result<Self> {
        let n = labels.len();
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(i, j) in pairs {
            if i >= n || j >= n {
                return Err(Error::InvalidPoset(format!("index pair ({i}, {j}) out of range")));
            }
            leq[i][j] = true;
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
        Self::from_matrix(labels, leq)
    }

    /// Builds a poset from a complete relation table, validating every axiom.
    pub fn from_matrix(labels: Vec<String>, leq: Vec<Vec<bool>>) -> Result<Self> {
        let n = labels.len();
        let mut seen = HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::InvalidPoset(format!("duplicate label {l:?}")));
            }
        }
        if leq.len() != n || leq.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidPoset("relation table has wrong shape".into()));
        }
        for i in 0..n {
            if !leq[i][i] {
                return Err(Error::InvalidPoset(format!("not reflexive at {}", labels[i])));
            }
            for j in 0..n {
                if i != j && leq[i][j] && leq[j][i] {
                    return Err(Error::InvalidPoset(format!("not antisymmetric: {} and {}", labels[i], labels[j])));
                }
                if leq[i][j] {
                    for k in 0..n {
                        if leq[j][k] && !leq[i][k] {
                            return Err(Error::InvalidPoset(format!("not transitive: {} <= {} <= {}", labels[i], labels[j], labels[k])));
                        }
                    }
                }
            }
        }
        Ok(FinitePoset { labels, leq })
    }

    pub fn from_fn(labels: Vec<String>, leq: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let n = labels.len();
        let m = (0..n).map(|i| (0..n).map(|j| leq(i, j)).collect()).collect();
        Self::from_matrix(labels, m)
    }

    /// A chain `0 < 1 < ... < n-1` labelled by the given names.
    pub fn chain(labels: &[&str]) -> Self {
        let labels: Vec<String> = labels.iter().map(|s| s.to_string()).collect();
        Self::from_fn(labels, |i, j| i <= j).expect("chain is a poset")
    }

    pub fn antichain(labels: &[&str]) -> Self {
        let labels: Vec<String> = labels.iter().map(|s| s.to_string()).collect();
        Self::from_fn(labels, |i, j| i == j).expect("antichain is a poset")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i][j]
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn is_downset(&self, members: &[bool]) -> bool {
        (0..self.len()).all(|j| !members[j] || (0..self.len()).all(|i| !self.leq(i, j) || members[i]))
    }

    /// Strict predecessors in the Hasse diagram.
    pub fn lower_covers(&self, j: usize) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| i != j && self.leq(i, j) && !(0..self.len()).any(|k| k != i && k != j && self.leq(i, k) && self.leq(k, j)))
            .collect()
    }

    /// Restriction to a subset of indices (kept in the given order).
    pub fn restrict(&self, keep: &[usize]) -> FinitePoset {
        let labels = keep.iter().map(|&i| self.labels[i].clone()).collect();
        let leq = keep.iter().map(|&i| keep.iter().map(|&j| self.leq[i][j]).collect()).collect();
        FinitePoset { labels, leq }
    }

    pub fn to_doc(&self) -> PosetDoc {
        let mut leq = Vec::new();
        for i in 0..self.len() {
            for j in 0..self.len() {
                if self.leq[i][j] {
                    leq.push([i, j]);
                }
            }
        }
        PosetDoc { elements: self.labels.clone(), leq }
    }

    pub fn from_doc(doc: &PosetDoc) -> Result<Self> {
        let pairs: Vec<(usize, usize)> = doc.leq.iter().map(|p| (p[0], p[1])).collect();
        Self::from_pairs(doc.elements.clone(), &pairs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_of_generating_pairs() {
        let p = FinitePoset::from_pairs(vec!["a".into(), "b".into(), "c".into()], &[(0, 1), (1, 2)]).unwrap();
        assert!(p.leq(0, 2));
        assert!(!p.leq(2, 0));
    }

    #[test]
    fn cycles_are_rejected() {
        let err = FinitePoset::from_pairs(vec!["a".into(), "b".into()], &[(0, 1), (1, 0)]);
        assert!(matches!(err, Err(Error::InvalidPoset(_))));
    }

    #[test]
    fn duplicate_labels_rejected() {
        assert!(FinitePoset::from_pairs(vec!["a".into(), "a".into()], &[]).is_err());
    }

    #[test]
    fn doc_round_trip() {
        let p = FinitePoset::chain(&["0", "m", "1"]);
        let doc = p.to_doc();
        let json = serde_json::to_string(&doc).unwrap();
        let back: PosetDoc = serde_json::from_str(&json).unwrap();
        assert_eq!(FinitePoset::from_doc(&back).unwrap(), p);
    }
}
