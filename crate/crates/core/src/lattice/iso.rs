//! Order isomorphism search between finite posets, guided by rank and
//! up/down degree invariants.

use super::lattice::FiniteLattice;
use super::poset::FinitePoset;

type Profile = (usize, usize, usize);

fn profiles(p: &FinitePoset) -> Vec<Profile> {
    let n = p.len();
    let below: Vec<usize> = (0..n).map(|x| (0..n).filter(|&y| p.leq(y, x)).count()).collect();
    let above: Vec<usize> = (0..n).map(|x| (0..n).filter(|&y| p.leq(x, y)).count()).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&x| below[x]);
    let mut rank = vec![0; n];
    for &x in &order {
        rank[x] = (0..n).filter(|&y| y != x && p.leq(y, x)).map(|y| rank[y] + 1).max().unwrap_or(0);
    }
    (0..n).map(|x| (rank[x], below[x], above[x])).collect()
}

/// An order isomorphism `a → b` (as an index table), if one exists.
pub fn order_isomorphic(a: &FiniteLattice, b: &FiniteLattice) -> Option<Vec<usize>> {
    poset_isomorphism(a.poset(), b.poset(), &[])
}

/// Like [`order_isomorphic`] but the isomorphism must extend the given partial assignment.
pub fn order_isomorphic_with(a: &FiniteLattice, b: &FiniteLattice, seeds: &[(usize, usize)]) -> Option<Vec<usize>> {
    poset_isomorphism(a.poset(), b.poset(), seeds)
}

pub fn poset_isomorphism(a: &FinitePoset, b: &FinitePoset, seeds: &[(usize, usize)]) -> Option<Vec<usize>> {
    let n = a.len();
    if n != b.len() {
        return None;
    }
    let pa = profiles(a);
    let pb = profiles(b);
    let mut sa = pa.clone();
    let mut sb = pb.clone();
    sa.sort();
    sb.sort();
    if sa != sb {
        return None;
    }
    let mut assign: Vec<Option<usize>> = vec![None; n];
    let mut used = vec![false; n];
    for &(x, y) in seeds {
        if x >= n || y >= n || pa[x] != pb[y] {
            return None;
        }
        match assign[x] {
            Some(prev) if prev != y => return None,
            Some(_) => continue,
            None => {}
        }
        if used[y] {
            return None;
        }
        assign[x] = Some(y);
        used[y] = true;
    }
    // seeded pairs must be mutually consistent
    for &(x, y) in seeds {
        for &(x2, y2) in seeds {
            if a.leq(x, x2) != b.leq(y, y2) {
                return None;
            }
        }
    }
    // most constrained first: fewest candidates with the same profile
    let mut order: Vec<usize> = (0..n).filter(|&x| assign[x].is_none()).collect();
    order.sort_by_key(|&x| (pb.iter().filter(|&&p| p == pa[x]).count(), pa[x]));
    if search(a, b, &pa, &pb, &order, 0, &mut assign, &mut used) {
        Some(assign.into_iter().map(|x| x.expect("complete")).collect())
    } else {
        None
    }
}

#[allow(clippy::too_many_arguments)]
fn search(
    a: &FinitePoset,
    b: &FinitePoset,
    pa: &[Profile],
    pb: &[Profile],
    order: &[usize],
    k: usize,
    assign: &mut Vec<Option<usize>>,
    used: &mut Vec<bool>,
) -> bool {
    if k == order.len() {
        return true;
    }
    let x = order[k];
    for y in 0..b.len() {
        if used[y] || pb[y] != pa[x] {
            continue;
        }
        let consistent = (0..a.len()).all(|z| match assign[z] {
            Some(w) => a.leq(x, z) == b.leq(y, w) && a.leq(z, x) == b.leq(w, y),
            None => true,
        });
        if !consistent {
            continue;
        }
        assign[x] = Some(y);
        used[y] = true;
        if search(a, b, pa, pb, order, k + 1, assign, used) {
            return true;
        }
        assign[x] = None;
        used[y] = false;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn self_iso_is_identity_on_rigid_chain() {
        let c = FiniteLattice::chain(&["0", "a", "b", "1"]);
        assert_eq!(order_isomorphic(&c, &c).unwrap(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn boolean_vs_chain() {
        let b = FiniteLattice::boolean(&["a", "b"]);
        let c = FiniteLattice::chain(&["0", "x", "y", "1"]);
        assert!(order_isomorphic(&b, &c).is_none());
    }

    #[test]
    fn relabelled_lattice() {
        // 5-element lattice 0 < a, b < c < 1 under two labelings
        let l1 = FiniteLattice::from_poset(
            FinitePoset::from_pairs(
                ["0", "a", "b", "c", "1"].iter().map(|s| s.to_string()).collect(),
                &[(0, 1), (0, 2), (1, 3), (2, 3), (3, 4)],
            )
            .unwrap(),
        )
        .unwrap();
        let l2 = FiniteLattice::from_poset(
            FinitePoset::from_pairs(
                ["top", "j", "y", "x", "bot"].iter().map(|s| s.to_string()).collect(),
                &[(4, 3), (4, 2), (3, 1), (2, 1), (1, 0)],
            )
            .unwrap(),
        )
        .unwrap();
        let iso = order_isomorphic(&l1, &l2).unwrap();
        for x in 0..5 {
            for y in 0..5 {
                assert_eq!(l1.leq(x, y), l2.leq(iso[x], iso[y]));
            }
        }
        // pinning a ↦ y forces b ↦ x
        let pinned = order_isomorphic_with(&l1, &l2, &[(1, 2)]).unwrap();
        assert_eq!(pinned[2], 3);
        // inconsistent seeds are rejected
        assert!(order_isomorphic_with(&l1, &l2, &[(1, 2), (2, 2)]).is_none());
    }
}
