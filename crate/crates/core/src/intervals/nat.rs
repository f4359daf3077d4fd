//! ℕ with opens `∅ < ↓0 < ↓1 < … < ℕ`: the coinserter of the successor map
//! and the identity is the point, yet the map to the point is not proper.

use crate::lattice::{Law, OperatorReport, Witness};
use crate::presentation::NatOpen;

/// `s*(U) = {n | n+1 ∈ U}`.
pub fn successor_pullback(u: NatOpen) -> NatOpen {
    match u {
        NatOpen::DownTo(0) => NatOpen::Empty,
        NatOpen::DownTo(k) => NatOpen::DownTo(k - 1),
        other => other,
    }
}

/// `{u | u ≤ s*(u)}`. The ↓k are all excluded, since `s*(↓k)` is `∅` or
/// `↓(k-1)`, both strictly below `↓k`.
pub fn coinserter_carrier() -> Vec<NatOpen> {
    let excluded = |k: u64| successor_pullback(NatOpen::DownTo(k)) < NatOpen::DownTo(k);
    // the rule has two branches, k = 0 and k = j+1; one instance of each decides all k
    debug_assert!(excluded(0) && excluded(1) && excluded(u64::MAX));
    [NatOpen::Empty, NatOpen::All].into_iter().filter(|&u| u <= successor_pullback(u)).collect()
}

/// Right adjoint of `!*: {0,1} → O(ℕ)`: `!_*(u) = 1` iff `u = ℕ`.
pub fn upper_adjoint_to_point(u: NatOpen) -> bool {
    u == NatOpen::All
}

fn label(u: NatOpen) -> String {
    match u {
        NatOpen::Empty => "∅".into(),
        NatOpen::DownTo(k) => format!("↓{k}"),
        NatOpen::All => "ℕ".into(),
    }
}

/// Witness that the map from ℕ to the point is not semi-proper: the chain
/// `↓0 ≤ ↓1 ≤ …` has join `ℕ`, but `!_*` sends every member to `0` and the
/// join to `1`.
pub fn nat_reverse_counterexample() -> OperatorReport {
    let carrier = coinserter_carrier();
    let members: Vec<String> = (0..3).map(|k| label(NatOpen::DownTo(k))).collect();
    let all_zero = (0..64).all(|k| !upper_adjoint_to_point(NatOpen::DownTo(k)));
    let mut labels = vec![format!("{} ≤ …", members.join(" ≤ ")), format!("⋁ = {}", label(NatOpen::All))];
    if all_zero && upper_adjoint_to_point(NatOpen::All) {
        labels.push("!_*(↓k) = 0 for all k".into());
        labels.push("!_*(ℕ) = 1".into());
    }
    let carrier_labels: Vec<String> = carrier.iter().map(|&u| label(u)).collect();
    OperatorReport::from_witnesses(vec![Witness { law: Law::ScottContinuity, elements: Vec::new(), labels }])
        .with_note(format!("coinserter carrier: {{{}}}", carrier_labels.join(", ")))
        .with_note(format!("s*({}) = {}", label(NatOpen::DownTo(3)), label(successor_pullback(NatOpen::DownTo(3)))))
}
