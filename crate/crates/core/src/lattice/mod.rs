//! Exact finite-lattice kernel: posets, downset frames, adjoints, map
//! classification and quotient operators.

mod adjoint;
mod iso;
#[allow(clippy::module_inception)]
mod lattice;
mod map;
pub(crate) mod operators;
mod poset;
mod report;

pub use adjoint::{classify_open, classify_proper, left_adjoint, right_adjoint};
pub use iso::{order_isomorphic, order_isomorphic_with, poset_isomorphism};
pub use lattice::{downsets, FiniteLattice, LatticeDoc};
pub use map::{MapDoc, MonotoneMap, Role};
pub use operators::{
    check_inequalities, check_quotient_operator, coequaliser_closure, coequaliser_interior, fixed_points, interior_from_pair,
    kleene_closure, prefixed_subframe, verify_closure, verify_interior, FixedPoints, QuotientMode,
};
pub use poset::{FinitePoset, PosetDoc};
pub use report::{Law, OperatorReport, Verdict, Witness};
