//! Presentations of quotients: from a presentation and the quotient's
//! operator on generators to a presentation of the quotient frame.

mod derive;
mod present;
mod spec;

pub use derive::{closure_for, derive_spec_from_coinserter, interior_for, spec_from_operator, Colimit, Derivation};
pub use present::{
    parent_hash, present, present_open, present_proper, present_semi_open, present_semi_proper, present_semi_triquotient,
    present_triquotient, required_kind, tag_for, Provenance, TransformedPresentation,
};
pub use spec::{match_pattern, ImageCase, ImageEntry, QuotientSpec, SchematicImage};

#[cfg(test)]
mod tests;
