//! The presentation model: generators, relation schemas, domains.

pub mod domain;
pub mod expr;
pub mod gen;
pub mod normalize;
pub mod print;
pub mod relation;
pub mod term;

pub use domain::{Builtin, FiniteDomain, GeneratorDomain, Structure};
pub use expr::{CmpOp, Cond, Env, Expr, Sort, Sorts};
pub use gen::{Gen, NatOpen, Tag};
pub use normalize::{is_trivial, normalize_presentation, normalize_relation, normalize_term};
pub use print::Style;
pub use relation::{Presentation, PresentationKind, RelOp, Relation};
pub use term::{Binder, Family, Meet, Term};
pub mod instantiate;
pub mod kind;

pub use instantiate::{instantiate_bounded, instantiate_finitary, instantiate_schemas, instantiate_with_origins, Grid, GridMode};
pub use kind::{check_kind, saturate, CheckOptions, KindReport, RelationCheck, RelationVerdict, StabilityWitness};
