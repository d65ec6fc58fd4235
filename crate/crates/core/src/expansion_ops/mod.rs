//! Flat-surface operators and the Taylor expansions of `H(η)`, `M(η)`, `S(η)`, `T(η)` in `η`.

mod operators;
mod taylor;

pub use operators::{HodgeArgument, LKind, LinearOps, VectorArgument};
pub use taylor::{Arity, Expansion, TaylorSeries};
