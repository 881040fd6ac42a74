//! A proof-checker kernel for a small Curry-style type theory with implicit
//! products, dependent intersections and an untyped equality, together with
//! a bundled development of zero-cost coercions between lists and vectors.

pub mod cli;
pub mod corpus;
pub mod erasure;
pub mod normalize;
pub mod signature;
pub mod syntax;
pub mod typecheck;
