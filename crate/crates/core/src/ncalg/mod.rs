//! Noncommutative substrate: words, polynomials, presented *-algebras,
//! rewriting, confluence, tensors and generator-defined maps.

pub mod algebra;
pub mod confluence;
pub mod maps;
pub mod parse;
pub mod poly;
pub mod tensor;

pub use algebra::{Algebra, Generator, Rule};
pub use confluence::{check_confluence, check_star_closure, full_check, ConfluenceReport};
pub use maps::{Derivation, GenMap};
pub use parse::parse_expr;
pub use poly::{lenlex, Gen, NcPoly, Word};
pub use tensor::Tensor;
