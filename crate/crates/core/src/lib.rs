//! Exact checkers for fuzzy sets, fuzzy topologies, fuzzy groups and fuzzy
//! Lie algebras, plus numeric checks for fuzzy manifolds.

pub mod error;
pub mod formats;
pub mod grade;
pub mod lie;
pub mod manifold;
pub mod groups;
pub mod maps;
pub mod sets;
pub mod topology;
pub mod verdict;

pub use error::Error;
pub use grade::Grade;
pub use sets::{Carrier, FuzzyPoint, FuzzySet};
pub use verdict::Verdict;
