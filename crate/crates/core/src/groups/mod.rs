//! Finite groups, fuzzy subgroups, actions and fuzzy topological groups.

mod action;
mod group;
mod subgroup;
mod topgroup;

pub use action::*;
pub use group::*;
pub use subgroup::*;
pub use topgroup::*;
