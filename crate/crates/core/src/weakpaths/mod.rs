//! Weak Berge paths and cycles, Pósa rotations and the constructive
//! machinery built on them.
//!
//! A weak path may reuse hyperedges, so every question about weak paths or
//! cycles of `H` is a question about paths or cycles of its shadow graph.
//! The search routines work on the shadow and lift their answers back to
//! hyperedges.

mod booster;
mod dlv;
mod obstruction;
mod path;
mod posa;
mod search;

pub use booster::{booster_edges, booster_lower_bound, BoosterError, BoosterSet};
pub use dlv::{default_window, dlv_long_path, dlv_long_path_split, DlvResult, Half, ProjectionGraph};
pub use obstruction::{spanning_obstruction, Obstruction};
pub use path::{walk_from_json, Edge, Violation, Walk, WalkJson, WeakCycle, WeakPath};
pub use posa::{posa_set, posa_set_with, saturated_posa_set, PosaSet};
pub use search::{default_budget, rotation_extension_search, SearchConfig, SearchOutcome, SearchReport};

#[cfg(test)]
mod tests;
