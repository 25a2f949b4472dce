//! Random d-uniform hypergraphs and weak Berge Hamilton cycles.
//!
//! The crate is organized bottom-up:
//!
//! - [`hypercore`]: hypergraph representation, neighborhoods, components and
//!   the shadow-graph projection;
//! - [`randmodels`]: `H_d(n,p)`, `H_d(n,m)`, overlays, the edge process and
//!   sprinkling schedules;
//! - [`weakpaths`]: weak paths and cycles, Pósa rotations, booster edges,
//!   rotation-extension search and the split-and-bridge long-path builder;
//! - [`expansion`]: non-expanding sets, `u(H)` and the greedy edge-finding
//!   probe;
//! - [`oracle`]: exact answers at small `n`;
//! - [`harness`]: reproducible Monte Carlo experiments and their outputs.

pub mod error;
pub mod expansion;
pub mod harness;
pub mod hypercore;
pub mod oracle;
pub mod randmodels;
pub mod weakpaths;

pub use error::{Error, Result};
pub use hypercore::{Hypergraph, ShadowGraph, Vertex, VertexSet};
