//! Complete-bipartite cover representations of semi-algebraic incidence graphs.
//!
//! A bipartite graph `G = (P, Q, E)` can be written as a (possibly overlapping)
//! union of complete bipartite blocks `A_i x B_i`. The cost of such a cover is
//! `sum(|A_i| + |B_i|)`. When the edges come from a geometric relation (points
//! against halfplanes, lines, disks, or general sign conditions on low-degree
//! polynomials) the cover can be built by recursively partitioning one side's
//! ambient space: every set that contains a whole cell yields one block, sets
//! that cross a cell are handled recursively, and points lying on the cuts are
//! handled in one dimension less.
//!
//! Modules:
//! - [`geometry`]: points, polynomials, set families and exact incidence.
//! - [`partition`]: quantile slab-grid partitions and cell classification.
//! - [`cover`]: the recursive cover construction, verification and merging.
//! - [`oracle`]: exact minimum cover cost for tiny graphs and a greedy baseline.
//! - [`extremal`]: envelope functions, forbidden-subgraph checks and fitting.
//! - [`hypergraph`]: the k-partite extension with grid partitions.
//! - [`generators`]: instance families for experiments.
//! - [`io`]: instance JSON documents.
//! - [`cli`]: the `bicover` command-line front end.

pub mod cli;
pub mod cover;
pub mod error;
pub mod extremal;
pub mod generators;
pub mod geometry;
pub mod hypergraph;
pub mod io;
pub mod oracle;
pub mod partition;

pub use cover::{
    base_case_cover, boundary_recursion, build_cover, merge_pass, stage1_cover, verify_cover,
    BicliqueCover, Block, BlockTag, CoverConfig, SideRule, VerificationReport,
};
pub use error::{Error, Result};
pub use geometry::{
    edge_set, eval_polynomial, incident, Formula, GeomSet, IncidenceInstance, Numeric, Point,
    Polynomial, SideView,
};
pub use partition::{build_partition, classify, crossing_stats, grid_partition, CellPartition, CellRelation};
