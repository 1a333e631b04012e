//! Exact analysis of bipartite multigraphs: maximum matching counts,
//! Hall-type structure, extremal constructions, lower bounds and exhaustive
//! verification of those bounds on small graphs.
//!
//! Graphs are [`Bigraph`]s with designated parts X (rows) and Y (columns);
//! parallel edges are distinct, so `Φ(G)` counts them with multiplicity.
//! The `parallel` feature (on by default) runs the sweeps in [`search`] on
//! a rayon pool; without it they run sequentially with identical output.

pub mod bounds;
pub mod constructions;
pub mod error;
pub mod graph;
pub mod matching;
pub mod normalize;
mod num_str;
pub mod search;
pub mod structure;

pub use bounds::{applicable_bounds, Bound, BoundEntry, BoundReport, THEOREM_IDS};
pub use constructions::{construct, Construction, Family};
pub use error::{Error, Result};
pub use graph::{Bigraph, GraphParams, InducedSubgraph, MAX_SIDE};
pub use matching::{
    count_containing_edge, count_max_matchings, count_max_matchings_oracle, count_max_matchings_small,
    count_x_matchings, max_matching_size, maximum_matching, permanent, phi, MatchCount, Matching,
};
pub use normalize::{merge_y, normalize_lemma22, Normalized, ShiftStep, Step};
pub use search::{
    canonical, check_extremal_structure, enumerate_class, find_min_phi, verify_theorem, verify_theorems,
    ClassConstraint, MinPhiReport, SearchOptions, VerifyReport,
};
pub use structure::{
    analyze, defect, diagnostics, hall_check, is_elementary, is_leafless, is_x_surplus, odd_ear_decomposition,
    tight_sets, validate_ear_decomposition, Diagnostics, EarDecomposition, StructureReport, Vertex,
};
