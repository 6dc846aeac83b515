//! Exact rational geometry: labelled vectors and matrices, fraction-free
//! rank, simple-cycle enumeration, cycle polytopes in vertex and constraint
//! form, the colour-forgetting projection, and an exact simplex for
//! membership and optimization questions.
//!
//! Every decision procedure here works over arbitrary-precision rationals;
//! answers are exact, never estimates.

pub mod cycles;
pub mod linalg;
pub mod lp;
pub mod polytope;

pub use cycles::{cycle_space_affine_dimension, for_each_simple_cycle, simple_cycles};
pub use linalg::{
    affine_dimension, incidence_matrix, rat_from_str, rat_to_string, EchelonBasis, Key, LabelSet,
    RatMatrix, RatVector, ToKey,
};
pub use lp::{feasible_point, maximize, LpOutcome};
pub use polytope::{
    cycle_polytope, cycle_vector, edge_label_set, h_representation, maximize_over,
    maximize_pattern_over_projection, membership, membership_in_projection,
    project_forget_colours, project_polytope, projected_cycle_dimension, HPolytope, VPolytope,
};

pub const DEFAULT_CYCLE_CAP: usize = 1_000_000;
