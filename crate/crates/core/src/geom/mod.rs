//! Lattices, cones and polytope decompositions of the simplex `Delta`.

mod cone;
mod decomp;
mod flop;
mod hilbert;
mod lattice;
mod standard;
mod triangulate;

use thiserror::Error;

pub use cone::{Cone, Facet, Meet, Ray};
pub use decomp::{
    apply_permutation, canonical_coefficients, cell_multiplicity, delta_volume, euler_number,
    fmt_point, from_json, is_crepant, is_smooth, permute_point, refines, refines_unchecked,
    to_json, validate_cells, validate_decomposition, Cell, Decomposition, FanFile, Multiplicity,
    ValidationReport, FAN_SCHEMA,
};
pub use flop::{flop_graph, flop_graph_with, BoundaryRule, FlopGraph};
pub use hilbert::dual_monoid_generators;
pub use lattice::{
    center, in_delta, midpoint, u_point, unit, w_point, LatticeContext, LaurentMono, MAX_N, MIN_N,
};
pub(crate) use standard::named_cells;
pub use standard::{core_cell, core_volume, standard_decomposition, DecompositionName};
pub use triangulate::{
    core_orbit, core_part, enumerate_core_triangulations, enumerate_core_triangulations_with,
    is_dominated, unimodular_core_simplices, CoreFilter, Triangulation,
};

/// Integer rays and cone utilities, exposed for tests and benches.
pub mod cones {
    pub use super::cone::{det, dot, facets, integer_ray, meet, normal, rank, triangulate};
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeomError {
    #[error("n = {0} is outside the supported range 3..=5")]
    UnsupportedDimension(usize),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("the zero vector has no primitive multiple")]
    ZeroVector,
    #[error("integer overflow")]
    Overflow,
    #[error("point {0} is not in the simplex")]
    OutsideDelta(String),
    #[error("repeated vertex in cell")]
    RepeatedVertex,
    #[error("cell is not full-dimensional")]
    Degenerate,
    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(String),
    #[error("not a permutation: {0:?}")]
    BadPermutation(Vec<usize>),
    #[error("decomposition is not smooth and crepant")]
    NotSmoothCrepant,
    #[error("no decomposition {name} for n = {n}")]
    UnknownDecomposition { name: String, n: usize },
    #[error("malformed fan file: {0}")]
    Format(String),
    #[error("invalid triangulation: {0}")]
    InvalidTriangulation(String),
}
