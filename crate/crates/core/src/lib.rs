//! Dimension bounds for bivariate spline spaces on planar triangulations.
//!
//! The space `C^r_k(T)` of piecewise polynomials of degree at most `k` that
//! are `r` times differentiable across every interior edge of a triangulated
//! disk `T` has a dimension that depends on the exact positions of the
//! vertices. This crate computes the combinatorial lower and upper bounds
//! obtained from the homology of a chain complex of ideals of linear forms,
//! the classical bounds in Schumaker's form, and the exact dimension by rank
//! computation over the rationals, and it builds Powell-Sabin refinements.

pub mod bounds;
pub mod fixtures;
pub mod linalg;
pub mod mesh;
pub mod oracle;
pub mod ordering;
pub mod random;
pub mod rational;
pub mod refine;
pub mod report;

pub use bounds::{lower_bound_hom, upper_bound_hom, SplineSpace};
pub use mesh::{parse_triangulation, MeshData, MeshError, Point2, Triangulation};
pub use oracle::{homology_defect, spline_dimension};
pub use report::{BoundReport, ReportOptions};
