//! Laplace problems on polygons by lightning least squares, and conformal maps
//! onto the disk built from them.

mod conformal;
mod polygon;
mod solve;

pub use conformal::{conformal_checks, conformal_map, ConformalMap, ConformalReport};
pub use polygon::{make_polygon, CornerDomain};
pub use solve::{
    boundary_grid, corner_poles, default_poly_degree, eval_analytic, eval_harmonic, refine_check,
    solve_laplace, solve_laplace_per_corner, BoundaryPoint, LaplaceSolution,
    BOUNDARY_SAMPLES_PER_POLE, MID_SIDE_SAMPLES,
};
