//! Orbits of projective states under multiplication by the handle element.

mod limits;
mod orbit;
mod state;

pub use limits::{limit_points_real, s_infinity, LimitAnalysis, LimitMethod, LimitPoint, SInfinity, SInfinityOptions};
pub use orbit::{
    approx_complexity, exact_complexity, finite_state_set, mat_vec_f64, trajectory, trajectory_matrix,
    ApproxComplexity, ComplexityResult, FiniteStates, Trajectory,
};
pub use state::{chordal, format_coords, normalize_f64, parse_state, ProjState};
