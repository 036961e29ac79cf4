//! The once-punctured torus: the Farey graph as its curve graph, annular
//! projections, markings, the distance formula and orbit coboundedness.

pub mod axis;
pub mod farey;
pub mod formula;
pub mod marking;
pub mod projection;
pub mod slope;

pub use axis::{axis_family, fit_ball_projection, AxisFamily, BallProjectionFit};
pub use farey::{farey_adjacent, farey_distance, farey_geodesic, separating_slopes, FareyBox};
pub use formula::{distance_formula_rhs, fit_comparison_constant, orbit_projection_bound, FormulaRhs, OrbitBound};
pub use marking::{marking_distance, marking_neighbors, shadow, Marking, MarkingBall, MarkingDistance};
pub use projection::{annular_projection_distance, marking_annular_distance, AnnularDistance, Annulus};
pub use slope::{MappingClassMatrix, Slope};
