//! Independent numerical eigensolvers used to check the closed forms.

mod polar;
mod shooting;

pub use polar::{solve_polar_numeric, PolarProblem, PolarSolution};
pub use shooting::{shoot_radial, solve_radial_numeric, Channel, RadialGrid, RadialProblem, RadialSolution, Shot};
