//! The homological operator, the normal-form space `N`, the per-weight solver and the
//! normalisation loop.

mod normalize;
mod nspace;
mod solver;

pub use normalize::{chain_data, normalize, NFReport, NormalizeParams};
pub use nspace::{extract_distinguished, is_constrained, is_in_normal_form, project_to_n, validate_distinguished};
pub use solver::{constrained_kernel_dimension, homological_l, kernel_dimension, solve_weight, Comp, SolveOptions, WeightSolution};
