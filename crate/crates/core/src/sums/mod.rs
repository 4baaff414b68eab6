//! The direct route: torus sums, L- and C-functions, specialization at
//! `π_ψ`, Newton polygon reports, the congruence check and surveys.

pub mod functions;
pub mod report;
pub mod torus;

pub use functions::{
    c_from_l, c_function, congruence_modulus, l_from_c, l_function, l_function_euler, l_function_psi, s_f_psi,
    s_f_t, specialize, specialize_series, sums_up_to,
};
pub use report::*;
pub use torus::TraceTable;
