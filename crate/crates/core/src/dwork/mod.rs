//! The operator route: the Artin-Hasse series, the expansion of `E_f`, the
//! truncated Dwork operator and its characteristic series, and the
//! determinant criteria for ordinariness.

pub mod artin_hasse;
pub mod checks;
pub mod expansion;
pub mod matrix;

pub use artin_hasse::{artin_hasse, pi_of_t, rational_residue, ArtinHasse, PiOfT};
pub use checks::{
    char_series_check, compare_char_series, facial_criterion, ordinariness_determinants, residue_matrix,
    trace_check, verify_trace_formula, CutoffVerdict, DworkCaps, FaceVerdict, FacialReport, MinorReport,
    ResidueMatrix, TwoPathReport,
};
pub use expansion::{e_f_expansion, expand, EfExpansion};
pub use matrix::{
    char_series, det_one_minus_s, leading_minors, psi_a_matrix, psi_p_ef_matrix, trace_of_power, DworkMatrix,
    RhoRing,
};
