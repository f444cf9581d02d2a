//! Decreasing monomial codes: constructions (Reed-Muller, polar,
//! RMxPolar, weight-ordered subcodes of the second-order code), exact
//! weight-distribution formulas, and the enumeration machinery that
//! cross-checks them (a brute-force codeword oracle and an explicit
//! affine-orbit enumerator).

pub mod codeword;
pub mod construct;
pub mod error;
pub mod monomial;
pub mod orbit;
pub mod verify;
pub mod weight_enum;

pub use codeword::{
    brute_force_wd, brute_force_wd_with_limit, evaluate, weight_class, CodeSpec,
    EvaluationVector, WeightDistribution, DEFAULT_BRUTE_LIMIT,
};
pub use construct::{
    beta_leq, blended_order, canonical_cmp, code_leq_w, construct_polar, construct_rm,
    construct_rmxpolar, construct_wmin_beta, poset_levels, wmin_leq, BetaSum, PosetLevel,
};
pub use error::{Error, Result};
pub use monomial::{
    alpha, decreasing_closure, row_bijection, row_index, Monomial, MonomialSet, Partition,
    MAX_VARS,
};
pub use orbit::{
    enumerate_orbit, measured_alpha, minkowski_sum_orbits, orbit_exponent, restricted_orbit,
    verify_disjointness, OrbitReport, ORBIT_LIMIT,
};
pub use verify::{run_suite, SuiteReport, SUITES};
pub use weight_enum::{
    complete_wd_rm2_subcode, count_2wmin_orbit_formula, count_min_weight, count_type_ii,
    dual_set, enumerate_type_ii_tuples, low_weight_spectrum, macwilliams_dual_wd,
    SpectrumEntry, TypeIITuple,
};
