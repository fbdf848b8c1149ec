//! Numerical toolkit for toric momentum polytopes: exact polytope geometry
//! and integration, the weight family F_k and its Einstein-Hilbert type
//! functionals, weighted Futaki invariants, Newton continuation from the
//! extremal affine seed, and the Sasaki/Reeb cone pipeline that assembles
//! scalar-flat-cone weight data over products with large projective or
//! high-genus curve factors.

pub mod corpus;
pub mod error;
pub mod functionals;
pub mod numeric;
pub mod pipeline;
pub mod polytope;
pub mod rational;
pub mod solver;
pub mod verify;
pub mod weights;

pub use error::{Error, Result};
pub use functionals::{
    domain_margin, scal_v_oracle_1d, AnalyticWeight, ExtremalData, Functionals, NormalizedCoords,
    NumericWeight, SmoothWeight1d,
};
pub use pipeline::{
    cone_construct, k0_search, lambda_for, lambda_for_genus, report_sasaki_metadata, ConeConfig,
    ConeMode, K0Search, ReebSolution, SasakiReport, Sign,
};
pub use polytope::integrate::{
    integrate_boundary, integrate_boundary_exact, integrate_boundary_poly, integrate_interior,
    integrate_interior_exact, integrate_interior_poly, QuadratureSpec, Scheme,
};
pub use polytope::polynomial::Polynomial;
pub use polytope::{
    affine_range, mean_scalar, mean_scalar_exact, AffineFunction, Facet, LabelledPolytope, Vertex,
};
pub use rational::Rat;
pub use solver::{
    b_constraint, continuation, continuation_observed, critical_point, domain_guard, solve_b,
    solve_b_seeded, ContinuationPath, PathStep, SolveReport, SolverConfig,
};
pub use weights::{
    f_dt, f_k, sasaki_weight_pair, taylor_defect, ParamTag, WeightPair, WeightParams, A_SWITCH,
};
