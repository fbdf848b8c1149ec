//! Crate-wide error type.

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors produced by polytope construction, integration, functional
/// evaluation, and the continuation solver.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    /// Malformed input data (files, flags, parameter combinations).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A facet normal whose entries have a common factor.
    #[error("facet {facet}: normal {normal:?} is not primitive (gcd {gcd})")]
    NonPrimitiveNormal {
        facet: usize,
        normal: Vec<i64>,
        gcd: i64,
    },

    /// The half-space intersection has a recession direction.
    #[error("polytope is unbounded along direction {direction:?}")]
    UnboundedPolytope { direction: Vec<i64> },

    /// More than `dim` facets meet in a point.
    #[error("degenerate facet intersection at {point}: facets {facets:?} all active")]
    DegenerateFacetIntersection { point: String, facets: Vec<usize> },

    /// The half-space intersection has no vertex at all.
    #[error("polytope is empty: the facet inequalities admit no vertex")]
    EmptyPolytope,

    /// A facet inequality that touches no vertex of the polytope.
    #[error("facet {facet} supports no face of the polytope (redundant constraint)")]
    RedundantFacet { facet: usize },

    /// Successive quadrature refinements failed to agree.
    #[error("quadrature did not converge: estimate {estimate}, step difference {difference} > tolerance {tolerance}")]
    QuadratureNotConverged {
        estimate: f64,
        difference: f64,
        tolerance: f64,
    },

    /// The affine argument leaves the strip 0 < 1 + a l < 2.
    #[error("domain violation: 1 + a*l = {value} at vertex {vertex:?}")]
    DomainViolation { vertex: Vec<f64>, value: f64 },

    /// An affine function that should integrate to zero does not.
    #[error("affine function is not normalized: integral over the polytope is {integral}")]
    NonNormalizedInput { integral: f64 },

    /// The candidate Reeb affine function is not positive on the polytope.
    #[error("Reeb positivity violation: l = {value} at vertex {vertex:?}")]
    ReebPositivityViolation { vertex: Vec<f64>, value: f64 },

    /// The affine Gram system could not be solved.
    #[error("singular Gram system (integration failure on a polytope with nonempty interior)")]
    SingularGram,

    /// Invalid parameter combination for a functional or solver call.
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// Newton iteration exhausted its budget.
    #[error("Newton iteration diverged after {iterations} steps (gradient residual {residual})")]
    NewtonDiverged { iterations: usize, residual: f64 },

    /// Hessian too ill-conditioned to invert.
    #[error("Hessian is numerically singular (condition estimate {condition:.3e})")]
    HessianSingular { condition: f64 },

    /// Scalar root solve for the constant adjustment failed.
    #[error("b-solve diverged: constraint residual {residual} after {iterations} iterations")]
    BSolveDiverged { iterations: usize, residual: f64 },

    /// Path following could not reach the target even with step bisection.
    #[error("continuation stalled at (eps, a) = ({last_eps}, {last_a}) after {steps_completed} converged steps")]
    ContinuationStalled {
        last_eps: f64,
        last_a: f64,
        steps_completed: usize,
    },

    /// Finite-difference step shrank below the representable floor.
    #[error("finite-difference step underflow while keeping the domain guard positive")]
    FdStepUnderflow,
}

impl Error {
    /// True for errors caused by malformed input rather than numerics.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::InvalidInput(_)
                | Error::NonPrimitiveNormal { .. }
                | Error::UnboundedPolytope { .. }
                | Error::DegenerateFacetIntersection { .. }
                | Error::EmptyPolytope
                | Error::RedundantFacet { .. }
                | Error::InvalidParams(_)
        )
    }
}
