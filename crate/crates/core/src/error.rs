//! Error type shared by all modules of the crate.

use num_complex::Complex64;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong in this crate.
///
/// Numerical failures carry enough state (best iterate, error estimate,
/// offending node) to be diagnosable without rerunning.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    /// An input contained a NaN or infinity.
    #[error("non-finite input in {context}")]
    NonFiniteInput { context: &'static str },

    /// An input violated a documented precondition.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Root iteration hit the iteration cap before meeting the step or
    /// residual criterion. `best` is the last iterate.
    #[error("root solver did not converge after {iterations} iterations (max residual {max_residual:.3e})")]
    RootsNotConverged {
        iterations: usize,
        max_residual: f64,
        best: Vec<Complex64>,
    },

    /// Domain validation: a hole's closure is not strictly inside the open
    /// outer disc.
    #[error("hole {index} is not strictly inside the outer disc (|c - c0| + r = {reach} >= R0 = {outer_radius})")]
    HoleNotInsideOuter {
        index: usize,
        reach: f64,
        outer_radius: f64,
    },

    /// Domain validation: two closed holes intersect.
    #[error("holes {first} and {second} are not disjoint (center distance {dist} <= radius sum {radius_sum})")]
    HolesNotDisjoint {
        first: usize,
        second: usize,
        dist: f64,
        radius_sum: f64,
    },

    /// Domain validation: a radius must be finite and positive.
    #[error("{which} radius must be finite and positive, got {value}")]
    BadRadius { which: String, value: f64 },

    /// The defining function has a pole at a hole center.
    #[error("defining function evaluated at hole center {z}")]
    PoleAtHoleCenter { z: Complex64 },

    /// An integrand produced a non-finite value at a quadrature node.
    #[error("integrand not finite at node {node} of curve {curve} (t = {point})")]
    IntegrandNotFinite {
        curve: usize,
        node: usize,
        point: Complex64,
    },

    /// Adaptive quadrature did not meet the tolerance before the node cap.
    #[error("quadrature did not converge: estimated error {est_error:.3e} at {nodes} nodes (tolerance {tolerance:.3e})")]
    QuadratureNotConverged {
        est_error: f64,
        nodes: usize,
        tolerance: f64,
    },

    /// A pole of the integrand sits too close to, or outside, the boundary.
    #[error("pole {pole} at boundary distance {dist:.3e} violates the guard distance {guard:.3e}")]
    PoleNearBoundary {
        pole: Complex64,
        dist: f64,
        guard: f64,
    },

    /// A residue computation would need a derivative order beyond the
    /// supported closed forms.
    #[error("residue order {order} exceeds the supported derivative order {max}")]
    UnsupportedOrder { order: usize, max: usize },

    /// A point left the declared domain of analyticity of a map.
    #[error("point {point} is outside the domain of analyticity ({what})")]
    NotAnalytic { point: Complex64, what: String },

    /// An argument-principle count over a disc did not match the declared
    /// multiplicity.
    #[error("disc {disc} around {center} counted {counted} roots, expected {expected}")]
    WrongDisc {
        disc: usize,
        center: Complex64,
        counted: i64,
        expected: usize,
    },

    /// A map fed to factor recovery does not send the diagonal into the
    /// diagonal within tolerance.
    #[error("map is not induced by a one-variable factor: diagonal residual {residual:.3e} exceeds {tolerance:.3e}")]
    NotInducedMap { residual: f64, tolerance: f64 },

    /// JSON (de)serialization failure, with the offending field in the message.
    #[error("parse error: {0}")]
    Parse(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

pub(crate) fn ensure_finite_c(z: Complex64, context: &'static str) -> Result<()> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(())
    } else {
        Err(Error::NonFiniteInput { context })
    }
}

pub(crate) fn ensure_finite_slice(zs: &[Complex64], context: &'static str) -> Result<()> {
    for &z in zs {
        ensure_finite_c(z, context)?;
    }
    Ok(())
}
