use core::fmt;

/// Failures raised by the numerical routines.
#[derive(Clone, Debug, PartialEq)]
pub enum Error {
    /// `V''` negative, or `V'` not strictly increasing, at the reported abscissa.
    ConvexityViolation { x: f64 },
    /// The field does not grow at an unbounded end of its interval.
    NonConfining,
    /// Argument outside the domain of the routine.
    Domain { what: &'static str, value: f64 },
    /// Malformed input that is not tied to a single abscissa.
    InvalidInput(&'static str),
    /// An iteration failed to meet its tolerance.
    NoConvergence { what: &'static str, iterations: usize, residual: f64 },
    /// The endpoint iteration left the interior of the interval (hard edge).
    EndpointEscape { a: f64, b: f64 },
    /// Chebyshev tail check failed at the largest admissible degree.
    Resolution { tail: f64 },
    /// `G_V` is not bounded away from zero.
    Positivity { x: f64, value: f64 },
    /// Doubling the Stieltjes grid moved a recurrence coefficient.
    GridTooCoarse { index: usize, rel_change: f64 },
    /// The weight tail could not be truncated below threshold.
    Tail,
    /// A point falls into none of the kernel branches.
    RegimeGap { x: f64 },
    /// Two points lie in different kernel branches.
    MixedRegime { x: f64, y: f64 },
    /// Rescaled variable outside its admissible window.
    Range { what: &'static str, value: f64, limit: f64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ConvexityViolation { x } => write!(f, "convexity violated near x = {x}"),
            Error::NonConfining => write!(f, "potential is not confining on an unbounded interval"),
            Error::Domain { what, value } => write!(f, "{what}: argument {value} outside domain"),
            Error::InvalidInput(msg) => write!(f, "invalid input: {msg}"),
            Error::NoConvergence { what, iterations, residual } => {
                write!(f, "{what} did not converge after {iterations} iterations (residual {residual:e})")
            }
            Error::EndpointEscape { a, b } => {
                write!(f, "endpoint iterate ({a}, {b}) left the interior of the interval")
            }
            Error::Resolution { tail } => write!(f, "Chebyshev tail {tail:e} above resolution threshold"),
            Error::Positivity { x, value } => write!(f, "G_V({x}) = {value} is not positive"),
            Error::GridTooCoarse { index, rel_change } => {
                write!(f, "recurrence coefficient {index} moved by {rel_change:e} under grid doubling")
            }
            Error::Tail => write!(f, "weight tail truncation not achievable"),
            Error::RegimeGap { x } => write!(f, "x = {x} falls in no kernel branch"),
            Error::MixedRegime { x, y } => write!(f, "x = {x} and y = {y} lie in different branches"),
            Error::Range { what, value, limit } => write!(f, "{what} = {value} exceeds admissible limit {limit}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
