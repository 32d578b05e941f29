use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("spectral tail mass {tail_mass:e} above the aliasing threshold")]
    Aliasing { tail_mass: f64 },

    #[error("non-finite amplitude encountered ({context})")]
    NumericOverflow { context: String },

    #[error("boundary density {density:e} exceeds watchdog limit")]
    BoundaryLeak { density: f64 },

    #[error("degenerate distribution: {0}")]
    DegenerateDistribution(String),

    #[error("trajectory {index} left the grid interior at x = {x} (t = {t})")]
    DomainEscape { index: usize, x: f64, t: f64 },

    #[error("conditioning slice at y = {y} has vanishing norm {norm:e}")]
    NullSlice { y: f64, norm: f64 },

    #[error("collapse centred at z = {z} annihilates the state (norm {norm:e})")]
    CollapseToNull { z: f64, norm: f64 },

    #[error("resource limit: {0}")]
    ResourceLimit(String),

    #[error("integrator tolerance exceeded: trace drift {drift:e}")]
    IntegratorTolerance { drift: f64 },

    #[error("grid cannot resolve width {width:e} (spacing {dx:e})")]
    GridResolution { width: f64, dx: f64 },

    #[error("shear moves {lost_mass:e} of probability off the grid")]
    ShearOffGrid { lost_mass: f64 },

    #[error("at t = {t}: {source}")]
    AtTime {
        t: f64,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn at_time(self, t: f64) -> Self {
        match self {
            e @ Error::AtTime { .. } => e,
            e => Error::AtTime {
                t,
                source: Box::new(e),
            },
        }
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}
