//! Error type shared by all modules.

/// Errors surfaced by the library.  Pipeline-level failures are wrapped in
/// [`Error::Stage`] so CLI users can localize which subsystem failed.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("KEY_DEGREE_MISMATCH: exponent key ({0},{1},{2}) does not sum to degree {3}")]
    KeyDegreeMismatch(u32, u32, u32, u32),
    #[error("NON_FINITE: operation produced a NaN or infinite component")]
    NonFinite,
    #[error("DEGENERATE_MINOR: Macaulay denominator minor singular in all variable orderings")]
    DegenerateMinor,
    #[error("TAU_NOT_UPPER_HALF: Im(tau) = {0} must be positive")]
    TauNotUpperHalf(f64),
    #[error("SLOW_CONVERGENCE: Im(tau) = {0} below 1e-3; normalize tau first")]
    SlowConvergence(f64),
    #[error("SINGULAR_CURVE: discriminant vanishes within tolerance")]
    SingularCurve,
    #[error("NONCONVERGENT_AGM: complex AGM did not converge in {0} iterations")]
    NonconvergentAgm(usize),
    #[error("POLE_AT_LATTICE_POINT: argument within pole guard distance of the lattice")]
    PoleAtLatticePoint,
    #[error("FLEX_EXTRACTION_FAILED: {0}")]
    FlexExtractionFailed(String),
    #[error("LINE_AT_INFINITY_MOVED: third row of the reduction is not (0,0,m33)")]
    LineAtInfinityMoved,
    #[error("POINT_NOT_ON_CURVE: d^2 != 4t^3 - g2 t - g3")]
    PointNotOnCurve,
    #[error("DEGENERATE_LINE: {0}")]
    DegenerateLine(String),
    #[error("ZERO_FORM: cannot fit a proportionality constant against the zero form")]
    ZeroForm,
    #[error("INTERNAL_CONSISTENCY: {0}")]
    Inconsistency(String),
    #[error("stage {stage}: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub fn at_stage(self, stage: &'static str) -> Error {
        Error::Stage {
            stage,
            source: Box::new(self),
        }
    }

    /// Machine-readable error code (the inner one for staged errors).
    pub fn code(&self) -> &'static str {
        match self {
            Error::KeyDegreeMismatch(..) => "KEY_DEGREE_MISMATCH",
            Error::NonFinite => "NON_FINITE",
            Error::DegenerateMinor => "DEGENERATE_MINOR",
            Error::TauNotUpperHalf(_) => "TAU_NOT_UPPER_HALF",
            Error::SlowConvergence(_) => "SLOW_CONVERGENCE",
            Error::SingularCurve => "SINGULAR_CURVE",
            Error::NonconvergentAgm(_) => "NONCONVERGENT_AGM",
            Error::PoleAtLatticePoint => "POLE_AT_LATTICE_POINT",
            Error::FlexExtractionFailed(_) => "FLEX_EXTRACTION_FAILED",
            Error::LineAtInfinityMoved => "LINE_AT_INFINITY_MOVED",
            Error::PointNotOnCurve => "POINT_NOT_ON_CURVE",
            Error::DegenerateLine(_) => "DEGENERATE_LINE",
            Error::ZeroForm => "ZERO_FORM",
            Error::Inconsistency(_) => "INTERNAL_CONSISTENCY",
            Error::Stage { source, .. } => source.code(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
