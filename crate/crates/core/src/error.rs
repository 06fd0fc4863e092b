use thiserror::Error;

/// Errors shared across the numeric kernels.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("gamma function pole at s = {re}+{im}i (nonpositive integer)")]
    GammaPole { re: f64, im: f64 },

    #[error("series did not converge within {max_terms} terms (last |term/sum| = {last_ratio:.3e})")]
    SeriesNonConvergent { max_terms: usize, last_ratio: f64 },

    #[error("domain violation: {0}")]
    Domain(String),

    #[error("invalid control parameters: {0}")]
    InvalidControl(String),

    #[error("Mellin-Barnes contour placement failed: {0}")]
    ContourPlacement(String),

    #[error("Mellin-Barnes contour quadrature did not converge (reached {points} points)")]
    ContourNonConvergent { points: usize },

    #[error("pole on integration contour near s = {0}")]
    PoleOnContour(f64),

    #[error("unsupported Meijer-G parameter shape: {0}")]
    UnsupportedShape(String),

    #[error("series truncation insufficient: tail ratio {ratio:.4} at n = {n}")]
    TruncationInsufficient { ratio: f64, n: usize },

    #[error("constraint violation: {0}")]
    Constraint(String),

    #[error("quadrature did not converge: estimated error {err:.3e} for value {value:.3e}")]
    QuadratureNonConvergent { value: f64, err: f64 },

    #[error("grid too coarse: {0}")]
    GridTooCoarse(String),

    #[error("normalization underflow while building eigenfunction at step {0}")]
    NormalizationUnderflow(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
