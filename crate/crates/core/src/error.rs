use thiserror::Error;

/// Errors raised by the geometry engine.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    /// The point lies on a pole or axis excluded from the requested chart
    /// or chart overlap.
    #[error("chart domain violation: {0}")]
    ChartDomain(String),
    /// The scale factor is not positive at the requested time.
    #[error("scale factor domain violation: {0}")]
    ScaleDomain(String),
    /// A scale-factor specification could not be parsed.
    #[error("cannot parse scale factor: {0}")]
    Parse(String),
    /// A matrix is not a member of the group it is required to belong to.
    #[error("group membership violation: {0}")]
    Membership(String),
    /// The lift solve is numerically degenerate.
    #[error("ill-conditioned lift: {0}")]
    Conditioning(String),
    /// The caller combined objects that do not belong together, such as a
    /// frame evaluated at a point of a foreign chart.
    #[error("usage error: {0}")]
    Usage(String),
    /// Component representations do not match any frame class.
    #[error("classification error: {0}")]
    Classification(String),
    /// Spin-tensor shapes do not agree.
    #[error("shape mismatch: {0}")]
    Shape(String),
}
