use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("zero quaternion has no inverse")]
    ZeroQuaternion,
    #[error("lattice basis is degenerate")]
    DegenerateLattice,
    #[error("beta0 = {0} is not a point of the dual lattice")]
    Beta0NotInDualLattice(num_complex::Complex64),
    #[error("beta0 must be nonzero")]
    ZeroBeta0,
    #[error("frequency {0} is not admissible for this torus")]
    FrequencyNotAdmissible(num_complex::Complex64),
    #[error("all Fourier coefficients vanish")]
    AllZeroCoefficients,
    #[error("branch point at z = {0} (g vanishes)")]
    BranchPoint(num_complex::Complex64),
    #[error("lambda must be nonzero")]
    ZeroLambda,
    #[error("mu must be nonzero")]
    ZeroMu,
    #[error("multiplier has no holomorphic sections")]
    EmptyKey,
    #[error("expected {expected} section coefficients, got {got}")]
    CoefficientCount { expected: usize, got: usize },
    #[error("frequency index {index} out of range ({len} frequencies)")]
    FrequencyIndex { index: usize, len: usize },
    #[error("angle {0} does not give an admissible frequency")]
    AngleNotAdmissible(f64),
    #[error("tau vanishes at z = {0}")]
    ZeroTau(num_complex::Complex64),
    #[error("Darboux transform is not monochromatic")]
    NotMonochromatic,
    #[error("section vanishes at z = {0}")]
    ZeroSection(num_complex::Complex64),
    #[error("section is not holomorphic at z = {0}: x and y prolongations disagree")]
    NotHolomorphic(num_complex::Complex64),
    #[error("Darboux transform is the point at infinity")]
    TransformAtInfinity,
    #[error("polychromatic denominator vanishes at z = {0}")]
    SingularDenominator(num_complex::Complex64),
    #[error("grid must be at least 2x2, got {0}x{1}")]
    InvalidGrid(usize, usize),
    #[error("config line {line}: {msg}")]
    Config { line: usize, msg: String },
    #[error("config: {0}")]
    ConfigInvalid(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
