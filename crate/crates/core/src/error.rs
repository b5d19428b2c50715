use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero scalar")]
    DivisionByZero,

    #[error("malformed rational string: {0}")]
    BadRational(String),

    #[error("ring elements belong to different groups")]
    GroupMismatch,

    #[error("representation {rep} does not accept this input: {detail}")]
    RepMismatch { rep: String, detail: String },

    #[error("operator windows or modes do not match: {0}")]
    WindowMismatch(String),

    #[error("exact-mode operation invoked on a float operator")]
    FloatModeRejected,

    #[error("input is not a projection (p = p* = p^2 fails)")]
    NotAProjection,

    #[error("input is not a unitary (u u* = u* u = 1 fails)")]
    NotAUnitary,

    #[error("pairing unstable: {0}")]
    Unstable(String),

    #[error("k = 0 is not a valid index for this cocycle family")]
    ZeroK,

    #[error("d must be antisymmetric: d[-n] = -d[n]")]
    NotAntisymmetric,

    #[error("input is not a trace (fails psi(xy) = psi(yx))")]
    NotATrace,

    #[error("coboundary solver residual is nonzero on the window")]
    NonzeroResidual,

    #[error("malformed input: {0}")]
    BadInput(String),
}
