use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("collision: the north pole of the sphere has no stereographic image")]
    Collision,
    #[error("polynomial is not linear in variable {var} (degree {degree})")]
    Degree { var: usize, degree: u32 },
    #[error("degenerate tangent frame: |g| = {norm:e}")]
    DegenerateFrame { norm: f64 },
    #[error("no sign change found along ray up to t = {t_max}")]
    RootBracket { t_max: f64 },
    #[error("derivative does not change sign on the bracket ({lo}, {hi})")]
    Bracket { lo: f64, hi: f64 },
    #[error("symbolic construction failed: {0}")]
    Construction(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
