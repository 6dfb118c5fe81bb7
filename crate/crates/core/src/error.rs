use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid rational `{0}`")]
    ParseRational(String),

    #[error("invalid basket entry `{entry}`: {reason}")]
    ParseBasket { entry: String, reason: String },

    #[error("no local index: gcd({q}, {r}) != 1")]
    NoLocalIndex { q: i64, r: i64 },

    #[error("out of domain: {0}")]
    Domain(String),

    #[error("chi({t}L) = {value} is not a positive integer")]
    Inconsistent { t: i64, value: String },

    #[error(
        "torsion assignment space for basket [{basket}] has {size} elements, above the cap {cap}"
    )]
    TorsionCap {
        basket: String,
        size: u128,
        cap: u128,
    },

    #[error("weights {0:?} are not well-formed")]
    NotWellFormed([u64; 4]),

    #[error("invalid search configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
