use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// A caller broke an operation precondition (dimensions, ranges, symmetry).
    #[error("contract violation: {0}")]
    Contract(String),

    /// A quantity that must be real came out with a large imaginary part.
    #[error("numerical integrity: {what} has imaginary residue {residue:e}")]
    NumericalIntegrity { what: String, residue: f64 },

    /// The state conditioned on a Bell outcome does not exist because the
    /// outcome has zero probability.
    #[error("conditional state undefined at p = {p}, alpha = {alpha}: outcome probability is zero")]
    UndefinedConditionalState { p: f64, alpha: f64 },
}

impl Error {
    pub(crate) fn contract(msg: impl Into<String>) -> Self {
        Error::Contract(msg.into())
    }
}
