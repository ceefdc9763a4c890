use thiserror::Error;

/// Failure modes of the simulator library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("photon number {requested} exceeds truncation {truncation}")]
    Truncation { requested: usize, truncation: usize },

    #[error("{name} = {value} is outside its valid range {range}")]
    Domain {
        name: &'static str,
        value: f64,
        range: &'static str,
    },

    #[error("visibility undefined: {0}")]
    UndefinedVisibility(&'static str),

    #[error("{0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain<T>(name: &'static str, value: f64, range: &'static str) -> Result<T> {
    Err(Error::Domain { name, value, range })
}
