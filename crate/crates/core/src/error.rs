use thiserror::Error;

#[derive(Debug, Error)]
pub enum GivensError {
    #[error("{what} = {value} is outside the domain {domain}")]
    Domain {
        what: &'static str,
        value: f64,
        domain: &'static str,
    },

    #[error("unknown {kind} `{name}`")]
    UnknownName { kind: &'static str, name: String },

    #[error("{0} is not a complex-arithmetic algorithm")]
    NotComplex(crate::givens::AlgorithmId),

    #[error("relative error undefined: reference {0} is zero")]
    ZeroReference(&'static str),

    #[error("invalid scenario: {0}")]
    Scenario(String),

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {source}")]
    Csv {
        path: String,
        #[source]
        source: csv::Error,
    },
}

pub type Result<T, E = GivensError> = std::result::Result<T, E>;
