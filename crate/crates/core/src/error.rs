//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Invalid configuration or constructor arguments. Holds one message per
    /// detected problem so `validate` can report them all at once.
    #[error("invalid configuration:{}", format_issues(.0))]
    Config(Vec<String>),

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("contract violation: {0}")]
    Contract(String),

    /// Cholesky pivot failure; the index is a diagnostic for where the data
    /// stopped being consistent with a positive definite Gram matrix.
    #[error("matrix is not positive definite: pivot {index} = {value:.6e}")]
    NonSpdPivot { index: usize, value: f64 },

    #[error("eigendecomposition failed: {0}")]
    Eigen(String),

    #[error(
        "CFL violation: substep {step:.6e} exceeds the stable limit {limit:.6e}; \
         increase the substep count"
    )]
    Cfl { step: f64, limit: f64 },

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn config(msg: impl Into<String>) -> Self {
        Error::Config(vec![msg.into()])
    }

    /// True for errors a user fixes by editing the configuration, as opposed
    /// to numerical failures at run time. The CLI maps this to exit code 2.
    pub fn is_config(&self) -> bool {
        matches!(self, Error::Config(_))
    }
}

fn format_issues(issues: &[String]) -> String {
    issues
        .iter()
        .map(|s| format!("\n  - {s}"))
        .collect::<String>()
}

pub type Result<T> = std::result::Result<T, Error>;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_errors_are_itemized() {
        let err = Error::Config(vec!["first".into(), "second".into()]);
        let text = err.to_string();
        assert!(text.contains("- first"));
        assert!(text.contains("- second"));
        assert!(err.is_config());
        assert!(!Error::Contract("x".into()).is_config());
    }
}
