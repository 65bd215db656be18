use thiserror::Error;

/// Everything that ends a run with exit code 3.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("invalid input in `{field}`: {message}")]
    Input { field: String, message: String },
    #[error("{context}: {source}")]
    Core {
        context: String,
        #[source]
        source: semidual_core::Error,
    },
}

impl CliError {
    pub fn input(field: impl Into<String>, message: impl Into<String>) -> Self {
        CliError::Input {
            field: field.into(),
            message: message.into(),
        }
    }

    pub fn core(context: impl Into<String>, source: semidual_core::Error) -> Self {
        CliError::Core {
            context: context.into(),
            source,
        }
    }
}
