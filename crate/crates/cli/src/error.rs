use std::fmt;

use qdistill_core::format::InputError;

#[derive(Debug)]
pub enum CliError {
    /// Unusable input: unreadable or malformed files, invalid states, bad flags.
    Input(String),
    /// The numerics failed on valid input.
    Numerical(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Numerical(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(msg) => write!(f, "input error: {msg}"),
            CliError::Numerical(msg) => write!(f, "numerical failure: {msg}"),
        }
    }
}

impl From<qdistill_core::Error> for CliError {
    fn from(e: qdistill_core::Error) -> Self {
        if e.is_numerical() {
            CliError::Numerical(e.to_string())
        } else {
            CliError::Input(e.to_string())
        }
    }
}

impl From<InputError> for CliError {
    fn from(e: InputError) -> Self {
        match e {
            InputError::Invalid(inner) => inner.into(),
            parse => CliError::Input(parse.to_string()),
        }
    }
}
