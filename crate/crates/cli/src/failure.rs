use std::fmt;
use std::path::Path;

/// A command failure carrying its process exit code: 1 for I/O, 2 for
/// invalid input or parameters.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn io(path: &Path, err: impl fmt::Display) -> Self {
        Failure {
            code: 1,
            message: format!("{}: {err}", path.display()),
        }
    }

    pub fn validation(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<glyphrun::Error> for Failure {
    fn from(err: glyphrun::Error) -> Self {
        Failure {
            code: if err.is_validation() { 2 } else { 1 },
            message: err.to_string(),
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}
