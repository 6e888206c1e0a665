use std::fs;
use std::io::Read;

use serde::de::DeserializeOwned;
use symspace::json::{decode_word, SystemJson};
use symspace::rational::parse_rational;
use symspace::{Alphabet, LevelSystem, Rational, Symbol};

use crate::CliError;

/// Inline JSON when the argument starts with `{` or `[`, standard input for
/// `-`, a file path otherwise.
pub fn read_json<T: DeserializeOwned>(arg: &str) -> Result<T, CliError> {
    let trimmed = arg.trim_start();
    let text = if trimmed.starts_with('{') || trimmed.starts_with('[') {
        arg.to_string()
    } else if arg == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| CliError::Io(format!("stdin: {e}")))?;
        buf
    } else {
        fs::read_to_string(arg).map_err(|e| CliError::Io(format!("{arg}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| CliError::Json(format!("{arg}: {e}")))
}

pub fn system(alphabet: &str, system: Option<&str>) -> Result<LevelSystem, CliError> {
    match system {
        Some(arg) => Ok(read_json::<SystemJson>(arg)?.to_system()?),
        None => Ok(LevelSystem::homogeneous(Alphabet::from_compact(alphabet)?)),
    }
}

/// A command-line word such as `01`.
pub fn word(text: &str, system: &LevelSystem) -> Result<Vec<Symbol>, CliError> {
    Ok(decode_word(text, system)?)
}

pub fn rational(text: &str) -> Result<Rational, CliError> {
    Ok(parse_rational(text)?)
}
