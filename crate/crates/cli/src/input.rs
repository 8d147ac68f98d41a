//! Reading quivers and seeds from command-line arguments.

use quiverlab::seed::SeedJson;
use quiverlab::QuiverSpec;
use serde_json::Value;

use crate::api::{ApiError, QuiverInput};

/// What an argument turned out to hold.
pub enum Input {
    Quiver(QuiverInput),
    Seed(SeedJson),
}

/// `@name`, inline JSON, or a path to a JSON file. An object with a
/// `quiver` field is read as a seed.
pub fn parse(arg: &str) -> Result<Input, ApiError> {
    if let Some(name) = arg.strip_prefix('@') {
        return Ok(Input::Quiver(QuiverInput::Name(name.to_string())));
    }
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg).map_err(|e| ApiError::malformed(format!("{arg}: {e}")))?
    };
    let value: Value = serde_json::from_str(&text).map_err(|e| ApiError::malformed(e.to_string()))?;
    let bad = |e: serde_json::Error| ApiError::malformed(e.to_string());
    if value.get("quiver").is_some() {
        Ok(Input::Seed(serde_json::from_value(value).map_err(bad)?))
    } else {
        Ok(Input::Quiver(QuiverInput::Spec(serde_json::from_value::<QuiverSpec>(value).map_err(bad)?)))
    }
}

/// Comma-separated 1-based letters, e.g. `1,2,1`.
pub fn word(arg: &str) -> Result<Vec<usize>, String> {
    arg.split(',').map(|s| s.trim().parse::<usize>().map_err(|e| format!("{s:?}: {e}"))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inline_seed_and_quiver() {
        assert!(matches!(parse(r#"{"n": 1}"#), Ok(Input::Quiver(_))));
        assert!(matches!(parse(r#"{"quiver": {"n": 1}}"#), Ok(Input::Seed(_))));
        assert!(matches!(parse("@a2"), Ok(Input::Quiver(QuiverInput::Name(n))) if n == "a2"));
        assert!(parse("/no/such/file.json").is_err());
    }

    #[test]
    fn words_are_comma_separated() {
        assert_eq!(word("3, 1,2"), Ok(vec![3, 1, 2]));
        assert!(word("1,x").is_err());
    }
}
