//! Flat `key = value` configuration files.
//!
//! One key per line, `#` starts a comment, UTF-8, no sections or nesting.
//! Values merge under the command-line flags: a flag always wins, a config
//! value fills any flag left unset. Keys that no flag would accept are
//! rejected rather than ignored, as are duplicate keys.

use std::collections::BTreeMap;

use crate::run::CliError;

/// Parsed config entries, consumed key by key during merging.
#[derive(Debug, Default)]
pub struct ConfigMap {
    entries: BTreeMap<String, String>,
}

impl ConfigMap {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut entries = BTreeMap::new();
        for (line_index, raw_line) in text.lines().enumerate() {
            let line = match raw_line.find('#') {
                Some(at) => &raw_line[..at],
                None => raw_line,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                CliError::invalid(format!(
                    "config line {}: expected `key = value`, got `{raw_line}`",
                    line_index + 1
                ))
            })?;
            let key = key.trim().to_string();
            let value = value.trim().to_string();
            if key.is_empty() || value.is_empty() {
                return Err(CliError::invalid(format!(
                    "config line {}: empty key or value",
                    line_index + 1
                )));
            }
            if entries.insert(key.clone(), value).is_some() {
                return Err(CliError::invalid(format!(
                    "config line {}: duplicate key `{key}`",
                    line_index + 1
                )));
            }
        }
        Ok(Self { entries })
    }

    /// Removes and returns the raw value for `key`.
    pub fn take_raw(&mut self, key: &str) -> Option<String> {
        self.entries.remove(key)
    }

    /// Fills `slot` from the config when the flag left it unset. The key is
    /// consumed either way, so it cannot later count as unknown.
    pub fn fill<T: std::str::FromStr>(
        &mut self,
        key: &str,
        slot: &mut Option<T>,
    ) -> Result<(), CliError> {
        if let Some(raw) = self.take_raw(key) {
            if slot.is_none() {
                let parsed = raw.parse::<T>().map_err(|_| {
                    CliError::invalid(format!("config key `{key}`: cannot parse `{raw}`"))
                })?;
                *slot = Some(parsed);
            }
        }
        Ok(())
    }

    /// Merges a boolean: flag `true` wins, otherwise the config value.
    pub fn fill_flag(&mut self, key: &str, slot: &mut bool) -> Result<(), CliError> {
        if let Some(raw) = self.take_raw(key) {
            let value = match raw.as_str() {
                "true" => true,
                "false" => false,
                _ => {
                    return Err(CliError::invalid(format!(
                        "config key `{key}`: expected true or false, got `{raw}`"
                    )))
                }
            };
            *slot = *slot || value;
        }
        Ok(())
    }

    /// Errors if any key was never consumed by the active subcommand.
    pub fn reject_leftovers(self) -> Result<(), CliError> {
        if let Some(key) = self.entries.keys().next() {
            return Err(CliError::invalid(format!("unknown config key `{key}`")));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_comments_blanks_and_values() {
        let text = "# full-line comment\n\neta = 0.01   # trailing comment\nj = 3\n";
        let mut map = ConfigMap::parse(text).unwrap();
        assert_eq!(map.take_raw("eta").as_deref(), Some("0.01"));
        assert_eq!(map.take_raw("j").as_deref(), Some("3"));
        map.reject_leftovers().unwrap();
    }

    #[test]
    fn flags_win_over_config_values() {
        let mut map = ConfigMap::parse("eta = 0.5\n").unwrap();
        let mut slot = Some(0.25f64);
        map.fill("eta", &mut slot).unwrap();
        assert_eq!(slot, Some(0.25));

        let mut map = ConfigMap::parse("eta = 0.5\n").unwrap();
        let mut empty: Option<f64> = None;
        map.fill("eta", &mut empty).unwrap();
        assert_eq!(empty, Some(0.5));
    }

    #[test]
    fn rejects_malformed_lines_duplicates_and_leftovers() {
        assert!(ConfigMap::parse("just words\n").is_err());
        assert!(ConfigMap::parse("eta = 1\neta = 2\n").is_err());
        let map = ConfigMap::parse("mystery = 1\n").unwrap();
        let err = map.reject_leftovers().unwrap_err();
        assert!(err.message.contains("mystery"));
    }

    #[test]
    fn bad_parses_are_reported_with_the_key() {
        let mut map = ConfigMap::parse("points = lots\n").unwrap();
        let mut slot: Option<usize> = None;
        let err = map.fill("points", &mut slot).unwrap_err();
        assert!(err.message.contains("points"));
    }
}
