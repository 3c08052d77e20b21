//! Plain-text configuration files for the command-line tools.
//!
//! The format is line oriented: one `key = value` pair per line, full-line
//! `#` comments, blank lines ignored. Every key is optional. Unknown and
//! duplicate keys are errors, so a typo cannot silently fall back to a
//! default, and all errors carry the offending line number.
//!
//! ```text
//! # derivation parameters
//! lcg_a = 1664525
//! lcg_c = 1013904223
//! lcg_m = 4294967296
//! lcg_seed = 2272
//! population = 10
//! width = 128
//! generations = 10
//! locus = lcg          # or fixed:<n>
//! selection = off
//!
//! # operational settings
//! key = 00112233445566778899aabbccddeeff
//! store = /var/lib/mec/registry.mec
//! endpoint = 127.0.0.1:7100
//! ```

use crate::idea::Key128;
use crate::keygen::LocusPolicy;
use std::path::{Path, PathBuf};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("config line {line}: {reason}")]
    Invalid { line: usize, reason: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Settings read from a configuration file. `None` means the key was not
/// present; defaults are the caller's business.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Config {
    pub lcg_a: Option<u64>,
    pub lcg_c: Option<u64>,
    pub lcg_m: Option<u64>,
    pub lcg_seed: Option<u64>,
    pub population: Option<usize>,
    pub width: Option<u32>,
    pub generations: Option<u32>,
    pub locus: Option<LocusPolicy>,
    pub selection: Option<bool>,
    pub key: Option<Key128>,
    pub store: Option<PathBuf>,
    pub endpoint: Option<String>,
}

impl Config {
    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut config = Config::default();
        let mut seen: Vec<&str> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let invalid = |reason: String| ConfigError::Invalid {
                line: line_no,
                reason,
            };
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| invalid("expected key = value".to_owned()))?;
            let (key, value) = (key.trim(), value.trim());
            if seen.contains(&key) {
                return Err(invalid(format!("duplicate key {key:?}")));
            }
            seen.push(key);
            match key {
                "lcg_a" => config.lcg_a = Some(parse_int(key, value).map_err(invalid)?),
                "lcg_c" => config.lcg_c = Some(parse_int(key, value).map_err(invalid)?),
                "lcg_m" => config.lcg_m = Some(parse_int(key, value).map_err(invalid)?),
                "lcg_seed" => config.lcg_seed = Some(parse_int(key, value).map_err(invalid)?),
                "population" => config.population = Some(parse_int(key, value).map_err(invalid)?),
                "width" => config.width = Some(parse_int(key, value).map_err(invalid)?),
                "generations" => {
                    config.generations = Some(parse_int(key, value).map_err(invalid)?)
                }
                "locus" => config.locus = Some(parse_locus(value).map_err(invalid)?),
                "selection" => config.selection = Some(parse_toggle(value).map_err(invalid)?),
                "key" => {
                    let parsed = Key128::from_hex(value)
                        .map_err(|e| invalid(format!("key: {e}")))?;
                    config.key = Some(parsed);
                }
                "store" => config.store = Some(PathBuf::from(value)),
                "endpoint" => config.endpoint = Some(value.to_owned()),
                other => return Err(invalid(format!("unknown key {other:?}"))),
            }
        }
        Ok(config)
    }
}

fn parse_int<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, String> {
    value
        .parse()
        .map_err(|_| format!("{key} wants an unsigned integer, got {value:?}"))
}

fn parse_locus(value: &str) -> Result<LocusPolicy, String> {
    if value == "lcg" {
        return Ok(LocusPolicy::LcgDriven);
    }
    if let Some(n) = value.strip_prefix("fixed:") {
        let locus: u32 = n
            .parse()
            .map_err(|_| format!("fixed locus wants an integer, got {n:?}"))?;
        return Ok(LocusPolicy::Fixed(locus));
    }
    Err(format!("locus must be \"lcg\" or \"fixed:<n>\", got {value:?}"))
}

fn parse_toggle(value: &str) -> Result<bool, String> {
    match value {
        "on" => Ok(true),
        "off" => Ok(false),
        other => Err(format!("selection must be \"on\" or \"off\", got {other:?}")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line_of(err: ConfigError) -> usize {
        match err {
            ConfigError::Invalid { line, .. } => line,
            ConfigError::Io(e) => panic!("unexpected io error: {e}"),
        }
    }

    #[test]
    fn full_example_parses() {
        let text = "\
# derivation
lcg_a = 3
lcg_c = 49184
lcg_m = 65536
lcg_seed = 2272
population = 10
width = 13
generations = 2
locus = fixed:4
selection = off

key = 00112233445566778899aabbccddeeff
store = /tmp/registry.mec
endpoint = 127.0.0.1:7100
";
        let config = Config::parse(text).unwrap();
        assert_eq!(config.lcg_a, Some(3));
        assert_eq!(config.lcg_c, Some(49184));
        assert_eq!(config.lcg_m, Some(65536));
        assert_eq!(config.lcg_seed, Some(2272));
        assert_eq!(config.population, Some(10));
        assert_eq!(config.width, Some(13));
        assert_eq!(config.generations, Some(2));
        assert_eq!(config.locus, Some(LocusPolicy::Fixed(4)));
        assert_eq!(config.selection, Some(false));
        assert_eq!(
            config.key.unwrap().to_hex(),
            "00112233445566778899aabbccddeeff"
        );
        assert_eq!(config.store, Some(PathBuf::from("/tmp/registry.mec")));
        assert_eq!(config.endpoint.as_deref(), Some("127.0.0.1:7100"));
    }

    #[test]
    fn empty_and_comment_only_text_gives_defaults() {
        assert_eq!(Config::parse("").unwrap(), Config::default());
        assert_eq!(
            Config::parse("# nothing here\n\n   \n# more\n").unwrap(),
            Config::default()
        );
    }

    #[test]
    fn whitespace_around_keys_and_values_is_ignored() {
        let config = Config::parse("  population   =   42  \n").unwrap();
        assert_eq!(config.population, Some(42));
    }

    #[test]
    fn locus_forms() {
        assert_eq!(
            Config::parse("locus = lcg").unwrap().locus,
            Some(LocusPolicy::LcgDriven)
        );
        assert_eq!(
            Config::parse("locus = fixed:7").unwrap().locus,
            Some(LocusPolicy::Fixed(7))
        );
        assert!(Config::parse("locus = random").is_err());
        assert!(Config::parse("locus = fixed:x").is_err());
    }

    #[test]
    fn selection_forms() {
        assert_eq!(Config::parse("selection = on").unwrap().selection, Some(true));
        assert_eq!(Config::parse("selection = off").unwrap().selection, Some(false));
        assert!(Config::parse("selection = yes").is_err());
    }

    #[test]
    fn errors_carry_line_numbers() {
        assert_eq!(line_of(Config::parse("width 13").unwrap_err()), 1);
        assert_eq!(
            line_of(Config::parse("# fine\n\nwidth = potato\n").unwrap_err()),
            3
        );
        assert_eq!(
            line_of(Config::parse("width = 13\nmystery = 1\n").unwrap_err()),
            2
        );
        assert_eq!(
            line_of(Config::parse("key = 00112233445566778899aabbccddeeff\nwidth = 1\nkey = 00112233445566778899aabbccddeeff\n").unwrap_err()),
            3
        );
        assert_eq!(line_of(Config::parse("key = abcd").unwrap_err()), 1);
    }

    #[test]
    fn numbers_must_fit_their_types() {
        assert!(Config::parse("width = 4294967296").is_err());
        assert!(Config::parse("lcg_m = 18446744073709551616").is_err());
        assert!(Config::parse("generations = -1").is_err());
    }

    #[test]
    fn load_reads_from_disk() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("mec.conf");
        std::fs::write(&path, "endpoint = 10.0.0.1:9\n").unwrap();
        let config = Config::load(&path).unwrap();
        assert_eq!(config.endpoint.as_deref(), Some("10.0.0.1:9"));
        assert!(Config::load(&dir.path().join("absent.conf")).is_err());
    }
}
