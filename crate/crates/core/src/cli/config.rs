//! Flat `key = value` run configuration.
//!
//! One setting per line, `#` starts a comment, blank lines are ignored.
//! Keys are the long flag names with `-` replaced by `_`. Values written by
//! [`Settings::render`] parse back to the same settings.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

pub const KEYS: &[&str] = &[
    "command",
    "seed",
    "out",
    "pair_budget",
    "quiet",
    "model",
    "n",
    "m_attach",
    "gamma",
    "input",
    "scheme",
    "schemes",
    "sizes",
    "s",
    "cap",
    "alpha",
    "k",
    "artifacts",
];

#[derive(Debug, PartialEq, Eq)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Settings {
    values: BTreeMap<String, String>,
}

impl Settings {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut s = Settings::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((k, v)) = line.split_once('=') else {
                return Err(ConfigError(format!("config line {}: expected `key = value`", i + 1)));
            };
            let (k, v) = (k.trim(), v.trim());
            if !KEYS.contains(&k) {
                return Err(ConfigError(format!("config line {}: unknown key {k:?}", i + 1)));
            }
            if s.values.insert(k.to_string(), v.to_string()).is_some() {
                return Err(ConfigError(format!("config line {}: duplicate key {k:?}", i + 1)));
            }
        }
        Ok(s)
    }

    pub fn set(&mut self, key: &str, value: impl ToString) {
        debug_assert!(KEYS.contains(&key), "{key}");
        self.values.insert(key.to_string(), value.to_string());
    }

    pub fn set_opt<T: ToString>(&mut self, key: &str, value: Option<T>) {
        if let Some(v) = value {
            self.set(key, v);
        }
    }

    /// `other` wins on every key it holds.
    pub fn overlay(&mut self, other: &Settings) {
        for (k, v) in &other.values {
            self.values.insert(k.clone(), v.clone());
        }
    }

    pub fn raw(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    pub fn get<T: FromStr>(&self, key: &str) -> Result<Option<T>, ConfigError>
    where
        T::Err: fmt::Display,
    {
        match self.values.get(key) {
            None => Ok(None),
            Some(v) => v
                .parse()
                .map(Some)
                .map_err(|e| ConfigError(format!("invalid value {v:?} for {}: {e}", flag(key)))),
        }
    }

    pub fn require<T: FromStr>(&self, key: &str) -> Result<T, ConfigError>
    where
        T::Err: fmt::Display,
    {
        self.get(key)?
            .ok_or_else(|| ConfigError(format!("missing required {}", flag(key))))
    }

    pub fn list<T: FromStr>(&self, key: &str) -> Result<Option<Vec<T>>, ConfigError>
    where
        T::Err: fmt::Display,
    {
        let Some(v) = self.values.get(key) else {
            return Ok(None);
        };
        v.split(',')
            .map(str::trim)
            .filter(|x| !x.is_empty())
            .map(|x| {
                x.parse()
                    .map_err(|e| ConfigError(format!("invalid item {x:?} in {}: {e}", flag(key))))
            })
            .collect::<Result<Vec<T>, _>>()
            .map(Some)
    }

    pub fn flag_set(&self, key: &str) -> Result<bool, ConfigError> {
        Ok(self.get::<bool>(key)?.unwrap_or(false))
    }

    /// Only the given keys, in the order of [`KEYS`].
    pub fn restricted(&self, keys: &[&str]) -> Settings {
        Settings {
            values: self
                .values
                .iter()
                .filter(|(k, _)| keys.contains(&k.as_str()))
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
        }
    }

    pub fn render(&self) -> String {
        let mut out = String::from("# croute resolved run configuration\n");
        for k in KEYS {
            if let Some(v) = self.values.get(*k) {
                out.push_str(&format!("{k} = {v}\n"));
            }
        }
        out
    }
}

fn flag(key: &str) -> String {
    format!("--{}", key.replace('_', "-"))
}
