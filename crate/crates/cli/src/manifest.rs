use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use crate::error::CliError;

const FLAG_KEYS: [&str; 10] = [
    "dims", "samples", "seed", "workers", "q", "axis", "bins", "pairs", "max_dim", "out",
];

/// Flat string key/value record written next to each CSV.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RunManifest {
    entries: BTreeMap<String, String>,
}

impl RunManifest {
    pub fn new(subcommand: &str, seed: u64, workers: usize) -> Self {
        let mut m = Self::default();
        m.set("subcommand", subcommand);
        m.set("seed", seed);
        m.set("workers", workers);
        m.set("version", qentropy::VERSION);
        m
    }

    pub fn set(&mut self, key: &str, value: impl ToString) {
        self.entries.insert(key.to_string(), value.to_string());
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(String::as_str)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.entries).expect("string map serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let entries: BTreeMap<String, String> = serde_json::from_str(text)
            .map_err(|e| CliError::Usage(format!("malformed manifest: {e}")))?;
        Ok(Self { entries })
    }

    /// Command line that reproduces the run: the subcommand followed by every
    /// recorded flag.
    pub fn to_argv(&self) -> Vec<String> {
        let mut argv = vec!["qentropy".to_string()];
        if let Some(sub) = self.get("subcommand") {
            argv.push(sub.to_string());
        }
        for flag in FLAG_KEYS {
            if let Some(value) = self.get(flag) {
                argv.push(format!("--{}", flag.replace('_', "-")));
                argv.extend(value.split_whitespace().map(str::to_string));
            }
        }
        argv
    }

    pub fn path_for(csv: &Path) -> PathBuf {
        csv.with_extension("manifest.json")
    }

    pub fn write_next_to(&self, csv: &Path) -> Result<PathBuf, CliError> {
        let path = Self::path_for(csv);
        std::fs::write(&path, self.to_json() + "\n")?;
        Ok(path)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let mut m = RunManifest::new("global-vs-q", 7, 2);
        m.set("dims", "2 3");
        let back = RunManifest::from_json(&m.to_json()).unwrap();
        assert_eq!(back, m);
        assert_eq!(back.get("seed"), Some("7"));
        assert_eq!(
            back.to_argv(),
            [
                "qentropy",
                "global-vs-q",
                "--dims",
                "2",
                "3",
                "--seed",
                "7",
                "--workers",
                "2"
            ]
        );
        assert_eq!(
            RunManifest::path_for(Path::new("out/fig1.csv")),
            PathBuf::from("out/fig1.manifest.json")
        );
    }
}
