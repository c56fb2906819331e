//! Append-only, line-delimited JSON store of computed values.
//!
//! One record per line:
//!
//! ```text
//! {"g":0,"mu":[3,2],"nu":[4,1],"kind":"H","num":"8","den":"1","conv":{"m0_pruned":false,"stability_reading":"literal"}}
//! ```
//!
//! Records written under different conventions are ignored on load; lines
//! that do not parse or violate an invariant are skipped with a warning.

use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use log::warn;
use num::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::combinatorics::{Integer, Partition, Rational};
use crate::conventions::{Conventions, StabilityReading};
use crate::hurwitz::{CacheKey, Kind};

/// Environment variable naming the default cache file.
pub const CACHE_PATH_ENV: &str = "HURWITZ_CACHE";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecordConventions {
    pub m0_pruned: bool,
    pub stability_reading: StabilityReading,
}

impl From<&Conventions> for RecordConventions {
    fn from(c: &Conventions) -> Self {
        RecordConventions {
            m0_pruned: c.m0_pruned,
            stability_reading: c.stability,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheRecord {
    pub g: i64,
    pub mu: Vec<u32>,
    pub nu: Vec<u32>,
    pub kind: Kind,
    pub num: String,
    pub den: String,
    pub conv: RecordConventions,
}

impl CacheRecord {
    pub fn new(key: &CacheKey, value: &Rational, conventions: &Conventions) -> Self {
        CacheRecord {
            g: key.genus,
            mu: key.mu.sorted().into(),
            nu: key.nu.sorted().into(),
            kind: key.kind,
            num: value.numer().to_string(),
            den: value.denom().to_string(),
            conv: conventions.into(),
        }
    }

    /// Validates the record and returns its key and value.
    pub fn decode(&self) -> Result<(CacheKey, Rational), String> {
        let num: Integer = self.num.parse().map_err(|e| format!("bad num {:?}: {e}", self.num))?;
        let den: Integer = self.den.parse().map_err(|e| format!("bad den {:?}: {e}", self.den))?;
        if den.is_zero() || den.is_negative() {
            return Err(format!("denominator must be positive, got {den}"));
        }
        let mu = Partition::new(self.mu.clone()).map_err(|e| e.to_string())?;
        let nu = Partition::new(self.nu.clone()).map_err(|e| e.to_string())?;
        if mu.degree() != nu.degree() || mu.is_empty() {
            return Err("mu and nu must be non-empty partitions of the same degree".into());
        }
        let key = CacheKey {
            genus: self.g,
            mu: mu.sorted(),
            nu: nu.sorted(),
            kind: self.kind,
        };
        Ok((key, Rational::new(num, den)))
    }
}

/// Persistent record file. Write failures are logged and disable further
/// writes; they never abort a computation.
#[derive(Debug)]
pub struct CacheStore {
    path: PathBuf,
    writer: Mutex<Option<File>>,
}

impl CacheStore {
    pub fn open(path: impl AsRef<Path>) -> Self {
        let path = path.as_ref().to_path_buf();
        let writer = match OpenOptions::new().create(true).append(true).open(&path) {
            Ok(file) => Some(file),
            Err(e) => {
                warn!("cache {} is not writable ({e}); continuing without persistence", path.display());
                None
            }
        };
        CacheStore {
            path,
            writer: Mutex::new(writer),
        }
    }

    /// Path from `HURWITZ_CACHE`, if set.
    pub fn from_env() -> Option<Self> {
        std::env::var_os(CACHE_PATH_ENV).map(CacheStore::open)
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn is_writable(&self) -> bool {
        self.writer.lock().map(|w| w.is_some()).unwrap_or(false)
    }

    /// Reads every valid record written under `conventions`.
    pub fn load(&self, conventions: &Conventions) -> Vec<(CacheKey, Rational)> {
        let file = match File::open(&self.path) {
            Ok(f) => f,
            Err(e) => {
                if e.kind() != std::io::ErrorKind::NotFound {
                    warn!("cannot read cache {}: {e}", self.path.display());
                }
                return Vec::new();
            }
        };
        let active = RecordConventions::from(conventions);
        let mut out = Vec::new();
        for (lineno, line) in BufReader::new(file).lines().enumerate() {
            let line = match line {
                Ok(l) => l,
                Err(e) => {
                    warn!("{}:{}: unreadable line: {e}", self.path.display(), lineno + 1);
                    continue;
                }
            };
            if line.trim().is_empty() {
                continue;
            }
            match parse_line(&line) {
                Ok((record, key, value)) => {
                    if record.conv == active {
                        out.push((key, value));
                    }
                }
                Err(e) => warn!("{}:{}: skipping record: {e}", self.path.display(), lineno + 1),
            }
        }
        out
    }

    pub fn append(&self, key: &CacheKey, value: &Rational, conventions: &Conventions) {
        let record = CacheRecord::new(key, value, conventions);
        let line = serde_json::to_string(&record).expect("records always serialize");
        let mut guard = match self.writer.lock() {
            Ok(g) => g,
            Err(_) => return,
        };
        if let Some(file) = guard.as_mut() {
            if let Err(e) = writeln!(file, "{line}") {
                warn!("cache write to {} failed ({e}); disabling persistence", self.path.display());
                *guard = None;
            }
        }
    }
}

/// Parses and validates one cache line.
pub fn parse_line(line: &str) -> Result<(CacheRecord, CacheKey, Rational), String> {
    let record: CacheRecord = serde_json::from_str(line).map_err(|e| e.to_string())?;
    let (key, value) = record.decode()?;
    Ok((record, key, value))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hurwitz::{rational, HurwitzEngine, HurwitzQuery};

    fn part(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn key() -> CacheKey {
        CacheKey {
            genus: 0,
            mu: part(&[3, 2]),
            nu: part(&[4, 1]),
            kind: Kind::Full,
        }
    }

    #[test]
    fn record_format_is_stable() {
        let rec = CacheRecord::new(&key(), &rational(8, 1), &Conventions::default());
        assert_eq!(
            serde_json::to_string(&rec).unwrap(),
            r#"{"g":0,"mu":[3,2],"nu":[4,1],"kind":"H","num":"8","den":"1","conv":{"m0_pruned":false,"stability_reading":"literal"}}"#
        );
    }

    #[test]
    fn round_trip_through_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cache.jsonl");
        let conv = Conventions::default();
        let store = CacheStore::open(&path);
        store.append(&key(), &rational(8, 1), &conv);
        store.append(&key(), &rational(-3, 7), &Conventions { m0_pruned: true, ..conv });
        let loaded = CacheStore::open(&path).load(&conv);
        assert_eq!(loaded, vec![(key(), rational(8, 1))]);
    }

    #[test]
    fn invalid_lines_are_skipped() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cache.jsonl");
        std::fs::write(
            &path,
            concat!(
                r#"{"g":0,"mu":[2],"nu":[2],"kind":"H","num":"1","den":"0","conv":{"m0_pruned":false,"stability_reading":"literal"}}"#,
                "\nnot json\n",
                r#"{"g":0,"mu":[2],"nu":[1],"kind":"H","num":"1","den":"2","conv":{"m0_pruned":false,"stability_reading":"literal"}}"#,
                "\n",
                r#"{"g":0,"mu":[2],"nu":[2],"kind":"H","num":"1","den":"2","conv":{"m0_pruned":false,"stability_reading":"literal"}}"#,
                "\n",
            ),
        )
        .unwrap();
        let loaded = CacheStore::open(&path).load(&Conventions::default());
        assert_eq!(loaded.len(), 1);
        assert_eq!(loaded[0].1, rational(1, 2));
    }

    #[test]
    fn different_conventions_are_ignored() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cache.jsonl");
        let other = Conventions {
            stability: StabilityReading::FaceCount,
            ..Conventions::default()
        };
        CacheStore::open(&path).append(&key(), &rational(8, 1), &other);
        assert!(CacheStore::open(&path).load(&Conventions::default()).is_empty());
        assert_eq!(CacheStore::open(&path).load(&other).len(), 1);
    }

    #[test]
    fn engine_persists_and_reloads() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cache.jsonl");
        let engine = HurwitzEngine::default().with_store(CacheStore::open(&path));
        let v = engine.double_hurwitz(0, &part(&[2, 3]), &part(&[1, 4])).unwrap();
        let reloaded = HurwitzEngine::default().with_store(CacheStore::open(&path));
        let q = HurwitzQuery::new(0, part(&[3, 2]), part(&[1, 4]), Kind::Full);
        assert_eq!(reloaded.cache_lookup(&q), Some(v));
    }

    #[test]
    fn unwritable_path_degrades_gracefully() {
        let dir = tempfile::tempdir().unwrap();
        let store = CacheStore::open(dir.path().join("missing").join("cache.jsonl"));
        assert!(!store.is_writable());
        store.append(&key(), &rational(1, 1), &Conventions::default());
        let engine = HurwitzEngine::default().with_store(store);
        assert_eq!(
            engine.double_hurwitz(0, &part(&[2]), &part(&[2])).unwrap(),
            rational(1, 2)
        );
    }
}
