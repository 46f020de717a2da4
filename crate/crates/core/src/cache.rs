//! File-backed store of invariant records, keyed by canonical expression.
//!
//! The whole file is rewritten on every save (temp file + rename). Only one
//! process should write a given cache file at a time.

use std::collections::BTreeMap;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use serde_json::Value;
use thiserror::Error;

use crate::invariants::InvariantRecord;
use crate::report::{record_from_json, record_node, DecodeError};

pub const FORMAT_VERSION: u64 = 1;

#[derive(Debug, Error)]
pub enum CacheError {
    #[error("cache {path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("cache {path}: invalid JSON: {source}")]
    Json { path: PathBuf, source: serde_json::Error },
    #[error("cache {path}: unsupported format version {found} (expected {FORMAT_VERSION})")]
    Version { path: PathBuf, found: String },
    #[error("cache {path}: {detail}")]
    Malformed { path: PathBuf, detail: String },
    #[error(transparent)]
    Decode(#[from] DecodeError),
}

#[derive(Debug)]
pub struct Cache {
    path: PathBuf,
    records: BTreeMap<String, Value>,
}

impl Cache {
    /// Opens `path`, starting empty when the file does not exist.
    pub fn load(path: impl AsRef<Path>) -> Result<Self, CacheError> {
        let path = path.as_ref().to_path_buf();
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == io::ErrorKind::NotFound => {
                return Ok(Cache {
                    path,
                    records: BTreeMap::new(),
                })
            }
            Err(source) => return Err(CacheError::Io { path, source }),
        };
        let doc: Value = serde_json::from_str(&text).map_err(|source| CacheError::Json {
            path: path.clone(),
            source,
        })?;
        match doc.get("format_version") {
            Some(v) if v.as_u64() == Some(FORMAT_VERSION) => {}
            other => {
                return Err(CacheError::Version {
                    path,
                    found: other.map_or("(missing)".to_string(), Value::to_string),
                })
            }
        }
        let records = match doc.get("records") {
            Some(Value::Object(m)) => m.iter().map(|(k, v)| (k.clone(), v.clone())).collect(),
            _ => {
                return Err(CacheError::Malformed {
                    path,
                    detail: "missing records object".into(),
                })
            }
        };
        Ok(Cache { path, records })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn get(&self, key: &str) -> Result<Option<InvariantRecord>, CacheError> {
        self.records
            .get(key)
            .map(|v| record_from_json(v).map_err(CacheError::from))
            .transpose()
    }

    pub fn insert(&mut self, rec: &InvariantRecord) {
        self.records.insert(rec.knot.clone(), record_node(rec).to_json());
    }

    pub fn to_json_string(&self) -> String {
        let doc = serde_json::json!({
            "format_version": FORMAT_VERSION,
            "records": self.records,
        });
        let mut s = serde_json::to_string_pretty(&doc).expect("cache serializes");
        s.push('\n');
        s
    }

    pub fn save(&self) -> Result<(), CacheError> {
        let io_err = |source| CacheError::Io {
            path: self.path.clone(),
            source,
        };
        let mut tmp = self.path.clone().into_os_string();
        tmp.push(".tmp");
        let tmp = PathBuf::from(tmp);
        fs::write(&tmp, self.to_json_string()).map_err(io_err)?;
        fs::rename(&tmp, &self.path).map_err(io_err)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;
    use crate::invariants::Engine;

    #[test]
    fn round_trip_is_bit_identical() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cache.json");
        let rec = Engine::global().invariants(&parse("cable(2,3,torus(2,-5))").unwrap()).unwrap();
        let mut c = Cache::load(&path).unwrap();
        assert!(c.is_empty());
        c.insert(&rec);
        c.save().unwrap();
        let first = fs::read_to_string(&path).unwrap();

        let c2 = Cache::load(&path).unwrap();
        assert_eq!(c2.get(&rec.knot).unwrap(), Some(rec.clone()));
        c2.save().unwrap();
        assert_eq!(fs::read_to_string(&path).unwrap(), first);
        assert!(c2.get("torus(2,3)").unwrap().is_none());
    }

    #[test]
    fn rejects_unknown_version() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cache.json");
        fs::write(&path, r#"{"format_version": 2, "records": {}}"#).unwrap();
        assert!(matches!(Cache::load(&path), Err(CacheError::Version { .. })));
        fs::write(&path, r#"{"records": {}}"#).unwrap();
        assert!(matches!(Cache::load(&path), Err(CacheError::Version { .. })));
    }
}
