//! Append-only JSON-lines memo store.
//!
//! Each line is one [`CacheRecord`]. Keys are SHA-256 digests of a
//! canonical JSON document naming the arrangement, the operation and its
//! arguments; `serde_json` maps keep keys sorted, so the document and the
//! digest are the same on every platform. Appends hold an exclusive file
//! lock. Unparseable lines are skipped with a warning, and records written
//! by a different tool version never satisfy a lookup.

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use thiserror::Error;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

const LOCK_TIMEOUT: Duration = Duration::from_secs(10);
const LOCK_POLL: Duration = Duration::from_millis(20);

#[derive(Debug, Error)]
pub enum CacheError {
    #[error("cache I/O on {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("timed out waiting for the lock on {0}")]
    LockTimeout(PathBuf),
    #[error("cache serialization: {0}")]
    Json(#[from] serde_json::Error),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CacheRecord {
    pub key: String,
    pub value: Value,
    pub created_at: String,
    pub tool_version: String,
}

/// Deterministic key for `(arrangement, op, args)`.
pub fn cache_key(arrangement_canonical: &str, op: &str, args: &Value) -> String {
    let arrangement: Value = serde_json::from_str(arrangement_canonical)
        .unwrap_or_else(|_| Value::String(arrangement_canonical.into()));
    let doc = json!({ "arrangement": arrangement, "op": op, "args": args });
    hex::encode(Sha256::digest(doc.to_string().as_bytes()))
}

#[derive(Debug)]
pub struct Cache {
    path: PathBuf,
    version: String,
    index: HashMap<String, CacheRecord>,
    hits: u64,
    misses: u64,
}

impl Cache {
    pub fn open(path: impl AsRef<Path>) -> Result<Self, CacheError> {
        Cache::open_with_version(path, TOOL_VERSION)
    }

    /// Open the store, reading every existing record.
    pub fn open_with_version(path: impl AsRef<Path>, version: &str) -> Result<Self, CacheError> {
        let path = path.as_ref().to_path_buf();
        let mut index = HashMap::new();
        match File::open(&path) {
            Ok(file) => {
                for (lineno, line) in BufReader::new(file).lines().enumerate() {
                    let line = line.map_err(|source| CacheError::Io {
                        path: path.clone(),
                        source,
                    })?;
                    if line.trim().is_empty() {
                        continue;
                    }
                    match serde_json::from_str::<CacheRecord>(&line) {
                        Ok(rec) => {
                            index.insert(rec.key.clone(), rec);
                        }
                        Err(e) => log::warn!(
                            "skipping corrupted cache record at {}:{}: {e}",
                            path.display(),
                            lineno + 1
                        ),
                    }
                }
            }
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => {}
            Err(source) => return Err(CacheError::Io { path, source }),
        }
        Ok(Cache {
            path,
            version: version.to_string(),
            index,
            hits: 0,
            misses: 0,
        })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    /// The stored record, if its key and tool version both match.
    pub fn get(&mut self, key: &str) -> Option<CacheRecord> {
        match self.index.get(key) {
            Some(rec) if rec.tool_version == self.version => {
                self.hits += 1;
                Some(rec.clone())
            }
            _ => {
                self.misses += 1;
                None
            }
        }
    }

    /// Append a record under an exclusive lock.
    pub fn put(&mut self, key: String, value: Value) -> Result<CacheRecord, CacheError> {
        let rec = CacheRecord {
            key,
            value,
            created_at: chrono::Utc::now().to_rfc3339(),
            tool_version: self.version.clone(),
        };
        let mut line = serde_json::to_string(&rec)?;
        line.push('\n');
        let io = |source| CacheError::Io {
            path: self.path.clone(),
            source,
        };
        let mut file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&self.path)
            .map_err(io)?;
        let deadline = Instant::now() + LOCK_TIMEOUT;
        loop {
            match file.try_lock() {
                Ok(()) => break,
                Err(std::fs::TryLockError::WouldBlock) if Instant::now() < deadline => {
                    std::thread::sleep(LOCK_POLL)
                }
                Err(std::fs::TryLockError::WouldBlock) => {
                    return Err(CacheError::LockTimeout(self.path.clone()))
                }
                Err(std::fs::TryLockError::Error(e)) => return Err(io(e)),
            }
        }
        let written = file.write_all(line.as_bytes()).and_then(|_| file.flush());
        let unlocked = file.unlock();
        written.map_err(io)?;
        unlocked.map_err(io)?;
        self.index.insert(rec.key.clone(), rec.clone());
        Ok(rec)
    }

    pub fn hits(&self) -> u64 {
        self.hits
    }

    pub fn misses(&self) -> u64 {
        self.misses
    }
}
