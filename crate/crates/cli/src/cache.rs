//! Append-only JSONL cache of census records, keyed by
//! (expression, σ, engine version). Unreadable lines are skipped.

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{self, BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

use crate::report::CensusRecord;

pub const ENV_VAR: &str = "FITHEIGHT_CACHE";

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Key {
    pub expr: String,
    pub sigma: Vec<u32>,
    pub engine_version: String,
}

impl Key {
    pub fn of(r: &CensusRecord) -> Self {
        Key { expr: r.expr.clone(), sigma: r.sigma.clone(), engine_version: r.engine_version.clone() }
    }
}

#[derive(Serialize, Deserialize)]
struct Line {
    /// Seconds since the Unix epoch.
    timestamp: u64,
    #[serde(flatten)]
    record: CensusRecord,
}

pub struct Cache {
    path: PathBuf,
    entries: HashMap<Key, CensusRecord>,
    writer: Mutex<Option<File>>,
    /// One message per skipped line.
    pub warnings: Vec<String>,
}

impl Cache {
    /// Reads `path` if it exists. Later lines win over earlier ones.
    pub fn open(path: &Path) -> io::Result<Self> {
        let mut entries = HashMap::new();
        let mut warnings = Vec::new();
        match File::open(path) {
            Ok(f) => {
                for (i, line) in BufReader::new(f).lines().enumerate() {
                    let line = line?;
                    if line.trim().is_empty() {
                        continue;
                    }
                    match serde_json::from_str::<Line>(&line) {
                        Ok(l) => {
                            entries.insert(Key::of(&l.record), l.record);
                        }
                        Err(e) => {
                            warnings.push(format!("{}:{}: skipping unreadable cache line ({e})", path.display(), i + 1))
                        }
                    }
                }
            }
            Err(e) if e.kind() == io::ErrorKind::NotFound => {}
            Err(e) => return Err(e),
        }
        Ok(Cache { path: path.to_path_buf(), entries, writer: Mutex::new(None), warnings })
    }

    pub fn get(&self, key: &Key) -> Option<&CensusRecord> {
        self.entries.get(key)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Appends one line; concurrent callers are serialised on one handle.
    pub fn append(&self, record: &CensusRecord) -> io::Result<()> {
        let timestamp = SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs());
        let mut text = serde_json::to_string(&Line { timestamp, record: record.clone() }).map_err(io::Error::other)?;
        text.push('\n');
        let mut guard = self.writer.lock().unwrap_or_else(|e| e.into_inner());
        if guard.is_none() {
            *guard = Some(OpenOptions::new().create(true).append(true).open(&self.path)?);
        }
        let f = guard.as_mut().expect("opened above");
        f.write_all(text.as_bytes())?;
        f.flush()
    }
}
