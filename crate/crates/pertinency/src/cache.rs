use std::fs::{self, OpenOptions};
use std::io::{self, BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use crate::record::ResultRecord;

/// Append-only JSON-lines store of result records.
#[derive(Debug, Clone)]
pub struct Cache {
    path: PathBuf,
}

impl Cache {
    pub const FILE: &'static str = "records.jsonl";

    pub fn open(dir: &Path) -> io::Result<Self> {
        fs::create_dir_all(dir)?;
        Ok(Cache { path: dir.join(Self::FILE) })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    /// Latest record with `key`; unreadable lines are skipped.
    pub fn lookup(&self, key: &str) -> io::Result<Option<ResultRecord>> {
        let file = match fs::File::open(&self.path) {
            Ok(f) => f,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e),
        };
        let mut found = None;
        for line in BufReader::new(file).lines() {
            let line = line?;
            if !line.contains(key) {
                continue;
            }
            if let Ok(r) = serde_json::from_str::<ResultRecord>(&line) {
                if r.key == key {
                    found = Some(r);
                }
            }
        }
        Ok(found)
    }

    pub fn store(&self, record: &ResultRecord) -> io::Result<()> {
        let mut file = OpenOptions::new().create(true).append(true).open(&self.path)?;
        let line = serde_json::to_string(record).map_err(io::Error::other)?;
        writeln!(file, "{line}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn roundtrip() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::open(dir.path()).unwrap();
        let r = ResultRecord::new("sets", json!({"n": 6}), json!({"x": [1, 2]}), vec![]);
        assert!(cache.lookup(&r.key).unwrap().is_none());
        cache.store(&r).unwrap();
        assert_eq!(cache.lookup(&r.key).unwrap(), Some(r));
    }
}
