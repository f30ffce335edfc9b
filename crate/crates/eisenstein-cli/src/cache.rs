//! On-disk cache of per-item records, one JSON file per key.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use serde_json::Value;

/// Bumped whenever the content of a record changes for the same inputs.
pub const RECORD_VERSION: u32 = 1;

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn open(dir: &Path) -> io::Result<Self> {
        fs::create_dir_all(dir)?;
        Ok(Cache { dir: dir.to_path_buf() })
    }

    /// File name for `(command, N, p, options)` at the current crate and
    /// record versions.
    pub fn key(command: &str, n: u64, p: Option<u64>, options: &str) -> String {
        let p = p.map_or_else(|| "-".to_string(), |p| p.to_string());
        let raw = format!("{command}_N{n}_p{p}_{options}_v{}_r{RECORD_VERSION}", env!("CARGO_PKG_VERSION"));
        raw.chars().map(|c| if c.is_ascii_alphanumeric() || "-_.".contains(c) { c } else { '_' }).collect()
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    /// The cached record, if present and readable.
    pub fn get(&self, key: &str) -> Option<Value> {
        let text = fs::read_to_string(self.path(key)).ok()?;
        serde_json::from_str(&text).ok()
    }

    /// Stores a record; the write is atomic so concurrent readers never see
    /// a partial file.
    pub fn put(&self, key: &str, record: &Value) -> io::Result<()> {
        let tmp = self.dir.join(format!(".{key}.{}.tmp", std::process::id()));
        fs::write(&tmp, serde_json::to_string(record)?)?;
        fs::rename(tmp, self.path(key))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::open(dir.path()).unwrap();
        let key = Cache::key("gp", 181, Some(5), "r=all gmax=97");
        assert!(!key.contains(' ') && !key.contains('='));
        assert_eq!(cache.get(&key), None);
        let rec = serde_json::json!({"N": 181, "g_p": 3});
        cache.put(&key, &rec).unwrap();
        assert_eq!(cache.get(&key), Some(rec));
    }
}
