//! Content-addressed cache of classification records: one JSON file per
//! triple, named by the SHA-256 of the schema version and parameters.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::report::{Record, SCHEMA};

pub const ENV_VAR: &str = "CYCPRES_CACHE_DIR";

#[derive(Debug, Clone)]
pub struct Cache {
    root: PathBuf,
}

impl Cache {
    pub fn new(root: impl Into<PathBuf>) -> Self {
        Cache { root: root.into() }
    }

    /// `$CYCPRES_CACHE_DIR`, else `$XDG_CACHE_HOME/cycpres`, else
    /// `$HOME/.cache/cycpres`.
    pub fn from_env() -> Option<Self> {
        if let Some(dir) = std::env::var_os(ENV_VAR) {
            return Some(Cache::new(dir));
        }
        if let Some(dir) = std::env::var_os("XDG_CACHE_HOME") {
            return Some(Cache::new(Path::new(&dir).join("cycpres")));
        }
        std::env::var_os("HOME").map(|h| Cache::new(Path::new(&h).join(".cache").join("cycpres")))
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    pub fn key(n: i64, k: i64, l: i64) -> String {
        let digest = Sha256::digest(format!("cycpres-record/schema={SCHEMA}/{n},{k},{l}").as_bytes());
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }

    fn path(&self, key: &str) -> PathBuf {
        self.root.join(&key[..2]).join(format!("{key}.json"))
    }

    /// A stored record, or `None` when missing, unreadable or from another
    /// schema.
    pub fn get(&self, n: i64, k: i64, l: i64) -> Option<Record> {
        let text = fs::read_to_string(self.path(&Self::key(n, k, l))).ok()?;
        let rec: Record = serde_json::from_str(&text).ok()?;
        (rec.schema == SCHEMA).then_some(rec)
    }

    /// Writes through a temporary file and a rename, so readers never see a
    /// partial entry.
    pub fn put(&self, n: i64, k: i64, l: i64, rec: &Record) -> std::io::Result<()> {
        let path = self.path(&Self::key(n, k, l));
        let dir = path.parent().expect("entry has a parent");
        fs::create_dir_all(dir)?;
        let tmp = dir.join(format!(".{}.{}.tmp", std::process::id(), path.file_name().unwrap().to_string_lossy()));
        let mut f = fs::File::create(&tmp)?;
        f.write_all(serde_json::to_string_pretty(rec)?.as_bytes())?;
        f.sync_all()?;
        fs::rename(&tmp, &path)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use cycpres_core::classify::classify;

    #[test]
    fn keys_are_stable_and_distinct() {
        assert_eq!(Cache::key(8, 1, 3), Cache::key(8, 1, 3));
        assert_ne!(Cache::key(8, 1, 3), Cache::key(8, 3, 1));
        assert_eq!(Cache::key(8, 1, 3).len(), 64);
    }

    #[test]
    fn round_trip_and_corruption() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path());
        assert!(cache.get(8, 1, 3).is_none());
        let rec = Record::from_core(&classify(8, 1, 3).unwrap()).unwrap();
        cache.put(8, 1, 3, &rec).unwrap();
        assert_eq!(cache.get(8, 1, 3), Some(rec));
        let path = cache.path(&Cache::key(8, 1, 3));
        fs::write(&path, "{ not json").unwrap();
        assert!(cache.get(8, 1, 3).is_none());
    }
}
