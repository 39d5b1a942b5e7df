//! Content-addressed result cache.
//!
//! Entries live under `$KRES_CACHE_DIR` (default `.kres-cache`), one file per
//! key, named by the SHA-256 of the canonical JSON of the key. Each file
//! records the format version it was written with; entries of any other
//! version are treated as absent. Writes go to a temporary file in the same
//! directory which is then renamed into place.

use std::io::Write;
use std::path::PathBuf;

use serde_json::{json, Value};
use sha2::{Digest, Sha256};

const FORMAT_VERSION: u64 = 1;

pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn from_env() -> Self {
        let dir = std::env::var_os("KRES_CACHE_DIR")
            .map(PathBuf::from)
            .unwrap_or_else(|| PathBuf::from(".kres-cache"));
        Cache { dir }
    }

    fn path(&self, key: &Value) -> PathBuf {
        let digest = Sha256::digest(key.to_string().as_bytes());
        self.dir.join(format!("{}.json", hex::encode(digest)))
    }

    fn read(&self, key: &Value) -> Option<Value> {
        let text = std::fs::read_to_string(self.path(key)).ok()?;
        let mut entry: Value = serde_json::from_str(&text).ok()?;
        if entry.get("version")?.as_u64()? != FORMAT_VERSION || entry.get("key")? != key {
            return None;
        }
        entry.get_mut("payload").map(Value::take)
    }

    fn write(&self, key: &Value, payload: &Value) -> std::io::Result<()> {
        std::fs::create_dir_all(&self.dir)?;
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        let entry = json!({ "version": FORMAT_VERSION, "key": key, "payload": payload });
        tmp.write_all(entry.to_string().as_bytes())?;
        tmp.persist(self.path(key)).map_err(|e| e.error)?;
        Ok(())
    }

    pub fn get_or_compute<E>(
        &self,
        key: &Value,
        compute: impl FnOnce() -> Result<Value, E>,
    ) -> Result<Value, E> {
        if let Some(v) = self.read(key) {
            return Ok(v);
        }
        let v = compute()?;
        if let Err(e) = self.write(key, &v) {
            eprintln!("kres: warning: could not write cache entry: {e}");
        }
        Ok(v)
    }
}
