//! Content-addressed result cache: one JSON file per canonical config.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};
use sha2::{Digest, Sha256};

pub const CACHE_ENV: &str = "SUPERTAB_CACHE_DIR";

/// A stored command result: the emitted text and the exit status it produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry {
    pub output: String,
    pub status: i32,
}

pub struct Cache {
    dir: PathBuf,
}

/// Hex sha256 of the canonical config text.
pub fn key_of(canonical: &str) -> String {
    hex::encode(Sha256::digest(canonical.as_bytes()))
}

impl Cache {
    pub fn open(dir: &Path) -> std::io::Result<Self> {
        fs::create_dir_all(dir)?;
        Ok(Cache { dir: dir.to_path_buf() })
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    /// `Ok(None)` on a miss; `Err` with a reason when the file is unreadable
    /// or does not belong to the key.
    pub fn load(&self, key: &str, canonical: &str) -> Result<Option<Entry>, String> {
        let path = self.path(key);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(format!("{}: {e}", path.display())),
        };
        let v: Value = serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
        let config = v.get("config").and_then(Value::as_str);
        let output = v.get("output").and_then(Value::as_str);
        let status = v.get("status").and_then(Value::as_i64);
        let digest = v.get("sha256").and_then(Value::as_str);
        match (config, output, status, digest) {
            (Some(c), Some(o), Some(s), Some(d)) if c == canonical && d == key_of(o) => Ok(Some(Entry {
                output: o.to_string(),
                status: s as i32,
            })),
            _ => Err(format!("{}: entry does not match its key", path.display())),
        }
    }

    /// Writes to a temporary file in the cache directory and renames it into place.
    pub fn store(&self, key: &str, canonical: &str, entry: &Entry) -> std::io::Result<()> {
        let doc = json!({
            "config": canonical,
            "status": entry.status,
            "sha256": key_of(&entry.output),
            "output": entry.output,
        });
        let tmp = self.dir.join(format!(".{key}.{}.tmp", std::process::id()));
        {
            let mut f = fs::File::create(&tmp)?;
            f.write_all(serde_json::to_string_pretty(&doc).expect("json").as_bytes())?;
            f.sync_all()?;
        }
        fs::rename(&tmp, self.path(key))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn key_is_hex_sha256() {
        let k = key_of("abc");
        assert_eq!(k, "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    }
}
