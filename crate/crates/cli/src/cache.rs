//! Content-addressed store of serialized resolutions.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};

use sha2::{Digest, Sha256};

pub const DEFAULT_DIR: &str = ".pic2ha-cache";
pub const ENV_VAR: &str = "PIC2HA_CACHE";

static TMP_COUNTER: AtomicU64 = AtomicU64::new(0);

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

/// Hex sha256 of the canonical input serialization, the length and the seed.
pub fn key(canonical_input: &str, length: usize, seed: Option<u64>) -> String {
    let mut h = Sha256::new();
    h.update(canonical_input.as_bytes());
    h.update(format!("length={length}\n").as_bytes());
    match seed {
        Some(s) => h.update(format!("seed={s}\n").as_bytes()),
        None => h.update(b"seed=none\n"),
    }
    hex::encode(h.finalize())
}

impl Cache {
    /// The flag wins over the environment, which wins over the default.
    pub fn resolve_dir(flag: Option<&Path>) -> PathBuf {
        if let Some(p) = flag {
            return p.to_path_buf();
        }
        match std::env::var_os(ENV_VAR) {
            Some(v) if !v.is_empty() => PathBuf::from(v),
            _ => PathBuf::from(DEFAULT_DIR),
        }
    }

    pub fn new(dir: PathBuf) -> Self {
        Cache { dir }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.res"))
    }

    /// `None` on any read failure; validation is the caller's job.
    pub fn get(&self, key: &str) -> Option<String> {
        fs::read_to_string(self.path(key)).ok()
    }

    /// Writes to a private temporary file and renames it into place.
    pub fn put(&self, key: &str, value: &str) -> io::Result<()> {
        fs::create_dir_all(&self.dir)?;
        let n = TMP_COUNTER.fetch_add(1, Ordering::Relaxed);
        let tmp = self.dir.join(format!(".{key}.{}.{n}.tmp", std::process::id()));
        let written = (|| {
            let mut f = fs::File::create(&tmp)?;
            f.write_all(value.as_bytes())?;
            f.sync_all()?;
            fs::rename(&tmp, self.path(key))
        })();
        if written.is_err() {
            let _ = fs::remove_file(&tmp);
        }
        written
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keys_separate_length_and_seed() {
        let a = key("pic2\n", 3, None);
        assert_eq!(a.len(), 64);
        assert_eq!(a, key("pic2\n", 3, None));
        assert_ne!(a, key("pic2\n", 4, None));
        assert_ne!(a, key("pic2\n", 3, Some(0)));
        assert_ne!(key("pic2\n", 3, Some(1)), key("pic2\n", 3, Some(0)));
    }

    #[test]
    fn put_then_get() {
        let dir = tempfile::tempdir().unwrap();
        let c = Cache::new(dir.path().join("nested"));
        c.put("k", "value\n").unwrap();
        assert_eq!(c.get("k").as_deref(), Some("value\n"));
        c.put("k", "other\n").unwrap();
        assert_eq!(c.get("k").as_deref(), Some("other\n"));
        assert!(c.get("missing").is_none());
    }
}
