//! Content-addressed JSON cache on disk. Keys are hashed with SHA-256; unreadable or corrupt
//! entries are treated as misses and rewritten.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};

use serde::de::DeserializeOwned;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::sl2::UModule;

pub const CACHE_ENV: &str = "TILTLAB_CACHE";

#[derive(Clone, Debug)]
pub struct DiskCache {
    root: PathBuf,
}

impl DiskCache {
    pub fn new(root: impl Into<PathBuf>) -> Self {
        DiskCache { root: root.into() }
    }

    pub fn from_env() -> Option<Self> {
        std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()).map(DiskCache::new)
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    fn path(&self, key: &str) -> PathBuf {
        let h = hex::encode(Sha256::digest(key.as_bytes()));
        self.root.join(&h[..2]).join(format!("{h}.json"))
    }

    pub fn load<T: DeserializeOwned>(&self, key: &str) -> Option<T> {
        let bytes = fs::read(self.path(key)).ok()?;
        match serde_json::from_slice(&bytes) {
            Ok(v) => Some(v),
            Err(e) => {
                eprintln!("warning: discarding corrupt cache entry for {key}: {e}");
                None
            }
        }
    }

    /// Best effort: a failed write only loses the cache entry.
    pub fn store<T: Serialize>(&self, key: &str, value: &T) {
        let path = self.path(key);
        let Some(dir) = path.parent() else { return };
        if fs::create_dir_all(dir).is_err() {
            return;
        }
        let Ok(bytes) = serde_json::to_vec(value) else { return };
        static SEQ: AtomicUsize = AtomicUsize::new(0);
        let tmp = path.with_extension(format!("{}.{}.tmp", std::process::id(), SEQ.fetch_add(1, Ordering::Relaxed)));
        if fs::write(&tmp, bytes).is_ok() {
            let _ = fs::rename(&tmp, &path);
        }
    }

    pub fn load_module(&self, key: &str) -> Option<UModule> {
        let j = self.load(key)?;
        match UModule::from_json(&j) {
            Ok(m) => Some(m),
            Err(e) => {
                eprintln!("warning: discarding invalid cached module {key}: {e}");
                None
            }
        }
    }

    pub fn store_module(&self, key: &str, m: &UModule) {
        self.store(key, &m.to_json());
    }
}
