use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::algebra::Mat;
use crate::error::Result;

/// Environment variable naming the cache root.
pub const CACHE_ENV: &str = "FLAGFIX_CACHE_DIR";

/// Content-hash key of one artifact.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CacheKey(String);

impl CacheKey {
    /// Hash of the artifact kind, the field and dimension, the sorted
    /// generator encodings and the configuration fingerprint.
    pub fn new(kind: &str, q: u32, n: usize, generators: &[Mat], fingerprint: &str) -> Self {
        let mut enc: Vec<Vec<u8>> = generators.iter().map(Mat::encode).collect();
        enc.sort();
        enc.dedup();
        let mut h = Sha256::new();
        for part in [kind.as_bytes(), &q.to_le_bytes(), &(n as u64).to_le_bytes(), fingerprint.as_bytes()] {
            h.update((part.len() as u64).to_le_bytes());
            h.update(part);
        }
        for e in &enc {
            h.update((e.len() as u64).to_le_bytes());
            h.update(e);
        }
        CacheKey(hex::encode(h.finalize()))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

#[derive(Serialize, Deserialize)]
struct Envelope<T> {
    key: String,
    value: T,
}

/// One JSON file per key under a root directory.
///
/// Writers go through a private temporary file that is hard-linked into
/// place, so the first complete write of a key wins and readers never see a
/// partial file.
#[derive(Debug, Clone)]
pub struct Cache {
    root: PathBuf,
}

static TMP_COUNTER: AtomicU64 = AtomicU64::new(0);

impl Cache {
    pub fn open(root: impl Into<PathBuf>) -> Result<Self> {
        let root = root.into();
        fs::create_dir_all(&root)?;
        Ok(Cache { root })
    }

    /// The cache named by `FLAGFIX_CACHE_DIR`, if set.
    pub fn from_env() -> Option<Result<Self>> {
        std::env::var_os(CACHE_ENV).map(Cache::open)
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    fn path(&self, key: &CacheKey) -> PathBuf {
        self.root.join(format!("{}.json", key.0))
    }

    /// Stored value, or `None` on a miss. Unreadable entries count as misses.
    pub fn load<T: DeserializeOwned>(&self, key: &CacheKey) -> Option<T> {
        let path = self.path(key);
        let bytes = match fs::read(&path) {
            Ok(b) => b,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return None,
            Err(e) => {
                log::warn!("cache read failed for {}: {e}", path.display());
                return None;
            }
        };
        match serde_json::from_slice::<Envelope<T>>(&bytes) {
            Ok(env) if env.key == key.0 => Some(env.value),
            Ok(_) => {
                log::warn!("cache entry {} has a mismatched key; ignoring", path.display());
                None
            }
            Err(e) => {
                log::warn!("corrupt cache entry {}: {e}; ignoring", path.display());
                None
            }
        }
    }

    /// Stores `value` unless the key is already present. Returns whether this
    /// call wrote the entry.
    pub fn store<T: Serialize>(&self, key: &CacheKey, value: &T) -> Result<bool> {
        let path = self.path(key);
        let tmp = self.root.join(format!(
            ".{}.{}.{}.tmp",
            key.0,
            std::process::id(),
            TMP_COUNTER.fetch_add(1, Ordering::Relaxed)
        ));
        let bytes = serde_json::to_vec(&Envelope { key: key.0.clone(), value })
            .map_err(|e| crate::Error::Io(e.to_string()))?;
        {
            let mut f = fs::File::create(&tmp)?;
            f.write_all(&bytes)?;
            f.sync_all()?;
        }
        let linked = fs::hard_link(&tmp, &path);
        let _ = fs::remove_file(&tmp);
        match linked {
            Ok(()) => Ok(true),
            Err(e) if e.kind() == std::io::ErrorKind::AlreadyExists => Ok(false),
            Err(e) => Err(e.into()),
        }
    }

    /// `load`, falling back to `compute` and storing its result.
    pub fn get_or_compute<T, F>(&self, key: &CacheKey, compute: F) -> Result<T>
    where
        T: Serialize + DeserializeOwned,
        F: FnOnce() -> Result<T>,
    {
        if let Some(v) = self.load(key) {
            return Ok(v);
        }
        let v = compute()?;
        if let Err(e) = self.store(key, &v) {
            log::warn!("cache store failed: {e}");
        }
        Ok(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field_make;
    use crate::grouplat::{closure, GroupSpec};

    fn j3() -> (GroupSpec, Vec<Vec<u8>>) {
        let f = field_make(2).unwrap();
        let spec = GroupSpec::new("j3", f, 3, vec![Mat::jordan_unipotent(f, 3)]).unwrap();
        let elems = closure(&spec, 100).elements().iter().map(Mat::encode).collect();
        (spec, elems)
    }

    #[test]
    fn round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::open(dir.path()).unwrap();
        let (spec, elems) = j3();
        let key = CacheKey::new("closure", 2, 3, spec.generators(), "fp1");
        assert!(cache.load::<Vec<Vec<u8>>>(&key).is_none());
        assert!(cache.store(&key, &elems).unwrap());
        assert!(!cache.store(&key, &elems).unwrap());
        assert_eq!(cache.load::<Vec<Vec<u8>>>(&key).unwrap(), elems);
    }

    #[test]
    fn fingerprint_change_misses() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::open(dir.path()).unwrap();
        let (spec, elems) = j3();
        let k1 = CacheKey::new("closure", 2, 3, spec.generators(), "fp1");
        let k2 = CacheKey::new("closure", 2, 3, spec.generators(), "fp2");
        cache.store(&k1, &elems).unwrap();
        assert!(cache.load::<Vec<Vec<u8>>>(&k2).is_none());
    }

    #[test]
    fn corrupt_is_miss() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::open(dir.path()).unwrap();
        let (spec, _) = j3();
        let key = CacheKey::new("closure", 2, 3, spec.generators(), "fp");
        fs::write(cache.path(&key), b"{not json").unwrap();
        assert!(cache.load::<Vec<Vec<u8>>>(&key).is_none());
        let v: Vec<u32> = cache.get_or_compute(&key, || Ok(vec![1, 2])).unwrap();
        assert_eq!(v, vec![1, 2]);
    }

    #[test]
    fn concurrent_writers_one_winner() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::open(dir.path()).unwrap();
        let (spec, _) = j3();
        let key = CacheKey::new("x", 2, 3, spec.generators(), "fp");
        let wins: usize = std::thread::scope(|s| {
            let hs: Vec<_> = (0..8u32).map(|i| s.spawn({
                let cache = &cache;
                let key = &key;
                move || cache.store(key, &i).unwrap() as usize
            })).collect();
            hs.into_iter().map(|h| h.join().unwrap()).sum()
        });
        assert_eq!(wins, 1);
        assert!(cache.load::<u32>(&key).is_some());
        assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 1);
    }

    #[test]
    fn generator_order_irrelevant() {
        let f = field_make(2).unwrap();
        let a = Mat::jordan_unipotent(f, 3);
        let b = Mat::identity(f, 3);
        assert_eq!(
            CacheKey::new("k", 2, 3, &[a.clone(), b.clone()], ""),
            CacheKey::new("k", 2, 3, &[b, a], "")
        );
    }
}
