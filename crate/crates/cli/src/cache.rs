//! Content-addressed result cache.
//!
//! Keys are SHA-256 digests of a canonical JSON document naming the
//! computation, the algebra spec, the module descriptions and the step count.

use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::Serialize;
use sha2::{Digest, Sha256};

use modcx_core::AlgebraSpec;

pub struct Cache {
    dir: Option<PathBuf>,
}

#[derive(Serialize)]
struct KeyDoc<'a> {
    op: &'a str,
    spec: &'a AlgebraSpec,
    modules: &'a [&'a str],
    steps: usize,
    prime: u32,
}

pub fn key(op: &str, spec: &AlgebraSpec, modules: &[&str], steps: usize) -> String {
    let doc = KeyDoc { op, spec, modules, steps, prime: spec.prime };
    let bytes = serde_json::to_vec(&doc).expect("key document serializes");
    format!("{:x}", Sha256::digest(bytes))
}

impl Cache {
    pub fn new(dir: Option<&Path>) -> Cache {
        Cache { dir: dir.map(Path::to_path_buf) }
    }

    pub fn disabled() -> Cache {
        Cache { dir: None }
    }

    fn path(&self, key: &str) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(format!("{key}.json")))
    }

    pub fn get<T: DeserializeOwned>(&self, key: &str) -> Option<T> {
        let text = std::fs::read_to_string(self.path(key)?).ok()?;
        // unreadable entries are treated as misses and overwritten
        serde_json::from_str(&text).ok()
    }

    pub fn put<T: Serialize>(&self, key: &str, value: &T) {
        let Some(path) = self.path(key) else { return };
        if let Some(dir) = path.parent() {
            if std::fs::create_dir_all(dir).is_err() {
                return;
            }
        }
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        let text = serde_json::to_string(value).expect("cache values serialize");
        if std::fs::write(&tmp, text).is_ok() {
            let _ = std::fs::rename(&tmp, &path);
        }
    }

    /// Returns the cached value or computes and stores it. With `verify`, a hit
    /// is recomputed and compared; the flag is true when they agree.
    pub fn fetch<T, F>(&self, key: &str, verify: bool, compute: F) -> modcx_core::Result<(T, Option<bool>)>
    where
        T: Serialize + DeserializeOwned + PartialEq,
        F: FnOnce() -> modcx_core::Result<T>,
    {
        match self.get::<T>(key) {
            Some(hit) if verify => {
                let fresh = compute()?;
                let same = fresh == hit;
                Ok((fresh, Some(same)))
            }
            Some(hit) => Ok((hit, None)),
            None => {
                let v = compute()?;
                self.put(key, &v);
                Ok((v, None))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keys_depend_on_every_field() {
        let spec = AlgebraSpec::new(101, &["x"], &["x^2"], 3);
        let base = key("resolve", &spec, &["k"], 20);
        assert_eq!(base, key("resolve", &spec, &["k"], 20));
        assert_ne!(base, key("resolve", &spec, &["k"], 21));
        assert_ne!(base, key("ext", &spec, &["k"], 20));
        assert_ne!(base, key("resolve", &spec, &["E"], 20));
        let other = AlgebraSpec::new(103, &["x"], &["x^2"], 3);
        assert_ne!(base, key("resolve", &other, &["k"], 20));
    }

    #[test]
    fn round_trip_and_verify() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(Some(dir.path()));
        let (v, _) = cache.fetch("a", false, || Ok(vec![1u64, 2])).unwrap();
        assert_eq!(v, vec![1, 2]);
        let (v, _) = cache.fetch("a", false, || -> modcx_core::Result<Vec<u64>> { panic!("should hit") }).unwrap();
        assert_eq!(v, vec![1, 2]);
        let (_, same) = cache.fetch("a", true, || Ok(vec![1u64, 3])).unwrap();
        assert_eq!(same, Some(false));
        assert!(Cache::disabled().get::<Vec<u64>>("a").is_none());
    }
}
