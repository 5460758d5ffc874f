//! Content-addressed result cache.
//!
//! Entries live in `$STAIRCASE_CACHE_DIR` as `<sha256>.out` (stdout payload)
//! and optionally `<sha256>.svg`. Without the variable nothing is cached.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use sha2::{Digest, Sha256};

pub const ENV_VAR: &str = "STAIRCASE_CACHE_DIR";

pub struct Cache {
    dir: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Entry {
    pub stdout: Vec<u8>,
    pub svg: Option<Vec<u8>>,
}

/// Stable key over length-prefixed fields, so no two field lists collide.
pub fn key(fields: &[&str]) -> String {
    let mut h = Sha256::new();
    h.update(env!("CARGO_PKG_VERSION").as_bytes());
    for f in fields {
        h.update((f.len() as u64).to_le_bytes());
        h.update(f.as_bytes());
    }
    format!("{:x}", h.finalize())
}

impl Cache {
    pub fn from_env(disabled: bool) -> Self {
        let dir = if disabled {
            None
        } else {
            std::env::var_os(ENV_VAR)
                .filter(|v| !v.is_empty())
                .map(PathBuf::from)
        };
        Self { dir }
    }

    pub fn get(&self, key: &str, want_svg: bool) -> Option<Entry> {
        let dir = self.dir.as_ref()?;
        let stdout = fs::read(dir.join(format!("{key}.out"))).ok()?;
        let svg = if want_svg {
            Some(fs::read(dir.join(format!("{key}.svg"))).ok()?)
        } else {
            None
        };
        Some(Entry { stdout, svg })
    }

    /// Best effort: a cache that cannot be written is skipped silently.
    pub fn put(&self, key: &str, entry: &Entry) {
        let Some(dir) = &self.dir else { return };
        if fs::create_dir_all(dir).is_err() {
            return;
        }
        if let Some(svg) = &entry.svg {
            write_atomic(dir, &format!("{key}.svg"), svg);
        }
        write_atomic(dir, &format!("{key}.out"), &entry.stdout);
    }
}

fn write_atomic(dir: &std::path::Path, name: &str, bytes: &[u8]) {
    let tmp = dir.join(format!(".{name}.{}.tmp", std::process::id()));
    let ok = fs::File::create(&tmp)
        .and_then(|mut f| f.write_all(bytes))
        .is_ok();
    if ok {
        let _ = fs::rename(&tmp, dir.join(name));
    } else {
        let _ = fs::remove_file(&tmp);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keys_are_stable_and_field_separated() {
        assert_eq!(key(&["a", "bc"]), key(&["a", "bc"]));
        assert_ne!(key(&["ab", "c"]), key(&["a", "bc"]));
        assert_eq!(key(&["x"]).len(), 64);
    }
}
