//! Content-addressed cache for expensive command results.
//!
//! Entries are keyed by a SHA-256 digest of the tool version tag, the
//! command name, its parameter string, and the canonical byte encoding of
//! the input complex — so isomorphic inputs presented with different
//! labelings share cache entries, and results from older tool versions are
//! invisible rather than wrong.  Writes go through a temporary file in the
//! cache directory followed by an atomic rename, which keeps concurrent
//! processes safe: readers only ever see complete entries.

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};
use sha2::{Digest, Sha256};

/// Version tag stamped into every entry; bumping the crate version
/// invalidates the cache wholesale.
fn version_tag() -> String {
    format!("simvol-cache-{}", env!("CARGO_PKG_VERSION"))
}

/// Content address for a command result.
pub fn cache_key(command: &str, params: &str, canonical_input: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(version_tag().as_bytes());
    hasher.update([0]);
    hasher.update(command.as_bytes());
    hasher.update([0]);
    hasher.update(params.as_bytes());
    hasher.update([0]);
    hasher.update(canonical_input);
    let digest = hasher.finalize();
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

fn entry_path(dir: &Path, key: &str) -> PathBuf {
    dir.join(format!("{key}.json"))
}

/// Looks up a cached payload.  A missing file is a miss; a corrupt or
/// differently-versioned file is a miss too, with a warning pushed for the
/// report's `warnings` field in the corrupt case.
pub fn cache_get(dir: &Path, key: &str, warnings: &mut Vec<String>) -> Option<Value> {
    let path = entry_path(dir, key);
    let text = match fs::read_to_string(&path) {
        Ok(text) => text,
        Err(_) => return None,
    };
    let value: Value = match serde_json::from_str(&text) {
        Ok(value) => value,
        Err(_) => {
            warnings.push(format!("ignoring corrupt cache entry {}", path.display()));
            return None;
        }
    };
    let obj = match value.as_object() {
        Some(obj) => obj,
        None => {
            warnings.push(format!("ignoring corrupt cache entry {}", path.display()));
            return None;
        }
    };
    if obj.get("version").and_then(Value::as_str) != Some(version_tag().as_str()) {
        return None;
    }
    if obj.get("key").and_then(Value::as_str) != Some(key) {
        warnings.push(format!("ignoring mislabeled cache entry {}", path.display()));
        return None;
    }
    obj.get("payload").cloned()
}

/// Stores a payload under its key, creating the directory on first use.
/// Failures are reported as warnings, never as errors: a broken cache must
/// not break a computation that has already succeeded.
pub fn cache_put(dir: &Path, key: &str, payload: &Value, warnings: &mut Vec<String>) {
    let entry = json!({
        "version": version_tag(),
        "key": key,
        "payload": payload,
    });
    if let Err(err) = try_put(dir, key, &entry) {
        warnings.push(format!("cache write failed: {err}"));
    }
}

fn try_put(dir: &Path, key: &str, entry: &Value) -> std::io::Result<()> {
    fs::create_dir_all(dir)?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    serde_json::to_writer_pretty(&mut tmp, entry)?;
    tmp.write_all(b"\n")?;
    tmp.persist(entry_path(dir, key)).map_err(|e| e.error)?;
    Ok(())
}
