//! On-disk cache of the bifurcation constants, keyed by solver tolerance.

use std::path::{Path, PathBuf};

use merosin::paramlab::{compute_constants, BifurcationConstants};
use merosin::{Error, Result};
use serde::{Deserialize, Serialize};

/// Residual tolerance the constants are solved to; part of the cache key.
pub const TOLERANCE: f64 = 1e-11;

#[derive(Debug, Serialize, Deserialize)]
struct CacheFile {
    tolerance: f64,
    constants: BifurcationConstants,
}

pub fn default_dir() -> PathBuf {
    if let Some(d) = std::env::var_os("XDG_CACHE_HOME") {
        return PathBuf::from(d).join("merosin");
    }
    if let Some(h) = std::env::var_os("HOME") {
        return PathBuf::from(h).join(".cache").join("merosin");
    }
    std::env::temp_dir().join("merosin")
}

pub fn cache_path(dir: &Path) -> PathBuf {
    dir.join(format!("constants-tol-{TOLERANCE:e}.json"))
}

fn read(path: &Path) -> Option<BifurcationConstants> {
    let text = std::fs::read_to_string(path).ok()?;
    let file: CacheFile = serde_json::from_str(&text).ok()?;
    (file.tolerance == TOLERANCE).then_some(file.constants)
}

pub fn write(dir: &Path, c: &BifurcationConstants) -> Result<()> {
    let io = |e: std::io::Error, p: &Path| Error::Io { path: p.to_path_buf(), message: e.to_string() };
    std::fs::create_dir_all(dir).map_err(|e| io(e, dir))?;
    let path = cache_path(dir);
    let text = serde_json::to_string_pretty(&CacheFile { tolerance: TOLERANCE, constants: *c })
        .expect("constants serialize");
    std::fs::write(&path, text).map_err(|e| io(e, &path))
}

/// Cached constants, recomputed and rewritten when the file is absent or
/// unreadable. `None` skips the cache entirely.
pub fn load_or_compute(dir: Option<&Path>) -> Result<BifurcationConstants> {
    let Some(dir) = dir else {
        return compute_constants();
    };
    if let Some(c) = read(&cache_path(dir)) {
        return Ok(c);
    }
    let c = compute_constants()?;
    // a read-only cache location is not fatal
    let _ = write(dir, &c);
    Ok(c)
}
