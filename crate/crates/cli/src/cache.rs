//! Optional on-disk cache of Stirling triangles under `LAPLACE_CACHE_DIR`.
//!
//! Bell and potential tables depend on the problem's `f` and are rebuilt per run.

use std::fs;
use std::path::{Path, PathBuf};

use laplace_core::exact::{install_triangle, triangle, StirlingKind, StirlingTriangle};

const ENV: &str = "LAPLACE_CACHE_DIR";
const KINDS: [(StirlingKind, &str); 2] =
    [(StirlingKind::FirstUnsigned, "stirling_first_unsigned.json"), (StirlingKind::Second, "stirling_second.json")];

pub fn dir() -> Option<PathBuf> {
    std::env::var_os(ENV).filter(|v| !v.is_empty()).map(PathBuf::from)
}

fn read(path: &Path) -> Option<StirlingTriangle> {
    let text = fs::read_to_string(path).ok()?;
    let value: serde_json::Value = match serde_json::from_str(&text) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("warning: ignoring cache {}: {e}", path.display());
            return None;
        }
    };
    match StirlingTriangle::from_json(&value) {
        Ok(t) => Some(t),
        Err(e) => {
            eprintln!("warning: ignoring cache {}: {e}", path.display());
            None
        }
    }
}

pub fn load(dir: &Path) {
    for (kind, name) in KINDS {
        if let Some(t) = read(&dir.join(name)).filter(|t| t.kind() == kind) {
            install_triangle(t);
        }
    }
}

/// Writes each triangle back if it grew past what the cache holds.
pub fn store(dir: &Path) {
    if let Err(e) = fs::create_dir_all(dir) {
        eprintln!("warning: cannot create cache dir {}: {e}", dir.display());
        return;
    }
    for (kind, name) in KINDS {
        let path = dir.join(name);
        let current = triangle(kind, 0);
        let cached = read(&path).map_or(0, |t| t.n_max());
        if current.n_max() > cached || !path.exists() {
            let text = serde_json::to_string(&current.to_json()).expect("triangle serializes");
            if let Err(e) = fs::write(&path, text) {
                eprintln!("warning: cannot write cache {}: {e}", path.display());
            }
        }
    }
}
