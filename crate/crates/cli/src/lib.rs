//! Library surface of the command-line front end: manifest schema, build
//! pipeline, report rendering, and command implementations. The binary in
//! `main.rs` is a thin argument-parsing wrapper.

pub mod commands;
pub mod manifest;
pub mod report;

use std::path::Path;

pub use commands::{CheckKind, Ctx};
pub use manifest::{Manifest, ManifestError};

/// Load a manifest file and its digest.
pub fn load_manifest(path: &Path) -> anyhow::Result<(Manifest, String)> {
    let bytes = std::fs::read(path)
        .map_err(|e| anyhow::anyhow!("cannot read manifest {}: {}", path.display(), e))?;
    let manifest: Manifest = serde_json::from_slice(&bytes)
        .map_err(|e| anyhow::anyhow!("invalid manifest {}: {}", path.display(), e))?;
    Ok((manifest, report::digest_hex(&bytes)))
}
