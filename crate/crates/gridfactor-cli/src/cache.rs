//! On-disk matrix cache.
//!
//! Files are named by width, kind, and both serialization versions, so a
//! stale format can never be picked up by accident. A cache hit is
//! re-validated through the checksum inside the file; a corrupt file is an
//! error, never a silent rebuild.

use std::fs;
use std::path::{Path, PathBuf};

use gridfactor::alphabet::WordKind;
use gridfactor::config::Limits;
use gridfactor::error::Error;
use gridfactor::transfer::{build_matrix, TransferMatrix, FORMAT_VERSION, LETTER_TABLE_VERSION};

/// The environment variable wins over the flag; with neither, no caching.
pub fn resolve_dir(flag: Option<&Path>) -> Option<PathBuf> {
    std::env::var_os("GRIDFACTOR_CACHE_DIR")
        .map(PathBuf::from)
        .or_else(|| flag.map(Path::to_path_buf))
}

fn file_name(m: usize, kind: WordKind) -> String {
    format!(
        "matrix-{}-m{m}-v{FORMAT_VERSION}-lt{LETTER_TABLE_VERSION}.json",
        kind.as_str()
    )
}

pub fn load_or_build(
    dir: Option<&Path>,
    m: usize,
    kind: WordKind,
    limits: &Limits,
) -> Result<TransferMatrix, Error> {
    let Some(dir) = dir else {
        return build_matrix(m, kind, limits.width_cap);
    };
    let path = dir.join(file_name(m, kind));
    if path.exists() {
        let matrix = TransferMatrix::from_json(&fs::read_to_string(&path)?)?;
        if matrix.m() != m || matrix.kind() != kind {
            return Err(Error::Corrupt(format!(
                "{} holds a {} matrix of width {}, not a {} one of width {m}",
                path.display(),
                matrix.kind().as_str(),
                matrix.m(),
                kind.as_str()
            )));
        }
        return Ok(matrix);
    }
    let matrix = build_matrix(m, kind, limits.width_cap)?;
    fs::create_dir_all(dir)?;
    // write-then-rename so a concurrent reader never sees a half file
    let tmp = dir.join(format!(".{}.{}", file_name(m, kind), std::process::id()));
    fs::write(&tmp, matrix.to_json())?;
    fs::rename(&tmp, &path)?;
    Ok(matrix)
}
