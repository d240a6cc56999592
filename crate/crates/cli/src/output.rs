use std::io::Write;
use std::path::Path;

use tempfile::NamedTempFile;

use crate::failure::Failure;

/// Writes `bytes` to a temp file beside `path` and renames it into place,
/// so readers never see a half-written file.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), Failure> {
    let parent = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    std::fs::create_dir_all(parent).map_err(|e| Failure::io(parent, e))?;
    let mut tmp = NamedTempFile::new_in(parent).map_err(|e| Failure::io(parent, e))?;
    tmp.write_all(bytes).map_err(|e| Failure::io(path, e))?;
    tmp.as_file().sync_all().map_err(|e| Failure::io(path, e))?;
    tmp.persist(path).map_err(|e| Failure::io(path, e.error))?;
    Ok(())
}

/// Renders through a `Write` callback and stores the result atomically.
pub fn write_with(
    path: &Path,
    render: impl FnOnce(&mut Vec<u8>) -> std::io::Result<()>,
) -> Result<(), Failure> {
    let mut buf = Vec::new();
    render(&mut buf).map_err(|e| Failure::io(path, e))?;
    write_atomic(path, &buf)
}
