//! Small shared helpers: number formatting and atomic file writes.

use std::path::Path;

use crate::error::{Error, Result};

/// Format a float at 6 significant digits, shortest round-trip rendering.
pub fn fmt_sig6(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    // clamp keeps the scale factor finite for extreme magnitudes
    let exponent = (x.abs().log10().floor() as i32).clamp(-300, 300);
    let scale = 10f64.powi(5 - exponent);
    let rounded = (x * scale).round() / scale;
    format!("{rounded}")
}

/// Write via a sibling temp file and rename, so readers never see a torn file.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let parent = path.parent().unwrap_or_else(|| Path::new("."));
    std::fs::create_dir_all(parent)
        .map_err(|e| Error::io(format!("create {}", parent.display()), e))?;
    let tmp = parent.join(format!(
        ".{}.tmp-{}",
        path.file_name().and_then(|s| s.to_str()).unwrap_or("out"),
        std::process::id()
    ));
    std::fs::write(&tmp, bytes).map_err(|e| Error::io(format!("write {}", tmp.display()), e))?;
    std::fs::rename(&tmp, path)
        .map_err(|e| Error::io(format!("rename to {}", path.display()), e))?;
    Ok(())
}
