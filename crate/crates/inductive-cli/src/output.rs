//! Atomic file output: content is fully rendered in memory, written to a
//! temporary file in the target directory, then renamed into place, so a
//! failed run never leaves a partial artifact.

use std::fs;
use std::path::{Path, PathBuf};

use crate::CliError;

pub fn write_atomic(dir: &Path, file_name: &str, content: &str) -> Result<PathBuf, CliError> {
    fs::create_dir_all(dir)
        .map_err(|e| CliError::Io(format!("creating {}: {e}", dir.display())))?;
    let final_path = dir.join(file_name);
    let tmp_path = dir.join(format!("{file_name}.tmp"));
    fs::write(&tmp_path, content)
        .map_err(|e| CliError::Io(format!("writing {}: {e}", tmp_path.display())))?;
    if let Err(e) = fs::rename(&tmp_path, &final_path) {
        let _ = fs::remove_file(&tmp_path);
        return Err(CliError::Io(format!(
            "renaming {} into place: {e}",
            tmp_path.display()
        )));
    }
    Ok(final_path)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn writes_and_replaces() {
        let dir = std::env::temp_dir().join(format!("inductive-out-{}", std::process::id()));
        let path = write_atomic(&dir, "a.csv", "x\n").unwrap();
        assert_eq!(fs::read_to_string(&path).unwrap(), "x\n");
        write_atomic(&dir, "a.csv", "y\n").unwrap();
        assert_eq!(fs::read_to_string(&path).unwrap(), "y\n");
        assert!(!dir.join("a.csv.tmp").exists());
        fs::remove_dir_all(&dir).unwrap();
    }
}
