use crate::Failure;
use serde::Serialize;
use serde_json::{json, Value};
use std::fs;
use std::path::{Path, PathBuf};

/// Writes result files into one directory, each with a `<file>.meta.json`
/// sidecar recording the tool version, seed and command configuration.
pub struct Outputs {
    dir: PathBuf,
    meta: Value,
}

impl Outputs {
    pub fn new(dir: &Path, command: &str, seed: u64, config: &impl Serialize) -> Result<Self, Failure> {
        fs::create_dir_all(dir).map_err(|e| Failure::input(format!("cannot create {}: {e}", dir.display())))?;
        let config = serde_json::to_value(config).map_err(|e| Failure::compute(e.to_string()))?;
        Ok(Outputs {
            dir: dir.to_path_buf(),
            meta: json!({
                "tool": "hiercons",
                "version": env!("CARGO_PKG_VERSION"),
                "command": command,
                "seed": seed,
                "config": config,
            }),
        })
    }

    pub fn write(&self, name: &str, contents: impl AsRef<[u8]>) -> Result<PathBuf, Failure> {
        let path = self.dir.join(name);
        fs::write(&path, contents).map_err(|e| Failure::input(format!("cannot write {}: {e}", path.display())))?;
        let mut meta = self.meta.clone();
        meta["file"] = json!(name);
        let sidecar = self.dir.join(format!("{name}.meta.json"));
        let text = serde_json::to_string_pretty(&meta).expect("metadata is valid JSON") + "\n";
        fs::write(&sidecar, text).map_err(|e| Failure::input(format!("cannot write {}: {e}", sidecar.display())))?;
        log::info!("wrote {}", path.display());
        Ok(path)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sidecar_records_file_and_config() {
        let dir = tempfile::TempDir::new().unwrap();
        let out = Outputs::new(&dir.path().join("nested"), "sample", 7, &json!({"count": 3})).unwrap();
        let path = out.write("a.csv", "x\n").unwrap();
        assert_eq!(fs::read_to_string(&path).unwrap(), "x\n");
        let meta: Value = serde_json::from_str(&fs::read_to_string(path.with_file_name("a.csv.meta.json")).unwrap()).unwrap();
        assert_eq!(meta["file"], "a.csv");
        assert_eq!(meta["seed"], 7);
        assert_eq!(meta["command"], "sample");
        assert_eq!(meta["config"]["count"], 3);
    }
}
