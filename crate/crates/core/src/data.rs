//! Golden data files with SHA-256 checksums.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

pub const CHECKSUM_FILE: &str = "SHA256SUMS";

pub const DATA_ENV: &str = "KMV_DATA_DIR";

/// Data directory: explicit path, then `KMV_DATA_DIR`, then the repository copy.
pub fn resolve_data_dir(explicit: Option<&Path>) -> PathBuf {
    if let Some(p) = explicit {
        return p.to_path_buf();
    }
    if let Some(p) = std::env::var_os(DATA_ENV) {
        return PathBuf::from(p);
    }
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Parses `sha256sum` output: `<hex>  <name>` per line.
pub fn parse_checksums(src: &str) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for (no, line) in src.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let (h, name) = line
            .split_once(char::is_whitespace)
            .ok_or_else(|| Error::Parse(format!("{CHECKSUM_FILE} line {}: `{line}`", no + 1)))?;
        let name = name.trim_start().trim_start_matches('*');
        if h.len() != 64 || !h.chars().all(|c| c.is_ascii_hexdigit()) {
            return Err(Error::Parse(format!("{CHECKSUM_FILE} line {}: bad digest", no + 1)));
        }
        out.insert(name.to_string(), h.to_ascii_lowercase());
    }
    Ok(out)
}

/// Writes checksums for every regular file of `dir` except the checksum file itself.
pub fn write_checksums(dir: &Path) -> Result<BTreeMap<String, String>> {
    let mut sums = BTreeMap::new();
    let entries = std::fs::read_dir(dir).map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?;
    for e in entries {
        let e = e.map_err(|e| Error::Io(e.to_string()))?;
        let name = e.file_name().to_string_lossy().to_string();
        if name == CHECKSUM_FILE || !e.path().is_file() {
            continue;
        }
        let bytes = std::fs::read(e.path()).map_err(|e| Error::Io(format!("{name}: {e}")))?;
        sums.insert(name, sha256_hex(&bytes));
    }
    let body: String = sums.iter().map(|(n, h)| format!("{h}  {n}\n")).collect();
    std::fs::write(dir.join(CHECKSUM_FILE), body).map_err(|e| Error::Io(e.to_string()))?;
    Ok(sums)
}

/// Verified contents of the data directory.
#[derive(Clone, Debug)]
pub struct DataSet {
    pub dir: PathBuf,
    files: BTreeMap<String, String>,
    checksums: BTreeMap<String, String>,
}

impl DataSet {
    /// Reads every file listed in the checksum file and checks its digest.
    pub fn load(dir: &Path) -> Result<DataSet> {
        let sums_path = dir.join(CHECKSUM_FILE);
        let sums = std::fs::read_to_string(&sums_path)
            .map_err(|e| Error::DataIntegrity(format!("{}: {e}", sums_path.display())))?;
        let checksums = parse_checksums(&sums)?;
        let mut files = BTreeMap::new();
        for (name, expect) in &checksums {
            let p = dir.join(name);
            let bytes = std::fs::read(&p)
                .map_err(|e| Error::DataIntegrity(format!("{}: {e}", p.display())))?;
            let got = sha256_hex(&bytes);
            if &got != expect {
                return Err(Error::DataIntegrity(format!("{name}: checksum {got} != {expect}")));
            }
            let text = String::from_utf8(bytes)
                .map_err(|_| Error::DataIntegrity(format!("{name}: not UTF-8")))?;
            files.insert(name.clone(), text);
        }
        Ok(DataSet { dir: dir.to_path_buf(), files, checksums })
    }

    pub fn get(&self, name: &str) -> Result<&str> {
        self.files
            .get(name)
            .map(String::as_str)
            .ok_or_else(|| Error::DataIntegrity(format!("{name} is not listed in {CHECKSUM_FILE}")))
    }

    pub fn checksums(&self) -> &BTreeMap<String, String> {
        &self.checksums
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digest_of_empty_input() {
        assert_eq!(
            sha256_hex(b""),
            "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855"
        );
    }

    #[test]
    fn checksum_lines() {
        let h = "a".repeat(64);
        let m = parse_checksums(&format!("{h}  x.vec\n\n{h} *y.ug\n")).unwrap();
        assert_eq!(m.len(), 2);
        assert!(parse_checksums("zz  x").is_err());
    }
}
