//! JSON artifact files guarded by a content hash.
//!
//! Layout: one header line `{"format":"icosa-e8-cache/1","kind":…,"sha256":…}`
//! followed by the compact JSON payload. The hash covers the payload bytes.

use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

const FORMAT: &str = "icosa-e8-cache/1";

#[derive(Serialize, Deserialize)]
struct Header {
    format: String,
    kind: String,
    sha256: String,
}

fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub fn store<T: Serialize>(path: &Path, kind: &str, value: &T) -> Result<()> {
    let payload = serde_json::to_string(value)?;
    let header = Header { format: FORMAT.into(), kind: kind.into(), sha256: digest(payload.as_bytes()) };
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    fs::write(path, format!("{}\n{payload}", serde_json::to_string(&header)?))?;
    Ok(())
}

/// Loads a stored artifact; any header, kind or hash mismatch is
/// [`Error::StaleCache`].
pub fn load<T: DeserializeOwned>(path: &Path, kind: &str) -> Result<T> {
    let text = fs::read_to_string(path)?;
    let stale = || Error::StaleCache { path: path.display().to_string() };
    let (head, payload) = text.split_once('\n').ok_or_else(stale)?;
    let header: Header = serde_json::from_str(head).map_err(|_| stale())?;
    if header.format != FORMAT || header.kind != kind || header.sha256 != digest(payload.as_bytes()) {
        return Err(stale());
    }
    serde_json::from_str(payload).map_err(|_| stale())
}

/// Loads from `path` when present and fresh; otherwise computes and stores.
/// The flag reports whether the cached copy was used.
pub fn load_or_compute<T, F>(path: &Path, kind: &str, compute: F) -> Result<(T, bool)>
where
    T: Serialize + DeserializeOwned,
    F: FnOnce() -> Result<T>,
{
    match load(path, kind) {
        Ok(v) => return Ok((v, true)),
        Err(Error::StaleCache { .. }) => {}
        Err(Error::Io(e)) if e.kind() == std::io::ErrorKind::NotFound => {}
        Err(e) => return Err(e),
    }
    let v = compute()?;
    store(path, kind, &v)?;
    Ok((v, false))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupkit::{build_cayley, character_table, CharacterTableOptions, FiniteGroupTable};
    use crate::icosian::gamma_enumerate;
    use crate::lattice::{e8_standard_basis, short_vectors};
    use crate::numberfield::rat_int;
    use crate::groupkit::CharacterTable;

    #[test]
    fn round_trips() {
        let dir = tempfile::tempdir().unwrap();
        let g = gamma_enumerate().unwrap();
        let t = build_cayley(&g).unwrap();
        let p = dir.path().join("cayley.json");
        store(&p, "cayley", &t).unwrap();
        assert_eq!(load::<FiniteGroupTable>(&p, "cayley").unwrap(), t);

        let ct = character_table(&t, CharacterTableOptions::default()).unwrap();
        let p = dir.path().join("chars.json");
        store(&p, "character-table", &ct).unwrap();
        assert_eq!(load::<CharacterTable>(&p, "character-table").unwrap(), ct);

        let sv = short_vectors(&e8_standard_basis(), &rat_int(4));
        let p = dir.path().join("sub/short.json");
        store(&p, "short-vectors", &sv).unwrap();
        assert_eq!(load::<Vec<Vec<i64>>>(&p, "short-vectors").unwrap(), sv);
        assert!(matches!(load::<Vec<Vec<i64>>>(&p, "cayley"), Err(Error::StaleCache { .. })));
    }

    #[test]
    fn tampering_is_detected() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("x.json");
        store(&p, "v", &vec![1, 2, 3]).unwrap();
        let text = fs::read_to_string(&p).unwrap().replace("[1,2,3]", "[1,2,4]");
        fs::write(&p, text).unwrap();
        assert!(matches!(load::<Vec<i32>>(&p, "v"), Err(Error::StaleCache { .. })));
        let (v, hit) = load_or_compute(&p, "v", || Ok(vec![1, 2, 3])).unwrap();
        assert_eq!((v, hit), (vec![1, 2, 3], false));
        let (_, hit) = load_or_compute(&p, "v", || Ok(vec![0])).unwrap();
        assert!(hit);
        let missing = dir.path().join("none.json");
        assert!(!load_or_compute(&missing, "v", || Ok(vec![7])).unwrap().1);
    }
}
