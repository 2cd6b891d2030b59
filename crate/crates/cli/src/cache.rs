//! On-disk cache of pencil polynomials keyed by group and triple class.
//!
//! Layout: `<root>/<group-hash>/<a>_<b>_<c>.json` where `(a, b, c)` is the
//! class representative. Writes go through a temporary file and a rename,
//! so readers see either nothing or a complete entry.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use quadembed::{PermGroup, Triple};
use sha2::{Digest, Sha256};

use crate::error::CliError;
use crate::report::PolyEntryJson;

pub const CACHE_ENV: &str = "QUADEMBED_CACHE_DIR";

/// Stable hash of a group: degree plus the sorted element images.
pub fn group_hash(g: &PermGroup) -> String {
    let mut h = Sha256::new();
    h.update((g.degree() as u64).to_le_bytes());
    for p in g.elements() {
        for &i in p.images() {
            h.update((i as u64).to_le_bytes());
        }
    }
    hex::encode(h.finalize())
}

#[derive(Clone, Debug)]
pub struct PolyCache {
    dir: PathBuf,
}

impl PolyCache {
    pub fn new(root: &Path, g: &PermGroup) -> Self {
        PolyCache {
            dir: root.join(group_hash(g)),
        }
    }

    pub fn default_root() -> Option<PathBuf> {
        std::env::var_os(CACHE_ENV)
            .filter(|v| !v.is_empty())
            .map(PathBuf::from)
    }

    fn path(&self, rep: Triple) -> PathBuf {
        self.dir.join(format!("{}_{}_{}.json", rep.a, rep.b, rep.c))
    }

    /// Missing or unreadable entries yield `None`.
    pub fn get(&self, rep: Triple) -> Option<PolyEntryJson> {
        let bytes = fs::read(self.path(rep)).ok()?;
        serde_json::from_slice(&bytes).ok()
    }

    pub fn put(&self, rep: Triple, entry: &PolyEntryJson) -> Result<(), CliError> {
        let io = |e: std::io::Error| CliError::Io(format!("cache {}: {e}", self.dir.display()));
        fs::create_dir_all(&self.dir).map_err(io)?;
        let target = self.path(rep);
        let tmp = self.dir.join(format!(
            ".{}_{}_{}.{}.tmp",
            rep.a,
            rep.b,
            rep.c,
            std::process::id()
        ));
        let mut f = fs::File::create(&tmp).map_err(io)?;
        f.write_all(&serde_json::to_vec(entry).expect("entries serialize"))
            .map_err(io)?;
        f.sync_all().map_err(io)?;
        fs::rename(&tmp, &target).map_err(io)
    }
}
