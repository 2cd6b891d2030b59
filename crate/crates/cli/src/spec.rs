//! Group specifications: `catalog_name:parameter`, a bare
//! `regular_dihedral8`, or `file:path` pointing at a generator file.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use quadembed::permgroup::{
    catalog, close, parse_generator_file, PermGroup, CATALOG_NAMES, DEFAULT_CAP,
};

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Catalog { name: String, parameter: usize },
    File(PathBuf),
}

impl FromStr for GroupSpec {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        let s = s.trim();
        if let Some(path) = s.strip_prefix("file:") {
            if path.is_empty() {
                return Err(CliError::Usage("empty path in group spec `file:`".into()));
            }
            return Ok(GroupSpec::File(PathBuf::from(path)));
        }
        let (name, parameter) = match s.split_once(':') {
            Some((name, p)) => {
                let parameter = p.parse().map_err(|_| {
                    CliError::Usage(format!("invalid parameter {p:?} in group spec {s:?}"))
                })?;
                (name, parameter)
            }
            None if s == "regular_dihedral8" => (s, 8),
            None => {
                return Err(CliError::Usage(format!(
                    "group spec {s:?} must be `name:parameter` or `file:path`"
                )))
            }
        };
        if !CATALOG_NAMES.contains(&name) {
            return Err(CliError::Usage(format!(
                "unknown group {name:?}; expected one of {}",
                CATALOG_NAMES.join(", ")
            )));
        }
        Ok(GroupSpec::Catalog {
            name: name.to_string(),
            parameter,
        })
    }
}

impl GroupSpec {
    pub fn load(&self, cap: usize) -> Result<PermGroup, CliError> {
        match self {
            GroupSpec::Catalog { name, parameter } => Ok(catalog(name, *parameter)?),
            GroupSpec::File(path) => load_generator_file(path, cap),
        }
    }
}

pub fn load_generator_file(path: &Path, cap: usize) -> Result<PermGroup, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let (_, gens) = parse_generator_file(&text)
        .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    let stem = path.file_stem().map_or_else(
        || path.display().to_string(),
        |s| s.to_string_lossy().into_owned(),
    );
    Ok(close(&gens, cap)?.with_name(format!("file:{stem}")))
}

pub fn default_cap() -> usize {
    DEFAULT_CAP
}
