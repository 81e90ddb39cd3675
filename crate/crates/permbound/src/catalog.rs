//! On-disk transitive-group catalogs.
//!
//! Layout: `<root>/<mode>/degree-<n>/index.json` plus one group file per
//! entry, named after the entry id (`6.11.grp`).

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use permbound_core::enumerate::{
    enumerate_transitive, CatalogEntry, EnumerateOptions, Mode, TransitiveCatalog,
};
use serde::{Deserialize, Serialize};

use crate::groupfile;
use crate::report::SCHEMA_VERSION;

pub const CACHE_ENV: &str = "PERMBOUND_CACHE_DIR";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexEntry {
    pub id: String,
    pub order: String,
    pub file: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogIndex {
    pub schema_version: u32,
    pub degree: usize,
    pub mode: String,
    pub entries: Vec<IndexEntry>,
}

pub fn parse_mode(s: &str) -> Result<Mode> {
    match s {
        "exhaustive" => Ok(Mode::Exhaustive),
        "curated" => Ok(Mode::Curated),
        _ => bail!("unknown mode {s:?} (expected exhaustive or curated)"),
    }
}

pub fn cache_dir_from_env() -> Option<PathBuf> {
    std::env::var_os(CACHE_ENV)
        .filter(|v| !v.is_empty())
        .map(PathBuf::from)
}

fn degree_dir(root: &Path, degree: usize, mode: Mode) -> PathBuf {
    root.join(mode.as_str()).join(format!("degree-{degree}"))
}

/// Writes group files and the index into `dir`, returning the index path.
pub fn write_catalog(catalog: &TransitiveCatalog, dir: &Path) -> Result<PathBuf> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let mut entries = Vec::new();
    for e in &catalog.entries {
        let id = e.id();
        let file = format!("{id}.grp");
        let comment = format!("transitive group {id}, order {}", e.order);
        groupfile::write(&dir.join(&file), &e.group, Some(&comment))?;
        entries.push(IndexEntry {
            id,
            order: e.order.to_string(),
            file,
        });
    }
    let index = CatalogIndex {
        schema_version: SCHEMA_VERSION,
        degree: catalog.degree,
        mode: catalog.mode.as_str().to_string(),
        entries,
    };
    let path = dir.join("index.json");
    fs::write(&path, serde_json::to_string_pretty(&index)? + "\n")
        .with_context(|| format!("writing {}", path.display()))?;
    Ok(path)
}

/// Reads a catalog written by [`write_catalog`], checking every order.
pub fn read_catalog(dir: &Path) -> Result<TransitiveCatalog> {
    let path = dir.join("index.json");
    let text = fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
    let index: CatalogIndex =
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    if index.schema_version != SCHEMA_VERSION {
        bail!(
            "{}: schema version {} not supported",
            path.display(),
            index.schema_version
        );
    }
    let mode = parse_mode(&index.mode)?;
    let mut entries = Vec::with_capacity(index.entries.len());
    for (i, ie) in index.entries.iter().enumerate() {
        let group = groupfile::read(&dir.join(&ie.file))?;
        if group.degree() != index.degree {
            bail!(
                "{}: degree {} in a degree-{} catalog",
                ie.file,
                group.degree(),
                index.degree
            );
        }
        let order = group.order();
        if order.to_string() != ie.order {
            bail!("{}: order {} but index says {}", ie.file, order, ie.order);
        }
        entries.push(CatalogEntry {
            degree: index.degree,
            index: i + 1,
            group,
            order,
        });
    }
    Ok(TransitiveCatalog {
        degree: index.degree,
        mode,
        entries,
    })
}

/// The catalog of degree `n`, from `cache` when present there, otherwise
/// enumerated (and then stored when a cache directory is given).
pub fn load_or_enumerate(
    degree: usize,
    opts: &EnumerateOptions,
    cache: Option<&Path>,
) -> Result<TransitiveCatalog> {
    if let Some(root) = cache {
        let dir = degree_dir(root, degree, opts.mode);
        if dir.join("index.json").is_file() {
            return read_catalog(&dir);
        }
    }
    let catalog = enumerate_transitive(degree, opts)?;
    if let Some(root) = cache {
        write_catalog(&catalog, &degree_dir(root, degree, opts.mode))?;
    }
    Ok(catalog)
}
