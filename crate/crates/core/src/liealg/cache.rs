//! On-disk cache of compact bracket tables: one JSON file per Lie type with a
//! format version and a SHA-256 digest of the payload.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::compact::{BasisLabel, CompactLieAlgebra};
use crate::error::{Error, Result};
use crate::rootsys::{build_root_system, LieType};
use crate::{fmt_q, parse_q};

pub const CACHE_VERSION: u32 = 1;
pub const CACHE_ENV: &str = "FLAGEIN_CACHE_DIR";

#[derive(Serialize, Deserialize)]
struct Payload {
    lie_type: String,
    rank: usize,
    labels: Vec<BasisLabel>,
    norms: Vec<String>,
    killing_scale: String,
    table: Vec<Vec<(usize, String)>>,
}

#[derive(Serialize, Deserialize)]
struct CacheFile {
    version: u32,
    sha256: String,
    payload: Payload,
}

fn digest(p: &Payload) -> Result<String> {
    let bytes = serde_json::to_vec(p).map_err(|e| Error::Parse(e.to_string()))?;
    Ok(hex::encode(Sha256::digest(&bytes)))
}

pub fn cache_path(dir: &Path, t: LieType) -> PathBuf {
    dir.join(format!("{t}.v{CACHE_VERSION}.json"))
}

pub fn store(dir: &Path, t: LieType, alg: &CompactLieAlgebra) -> Result<PathBuf> {
    let payload = Payload {
        lie_type: t.to_string(),
        rank: alg.rank,
        labels: alg.labels.clone(),
        norms: alg.norms.iter().map(fmt_q).collect(),
        killing_scale: fmt_q(&alg.killing_scale),
        table: alg
            .raw_table()
            .iter()
            .map(|row| row.iter().map(|(i, c)| (*i, fmt_q(c))).collect())
            .collect(),
    };
    let file = CacheFile {
        version: CACHE_VERSION,
        sha256: digest(&payload)?,
        payload,
    };
    fs::create_dir_all(dir)?;
    let path = cache_path(dir, t);
    let tmp = path.with_extension("json.tmp");
    fs::write(
        &tmp,
        serde_json::to_vec(&file).map_err(|e| Error::Parse(e.to_string()))?,
    )?;
    fs::rename(&tmp, &path)?;
    Ok(path)
}

pub fn load(path: &Path, t: LieType) -> Result<CompactLieAlgebra> {
    let err = |detail: String| Error::Cache {
        path: path.to_path_buf(),
        detail,
    };
    let bytes = fs::read(path)?;
    let file: CacheFile = serde_json::from_slice(&bytes).map_err(|e| err(e.to_string()))?;
    if file.version != CACHE_VERSION {
        return Err(err(format!("version {} (expected {CACHE_VERSION})", file.version)));
    }
    if digest(&file.payload)? != file.sha256 {
        return Err(err("content hash mismatch".into()));
    }
    let p = file.payload;
    if p.lie_type != t.to_string() {
        return Err(err(format!("holds {} (expected {t})", p.lie_type)));
    }
    let norms = p.norms.iter().map(|s| parse_q(s)).collect::<Result<Vec<_>>>()?;
    let table = p
        .table
        .iter()
        .map(|row| {
            row.iter()
                .map(|(i, s)| Ok((*i, parse_q(s)?)))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    if table.len() != p.labels.len() * p.labels.len() || norms.len() != p.labels.len() {
        return Err(err("inconsistent table size".into()));
    }
    Ok(CompactLieAlgebra::from_parts(
        p.rank,
        p.labels,
        norms,
        parse_q(&p.killing_scale)?,
        table,
    ))
}

/// Loads the table for `t` from `dir` when present and valid, otherwise builds
/// it and (if `dir` is given) writes it back.
pub fn load_or_build(t: LieType, dir: Option<&Path>) -> Result<CompactLieAlgebra> {
    if let Some(dir) = dir {
        let path = cache_path(dir, t);
        if path.exists() {
            match load(&path, t) {
                Ok(alg) => {
                    log::debug!("bracket table for {t} loaded from {}", path.display());
                    return Ok(alg);
                }
                Err(e) => log::warn!("ignoring cache: {e}"),
            }
        }
    }
    let alg = CompactLieAlgebra::build(&build_root_system(t)?)?;
    if let Some(dir) = dir {
        match store(dir, t, &alg) {
            Ok(path) => log::debug!("bracket table for {t} written to {}", path.display()),
            Err(e) => log::warn!("could not write cache: {e}"),
        }
    }
    Ok(alg)
}

/// Cache directory from the environment, if set.
pub fn env_cache_dir() -> Option<PathBuf> {
    std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()).map(PathBuf::from)
}
