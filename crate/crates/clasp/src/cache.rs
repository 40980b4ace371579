//! On-disk cache of σ tables keyed by `(a, b, p, library version)`.
//!
//! Location: `$CLASP_CACHE_DIR`, else `$XDG_CACHE_HOME/clasp`, else
//! `$HOME/.cache/clasp`. Entries are written atomically via rename.

use std::fs;
use std::path::{Path, PathBuf};

use clasp_core::cg::{cg_table, CgTable};
use clasp_core::knot::TwoBridgeKnot;

use crate::error::CliError;
use crate::format::CachedTable;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CacheStatus {
    Hit,
    Miss,
    Disabled,
}

/// Result of comparing a stored entry against a fresh computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Audit {
    Absent,
    Intact,
    Corrupt,
}

#[derive(Debug, Clone)]
pub struct TableCache {
    dir: Option<PathBuf>,
}

impl TableCache {
    pub fn from_env() -> Self {
        let env = |k: &str| std::env::var_os(k).filter(|v| !v.is_empty()).map(PathBuf::from);
        let dir = env("CLASP_CACHE_DIR")
            .or_else(|| env("XDG_CACHE_HOME").map(|d| d.join("clasp")))
            .or_else(|| env("HOME").map(|d| d.join(".cache").join("clasp")));
        TableCache { dir }
    }

    pub fn at(dir: impl Into<PathBuf>) -> Self {
        TableCache { dir: Some(dir.into()) }
    }

    pub fn disabled() -> Self {
        TableCache { dir: None }
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    pub fn entry_path(&self, a: u64, b: u64, p: u64) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(format!("sigma-v{}-{a}-{b}-p{p}.json", clasp_core::LIBRARY_VERSION)))
    }

    fn read(&self, path: &Path) -> Result<Option<String>, CliError> {
        match fs::read_to_string(path) {
            Ok(s) => Ok(Some(s)),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(None),
            Err(e) => Err(CliError::io(path.display().to_string(), e)),
        }
    }

    pub fn load(&self, knot: &TwoBridgeKnot, p: u64) -> Result<Option<CgTable>, CliError> {
        let Some(path) = self.entry_path(knot.a(), knot.b(), p) else {
            return Ok(None);
        };
        let Some(text) = self.read(&path)? else {
            return Ok(None);
        };
        let entry: CachedTable = serde_json::from_str(&text)
            .map_err(|e| CliError::Format(format!("corrupt cache entry {}: {e}", path.display())))?;
        if entry.p != p || entry.library_version != clasp_core::LIBRARY_VERSION {
            return Err(CliError::Format(format!("cache entry {} has a mismatched key", path.display())));
        }
        entry.into_table(knot.clone()).map(Some)
    }

    pub fn store(&self, table: &CgTable) -> Result<(), CliError> {
        let Some(path) = self.entry_path(table.knot().a(), table.knot().b(), table.p()) else {
            return Ok(());
        };
        let dir = path.parent().expect("entry path has a parent");
        fs::create_dir_all(dir).map_err(|e| CliError::io(dir.display().to_string(), e))?;
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        let body = CachedTable::from_table(table).to_json()?;
        fs::write(&tmp, body).map_err(|e| CliError::io(tmp.display().to_string(), e))?;
        fs::rename(&tmp, &path).map_err(|e| CliError::io(path.display().to_string(), e))
    }

    /// Cached table if present, else compute and store it.
    pub fn get_or_compute(&self, knot: &TwoBridgeKnot, p: u64) -> Result<(CgTable, CacheStatus), CliError> {
        if self.dir.is_none() {
            return Ok((cg_table(knot, p)?, CacheStatus::Disabled));
        }
        if let Some(t) = self.load(knot, p)? {
            return Ok((t, CacheStatus::Hit));
        }
        let t = cg_table(knot, p)?;
        self.store(&t)?;
        Ok((t, CacheStatus::Miss))
    }

    /// Byte-compares a stored entry with a freshly serialized recomputation.
    pub fn audit(&self, knot: &TwoBridgeKnot, p: u64) -> Result<Audit, CliError> {
        let Some(path) = self.entry_path(knot.a(), knot.b(), p) else {
            return Ok(Audit::Absent);
        };
        let Some(stored) = self.read(&path)? else {
            return Ok(Audit::Absent);
        };
        let fresh = CachedTable::from_table(&cg_table(knot, p)?).to_json()?;
        Ok(if stored == fresh { Audit::Intact } else { Audit::Corrupt })
    }

    /// Audits every entry in the cache directory.
    pub fn audit_all(&self) -> Result<Vec<(PathBuf, Audit)>, CliError> {
        let Some(dir) = &self.dir else {
            return Ok(Vec::new());
        };
        let entries = match fs::read_dir(dir) {
            Ok(e) => e,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(Vec::new()),
            Err(e) => return Err(CliError::io(dir.display().to_string(), e)),
        };
        let mut out = Vec::new();
        for entry in entries {
            let path = entry.map_err(|e| CliError::io(dir.display().to_string(), e))?.path();
            if path.extension().is_none_or(|e| e != "json") {
                continue;
            }
            let text = self.read(&path)?.unwrap_or_default();
            let status = match serde_json::from_str::<CachedTable>(&text) {
                Ok(c) => match clasp_core::knot::two_bridge(c.a as i64, c.b as i64) {
                    Ok(k) => match self.audit(&k, c.p) {
                        Ok(a) if path == self.entry_path(k.a(), k.b(), c.p).unwrap_or_default() => a,
                        _ => Audit::Corrupt,
                    },
                    Err(_) => Audit::Corrupt,
                },
                Err(_) => Audit::Corrupt,
            };
            out.push((path, status));
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        Ok(out)
    }
}
