use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use rug::Float;
use twobridge::geometry::{Alpha0Record, ConeGeometry};
use twobridge::numeric::PrecisionConfig;
use twobridge::{Error, Result};

/// Store of `alpha_0` records. Only the thread that owns it reads or
/// writes the file.
#[derive(Debug, Default)]
pub struct Alpha0Cache {
    path: Option<PathBuf>,
    records: Vec<Alpha0Record>,
    dirty: bool,
}

impl Alpha0Cache {
    pub fn open(path: Option<&Path>) -> Result<Self> {
        let Some(path) = path else {
            return Ok(Self::default());
        };
        let records = match fs::read_to_string(path) {
            Ok(text) if text.trim().is_empty() => Vec::new(),
            Ok(text) => serde_json::from_str(&text)
                .map_err(|e| Error::Format(format!("cache {}: {e}", path.display())))?,
            Err(e) if e.kind() == io::ErrorKind::NotFound => Vec::new(),
            Err(e) => return Err(Error::Format(format!("cache {}: {e}", path.display()))),
        };
        Ok(Alpha0Cache { path: Some(path.to_path_buf()), records, dirty: false })
    }

    pub fn lookup(&self, n: i64, cfg: &PrecisionConfig) -> Option<Float> {
        self.records.iter().find(|r| r.matches(n, cfg)).and_then(|r| r.value().ok())
    }

    pub fn insert(&mut self, geo: &ConeGeometry) {
        let rec = Alpha0Record::new(geo.n(), geo.alpha0_info(), geo.cfg());
        if self.records.contains(&rec) {
            return;
        }
        self.records.retain(|r| !r.matches(rec.n, geo.cfg()));
        self.records.push(rec);
        self.dirty = true;
    }

    pub fn save(&mut self) -> Result<()> {
        let Some(path) = &self.path else { return Ok(()) };
        if !self.dirty {
            return Ok(());
        }
        self.records.sort_by(|a, b| (a.n, a.bits, &a.tol).cmp(&(b.n, b.bits, &b.tol)));
        let text = serde_json::to_string_pretty(&self.records).map_err(|e| Error::Format(e.to_string()))?;
        let tmp = path.with_extension("tmp");
        fs::write(&tmp, text + "\n")
            .and_then(|_| fs::rename(&tmp, path))
            .map_err(|e| Error::Format(format!("cache {}: {e}", path.display())))?;
        self.dirty = false;
        Ok(())
    }
}

/// The geometry for `n`, from a cached `alpha_0` when one matches.
pub fn geometry(n: i64, hint: Option<&Float>, cfg: &PrecisionConfig) -> Result<ConeGeometry> {
    match hint {
        Some(a) => ConeGeometry::with_alpha0(n, a, cfg),
        None => ConeGeometry::new(n, cfg),
    }
}
