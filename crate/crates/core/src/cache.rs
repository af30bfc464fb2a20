//! Degree tables persisted as text.
//!
//! A cache file starts with a header line
//!
//! ```text
//! mapcensus-cache<TAB>v1<TAB>family=t.torus.r4<TAB>n_max=20<TAB>sha256=<hex>
//! ```
//!
//! followed by one `family<TAB>n<TAB>d<TAB>value` line per cell. The checksum
//! covers every byte after the header line. Loading also recomputes three
//! random low cells and compares them.

use std::fs;
use std::path::{Path, PathBuf};

use rand::Rng;
use sha2::{Digest, Sha256};

use crate::bigmath::BigCount;
use crate::error::{CensusError, Result};
use crate::records::parse_count;
use crate::recurrence::{build_family, DegreeTable, FamilyId};

pub const CACHE_MAGIC: &str = "mapcensus-cache";
pub const CACHE_VERSION: &str = "v1";

/// Highest row recomputed by the load-time spot check.
const SPOT_ROWS: usize = 12;
const SPOT_CELLS: usize = 3;

fn body_of(table: &DegreeTable) -> String {
    let tag = table.family().tag();
    let mut body = String::new();
    for (n, d, v) in table.cells() {
        body.push_str(&format!("{tag}\t{n}\t{d}\t{v}\n"));
    }
    body
}

fn digest(body: &str) -> String {
    Sha256::digest(body.as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

/// Serializes a table, header included.
pub fn render_table(table: &DegreeTable) -> String {
    let body = body_of(table);
    format!(
        "{CACHE_MAGIC}\t{CACHE_VERSION}\tfamily={}\tn_max={}\tsha256={}\n{body}",
        table.family().tag(),
        table.n_max(),
        digest(&body)
    )
}

struct Header {
    family: FamilyId,
    n_max: usize,
    sha256: String,
}

fn parse_header(line: &str) -> Result<Header> {
    let fields: Vec<&str> = line.split('\t').collect();
    if fields.first() != Some(&CACHE_MAGIC) {
        return Err(CensusError::CacheFormat("missing cache header".into()));
    }
    let version = fields.get(1).copied().unwrap_or_default();
    if version != CACHE_VERSION {
        return Err(CensusError::CacheVersion {
            found: version.to_string(),
            expected: CACHE_VERSION.to_string(),
        });
    }
    let field = |key: &str| {
        fields[2..]
            .iter()
            .find_map(|f| f.strip_prefix(key).and_then(|x| x.strip_prefix('=')))
            .ok_or_else(|| CensusError::CacheFormat(format!("header lacks {key}")))
    };
    let tag = field("family")?;
    let family = FamilyId::parse_tag(tag)
        .ok_or_else(|| CensusError::CacheFormat(format!("unknown family {tag}")))?;
    let n_max = field("n_max")?
        .parse()
        .map_err(|_| CensusError::CacheFormat("bad n_max".into()))?;
    Ok(Header {
        family,
        n_max,
        sha256: field("sha256")?.to_string(),
    })
}

/// Parses a rendered table, checking header, checksum and cell layout.
pub fn parse_table(text: &str) -> Result<DegreeTable> {
    let (head, body) = text
        .split_once('\n')
        .ok_or_else(|| CensusError::CacheFormat("empty cache file".into()))?;
    let header = parse_header(head)?;
    let actual = digest(body);
    if actual != header.sha256 {
        return Err(CensusError::CacheChecksum(format!(
            "header says {}, body hashes to {actual}",
            header.sha256
        )));
    }
    let tag = header.family.tag();
    let mut rows: Vec<Vec<BigCount>> = (0..=header.n_max)
        .map(|n| Vec::with_capacity(2 * n + 1))
        .collect();
    for (k, line) in body.lines().enumerate() {
        let bad = || CensusError::CacheFormat(format!("line {}: {line:?}", k + 2));
        let parts: Vec<&str> = line.split('\t').collect();
        let [fam, n, d, value] = parts[..] else {
            return Err(bad());
        };
        let n: usize = n.parse().map_err(|_| bad())?;
        let d: usize = d.parse().map_err(|_| bad())?;
        if fam != tag || n > header.n_max || rows[n].len() != d {
            return Err(bad());
        }
        rows[n].push(parse_count(value).map_err(|_| bad())?);
    }
    DegreeTable::from_rows(header.family, rows).map_err(|e| CensusError::CacheFormat(e.to_string()))
}

/// Recomputes a few random cells from the first rows and compares them.
pub fn spot_check<R: Rng + ?Sized>(table: &DegreeTable, rng: &mut R) -> Result<()> {
    let rows = table.n_max().min(SPOT_ROWS);
    let fresh = build_family(table.family(), rows)?;
    for _ in 0..SPOT_CELLS {
        let n = rng.gen_range(0..=rows) as i64;
        let d = rng.gen_range(0..=2 * n);
        if table.get(n, d) != fresh.get(n, d) {
            return Err(CensusError::CacheChecksum(format!(
                "cell ({n}, {d}) of {} is {}, recomputed {}",
                table.family(),
                table.get(n, d),
                fresh.get(n, d)
            )));
        }
    }
    Ok(())
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CensusError + '_ {
    move |source| CensusError::CacheIo {
        path: path.to_path_buf(),
        source,
    }
}

/// Writes the table through a temporary file and a rename.
pub fn store_table(path: &Path, table: &DegreeTable) -> Result<()> {
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, render_table(table)).map_err(io_err(&tmp))?;
    fs::rename(&tmp, path).map_err(io_err(path))
}

pub fn load_table(path: &Path) -> Result<DegreeTable> {
    load_table_with(path, &mut rand::thread_rng())
}

pub fn load_table_with<R: Rng + ?Sized>(path: &Path, rng: &mut R) -> Result<DegreeTable> {
    let text = fs::read_to_string(path).map_err(io_err(path))?;
    let table = parse_table(&text)?;
    spot_check(&table, rng)?;
    Ok(table)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CacheStatus {
    /// Loaded from disk.
    Hit,
    /// Not on disk, computed and stored.
    Built,
    /// On disk but too small, recomputed and stored.
    Extended,
}

/// A directory of cached tables, one file per family.
#[derive(Debug, Clone)]
pub struct TableCache {
    dir: PathBuf,
}

impl TableCache {
    pub fn new(dir: impl Into<PathBuf>) -> TableCache {
        TableCache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, family: FamilyId) -> PathBuf {
        self.dir.join(format!("{}.tsv", family.tag()))
    }

    /// Returns a table covering at least `n_max` edges. A cached file that
    /// fails validation is an error, never silently replaced.
    pub fn load_or_build(
        &self,
        family: FamilyId,
        n_max: usize,
    ) -> Result<(DegreeTable, CacheStatus)> {
        let path = self.path_for(family);
        let mut status = CacheStatus::Built;
        if path.exists() {
            let table = load_table(&path)?;
            if table.family() != family {
                return Err(CensusError::CacheFormat(format!(
                    "{} holds {}",
                    path.display(),
                    table.family()
                )));
            }
            if table.n_max() >= n_max {
                return Ok((table, CacheStatus::Hit));
            }
            status = CacheStatus::Extended;
        }
        fs::create_dir_all(&self.dir).map_err(io_err(&self.dir))?;
        let table = build_family(family, n_max)?;
        store_table(&path, &table)?;
        Ok((table, status))
    }
}
