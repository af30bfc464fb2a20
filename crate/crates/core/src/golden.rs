//! Published tables of rooted and sensed regular maps, embedded as CSV.
//!
//! Each file has a `v,r3,r4,r5,r6` header; for odd `r` row `v` counts maps with
//! `2v` vertices.

use crate::bigmath::BigCount;
use crate::error::{CensusError, Result};
use crate::records::{parse_count, row_vertices};
use crate::recurrence::Surface;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GoldenTable {
    RootedTorus,
    RootedProjective,
    RootedKlein,
    SensedTorus,
}

impl GoldenTable {
    pub const ALL: [GoldenTable; 4] = [
        GoldenTable::RootedTorus,
        GoldenTable::RootedProjective,
        GoldenTable::RootedKlein,
        GoldenTable::SensedTorus,
    ];

    fn source(self) -> &'static str {
        match self {
            GoldenTable::RootedTorus => include_str!("../data/torus.csv"),
            GoldenTable::RootedProjective => include_str!("../data/projective.csv"),
            GoldenTable::RootedKlein => include_str!("../data/klein.csv"),
            GoldenTable::SensedTorus => include_str!("../data/sensed.csv"),
        }
    }

    pub fn surface(self) -> Surface {
        match self {
            GoldenTable::RootedProjective => Surface::Projective,
            GoldenTable::RootedKlein => Surface::Klein,
            GoldenTable::RootedTorus | GoldenTable::SensedTorus => Surface::Torus,
        }
    }

    pub fn is_sensed(self) -> bool {
        self == GoldenTable::SensedTorus
    }

    /// Parsed entries, column by column.
    pub fn entries(self) -> Result<Vec<GoldenEntry>> {
        let mut lines = self.source().lines();
        let header: Vec<&str> = lines.next().unwrap_or_default().split(',').collect();
        let degrees = header
            .iter()
            .skip(1)
            .map(|h| h.strip_prefix('r').and_then(|x| x.parse::<usize>().ok()))
            .collect::<Option<Vec<_>>>()
            .filter(|_| header.first() == Some(&"v"))
            .ok_or_else(|| bad(self, "header"))?;
        let mut out = Vec::new();
        for line in lines.filter(|l| !l.trim().is_empty()) {
            let cells: Vec<&str> = line.split(',').collect();
            if cells.len() != degrees.len() + 1 {
                return Err(bad(self, line));
            }
            let row: u64 = cells[0].parse().map_err(|_| bad(self, line))?;
            for (&r, cell) in degrees.iter().zip(&cells[1..]) {
                out.push(GoldenEntry {
                    table: self,
                    r,
                    row,
                    value: parse_count(cell)?,
                });
            }
        }
        out.sort_by_key(|e| (e.r, e.row));
        Ok(out)
    }
}

fn bad(table: GoldenTable, what: &str) -> CensusError {
    CensusError::InvalidArgument(format!("malformed golden table {table:?}: {what}"))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoldenEntry {
    pub table: GoldenTable,
    pub r: usize,
    pub row: u64,
    pub value: BigCount,
}

impl GoldenEntry {
    pub fn vertices(&self) -> usize {
        row_vertices(self.r, self.row)
    }
}

/// Entries of every table.
pub fn all_entries() -> Result<Vec<GoldenEntry>> {
    let mut out = Vec::new();
    for t in GoldenTable::ALL {
        out.extend(t.entries()?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forty_entries_each() {
        for t in GoldenTable::ALL {
            let e = t.entries().unwrap();
            assert_eq!(e.len(), 40, "{t:?}");
            assert!(e
                .iter()
                .all(|x| (3..=6).contains(&x.r) && (1..=10).contains(&x.row)));
        }
        assert_eq!(all_entries().unwrap().len(), 160);
    }

    #[test]
    fn spot_values() {
        let torus = GoldenTable::RootedTorus.entries().unwrap();
        let tau5 = torus.iter().find(|e| e.r == 5 && e.row == 10).unwrap();
        assert_eq!(tau5.value.to_string(), "68747100051073934332046868480");
        assert_eq!(tau5.vertices(), 20);
        let sensed = GoldenTable::SensedTorus.entries().unwrap();
        let s4 = sensed.iter().find(|e| e.r == 4 && e.row == 10).unwrap();
        assert_eq!(s4.value, BigCount::from(212603589u32));
        assert_eq!(s4.vertices(), 10);
    }
}
