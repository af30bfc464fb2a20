//! Self-checks: published tables, closed forms against recurrences, and the
//! dart oracle against the engine.

use std::fmt;

use crate::bigmath::BigCount;
use crate::census::{sensed_tau3, sensed_tau4, SensedCensus};
use crate::closed_forms::{kappa3, omega4, pi3, pi4, rho4, sigma3, sigma4, tau3, tau4};
use crate::error::{CensusError, Result};
use crate::golden::{GoldenEntry, GoldenTable};
use crate::oracle::{count_both_oracle, count_rooted_oracle, DegreeSpec};
use crate::orbifold::ConstrainedCounter;
use crate::par;
use crate::records::{rooted_tag, sensed_tag};
use crate::recurrence::{
    build_hatq2, build_hatq3, regular_cell, DegreeTable, RootedTables, Surface,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    Tables,
    Crosscheck,
    Oracle,
    All,
}

impl Suite {
    pub fn parse(s: &str) -> Option<Suite> {
        match s {
            "tables" => Some(Suite::Tables),
            "crosscheck" => Some(Suite::Crosscheck),
            "oracle" => Some(Suite::Oracle),
            "all" => Some(Suite::All),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Suite::Tables => "tables",
            Suite::Crosscheck => "crosscheck",
            Suite::Oracle => "oracle",
            Suite::All => "all",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Comparison {
    pub suite: Suite,
    pub family: String,
    pub index: String,
    pub expected: BigCount,
    /// The computed value, or the error that stopped it.
    pub got: std::result::Result<BigCount, String>,
}

impl Comparison {
    fn new(
        suite: Suite,
        family: impl Into<String>,
        index: impl fmt::Display,
        expected: BigCount,
        got: Result<BigCount>,
    ) -> Comparison {
        Comparison {
            suite,
            family: family.into(),
            index: index.to_string(),
            expected,
            got: got.map_err(|e| e.to_string()),
        }
    }

    pub fn passed(&self) -> bool {
        self.got.as_ref() == Ok(&self.expected)
    }
}

impl fmt::Display for Comparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        let got = match &self.got {
            Ok(v) => v.to_string(),
            Err(e) => format!("error: {e}"),
        };
        write!(
            f,
            "{status} {} {} [{}] expected {} got {got}",
            self.suite.name(),
            self.family,
            self.index,
            self.expected
        )
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    pub comparisons: Vec<Comparison>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.comparisons.iter().all(Comparison::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Comparison> {
        self.comparisons.iter().filter(|c| !c.passed())
    }

    pub fn count(&self, suite: Suite) -> usize {
        self.comparisons.iter().filter(|c| c.suite == suite).count()
    }

    fn extend(&mut self, other: Report) {
        self.comparisons.extend(other.comparisons);
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Largest dart count the oracle suite enumerates.
    pub budget_darts: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { budget_darts: 12 }
    }
}

pub fn run(suite: Suite, options: VerifyOptions) -> Result<Report> {
    match suite {
        Suite::Tables => tables(),
        Suite::Crosscheck => crosscheck(),
        Suite::Oracle => oracle(options.budget_darts),
        Suite::All => {
            let mut report = tables()?;
            report.extend(crosscheck()?);
            report.extend(oracle(options.budget_darts)?);
            Ok(report)
        }
    }
}

fn group_by_r(entries: Vec<GoldenEntry>) -> Vec<(usize, Vec<GoldenEntry>)> {
    let mut out: Vec<(usize, Vec<GoldenEntry>)> = Vec::new();
    for e in entries {
        match out.iter_mut().find(|(r, _)| *r == e.r) {
            Some((_, v)) => v.push(e),
            None => out.push((e.r, vec![e])),
        }
    }
    out
}

/// Every value of the four published tables, with the sensed r = 3, 4 columns
/// checked through both the closed formulas and quotient counting.
pub fn tables() -> Result<Report> {
    let mut rooted = Vec::new();
    for t in [
        GoldenTable::RootedTorus,
        GoldenTable::RootedProjective,
        GoldenTable::RootedKlein,
    ] {
        rooted.extend(t.entries()?);
    }
    let sensed = GoldenTable::SensedTorus.entries()?;

    let rooted_jobs = group_by_r(rooted);
    let rooted_parts = par::map(rooted_jobs, |(r, entries)| -> Result<Vec<Comparison>> {
        let max_v = entries.iter().map(GoldenEntry::vertices).max().unwrap_or(0);
        let tables = RootedTables::build(r, r * max_v / 2)?;
        Ok(entries
            .into_iter()
            .map(|e| {
                let surface = e.table.surface();
                let got = tables.rooted_regular(surface, e.vertices());
                Comparison::new(Suite::Tables, rooted_tag(surface, r), e.row, e.value, got)
            })
            .collect())
    });

    let sensed_jobs = group_by_r(sensed);
    let sensed_parts = par::map(sensed_jobs, |(r, entries)| -> Result<Vec<Comparison>> {
        let max_v = entries.iter().map(GoldenEntry::vertices).max().unwrap_or(0);
        let census = SensedCensus::new(r, max_v)?;
        let general: Vec<(usize, BigCount)> = census.sweep()?;
        let mut out = Vec::new();
        for e in entries {
            let v = e.vertices();
            let via_general = general
                .iter()
                .find(|(w, _)| *w == v)
                .map(|(_, c)| c.clone())
                .ok_or_else(|| CensusError::InvalidArgument(format!("no sensed value at {v}")));
            let closed = match r {
                3 => Some(sensed_tau3(v)),
                4 => Some(sensed_tau4(v)),
                _ => None,
            };
            if let Some(closed) = closed {
                out.push(Comparison::new(
                    Suite::Tables,
                    sensed_tag(r),
                    e.row,
                    e.value.clone(),
                    closed,
                ));
                let tag = format!("{}.general", sensed_tag(r));
                out.push(Comparison::new(
                    Suite::Tables,
                    tag,
                    e.row,
                    e.value,
                    via_general,
                ));
            } else {
                out.push(Comparison::new(
                    Suite::Tables,
                    sensed_tag(r),
                    e.row,
                    e.value,
                    via_general,
                ));
            }
        }
        Ok(out)
    });

    let mut report = Report::default();
    for part in rooted_parts.into_iter().chain(sensed_parts) {
        report.comparisons.extend(part?);
    }
    Ok(report)
}

fn cell(table: &DegreeTable, n: usize, d: usize) -> BigCount {
    table.get(n as i64, d as i64).clone()
}

/// Closed forms against recurrence extractions, structural identities of the
/// tables, and the two sensed paths against each other.
pub fn crosscheck() -> Result<Report> {
    let s = Suite::Crosscheck;
    let (four, three) = par::join(|| RootedTables::build(4, 20), || RootedTables::build(3, 30));
    let (four, three) = (four?, three?);
    let mut out = Vec::new();

    let extract =
        |t: &RootedTables, surface: Surface, v: usize| regular_cell(t.surface(surface), v);
    for v in 1..=10u64 {
        let vu = v as usize;
        out.push(Comparison::new(
            s,
            "sigma4",
            v,
            extract(&four, Surface::Sphere, vu)?,
            Ok(sigma4(v)),
        ));
        out.push(Comparison::new(
            s,
            "tau4",
            v,
            extract(&four, Surface::Torus, vu)?,
            tau4(v),
        ));
        out.push(Comparison::new(
            s,
            "pi4",
            v,
            extract(&four, Surface::Projective, vu)?,
            pi4(v),
        ));
        out.push(Comparison::new(
            s,
            "kappa4",
            v,
            extract(&four, Surface::Klein, vu)?,
            crate::closed_forms::kappa4_from(four.surface(Surface::Klein), v),
        ));
        out.push(Comparison::new(
            s,
            "sigma3",
            v,
            extract(&three, Surface::Sphere, 2 * vu)?,
            sigma3(v),
        ));
        out.push(Comparison::new(
            s,
            "tau3",
            v - 1,
            extract(&three, Surface::Torus, 2 * vu)?,
            tau3(v - 1),
        ));
        out.push(Comparison::new(
            s,
            "pi3",
            v,
            extract(&three, Surface::Projective, 2 * vu)?,
            pi3(v),
        ));
        out.push(Comparison::new(
            s,
            "kappa3",
            v,
            extract(&three, Surface::Klein, 2 * vu)?,
            kappa3(v),
        ));
    }

    let q1 = &four.q[0];
    let h2 = build_hatq2(&four.s, q1)?;
    let h3 = build_hatq3(&four.s, q1, &h2)?;
    for k in 0..=9u64 {
        let ku = k as usize;
        out.push(Comparison::new(
            s,
            "q1.sphere.r4 = rho4",
            k,
            cell(q1, 2 * ku + 1, 1),
            Ok(rho4(k)),
        ));
        if k >= 1 {
            out.push(Comparison::new(
                s,
                "hatq3.sphere.r4 = omega4",
                k,
                cell(&h3, 2 * ku + 2, 1),
                omega4(k),
            ));
        }
    }

    for surface in Surface::ALL {
        let t4 = four.surface(surface);
        for k in 1..=9usize {
            let label = format!("{}.r4 root degree 2 shift", surface);
            out.push(Comparison::new(
                s,
                label,
                k,
                cell(t4, 2 * k, 4),
                Ok(cell(t4, 2 * k + 1, 2)),
            ));
        }
        let t3 = three.surface(surface);
        for k in 1..=9usize {
            let label = format!("{}.r3 root degree 1 shift", surface);
            out.push(Comparison::new(
                s,
                label,
                k,
                cell(t3, 3 * k, 3),
                Ok(cell(t3, 3 * k + 2, 1)),
            ));
        }
    }

    let census4 = SensedCensus::new(4, 10)?;
    let census3 = SensedCensus::new(3, 20)?;
    let mut k4 = ConstrainedCounter::new(4)?;
    let mut k3 = ConstrainedCounter::new(3)?;
    for v in 1..=10usize {
        out.push(Comparison::new(
            s,
            "sensed r4 general = closed",
            v,
            sensed_tau4(v)?,
            census4.count(&mut k4, v),
        ));
    }
    for v in (2..=20usize).step_by(2) {
        out.push(Comparison::new(
            s,
            "sensed r3 general = closed",
            v,
            sensed_tau3(v)?,
            census3.count(&mut k3, v),
        ));
    }
    Ok(Report { comparisons: out })
}

/// Dart enumeration against the recurrences and the sensed census, for every
/// `r` in 3..=6 and every admissible dart count within the budget.
pub fn oracle(budget_darts: usize) -> Result<Report> {
    let mut jobs = Vec::new();
    for r in 3..=6usize {
        for darts in (2..=budget_darts).step_by(2) {
            if darts % r == 0 {
                jobs.push((r, darts));
            }
        }
    }
    let parts = par::map(jobs, |(r, darts)| -> Result<Vec<Comparison>> {
        let s = Suite::Oracle;
        let (n, v) = (darts / 2, darts / r);
        let spec = DegreeSpec::Regular(r);
        let sphere = count_rooted_oracle(0, &spec, n, budget_darts);
        let torus = count_both_oracle(1, &spec, n, budget_darts)?;
        let index = format!("darts={darts}");
        let tables = RootedTables::build(r, n)?;
        Ok(vec![
            Comparison::new(
                s,
                rooted_tag(Surface::Sphere, r),
                &index,
                tables.rooted_regular(Surface::Sphere, v)?,
                sphere,
            ),
            Comparison::new(
                s,
                rooted_tag(Surface::Torus, r),
                &index,
                tables.rooted_regular(Surface::Torus, v)?,
                Ok(torus.rooted),
            ),
            Comparison::new(
                s,
                sensed_tag(r),
                &index,
                crate::census::sensed_general(r, v)?,
                Ok(torus.sensed),
            ),
        ])
    });
    let mut report = Report::default();
    for p in parts {
        report.comparisons.extend(p?);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in [Suite::Tables, Suite::Crosscheck, Suite::Oracle, Suite::All] {
            assert_eq!(Suite::parse(s.name()), Some(s));
        }
        assert_eq!(Suite::parse("everything"), None);
    }

    #[test]
    fn comparison_lines() {
        let ok = Comparison::new(
            Suite::Tables,
            "x",
            1,
            BigCount::from(3u32),
            Ok(BigCount::from(3u32)),
        );
        assert!(ok.passed());
        assert_eq!(ok.to_string(), "PASS tables x [1] expected 3 got 3");
        let bad = Comparison::new(
            Suite::Oracle,
            "y",
            2,
            BigCount::from(3u32),
            Err(CensusError::NonIntegral("z".into())),
        );
        assert!(!bad.passed());
        assert!(bad
            .to_string()
            .starts_with("FAIL oracle y [2] expected 3 got error:"));
    }

    #[test]
    fn small_oracle_suite() {
        let report = oracle(8).unwrap();
        assert!(
            report.passed(),
            "{:?}",
            report.failures().collect::<Vec<_>>()
        );
        // r=3: 6 darts; r=4: 4, 8; r=5: none; r=6: 6
        assert_eq!(report.count(Suite::Oracle), 3 * 4);
    }

    #[test]
    fn crosscheck_includes_t_20_4() {
        let report = crosscheck().unwrap();
        assert!(
            report.passed(),
            "{:?}",
            report.failures().collect::<Vec<_>>()
        );
        let c = report
            .comparisons
            .iter()
            .find(|c| c.family == "tau4" && c.index == "10")
            .unwrap();
        assert_eq!(c.expected, BigCount::from(8501284530u64));
    }
}
