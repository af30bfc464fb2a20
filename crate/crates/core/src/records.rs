//! Output rows and the family tags used to label them.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::bigmath::BigCount;
use crate::census::{sensed_tau3, sensed_tau4, SensedCensus};
use crate::error::{CensusError, Result};
use crate::recurrence::{build_surface, regular_cell, Surface};

/// One value of a published sequence. `value` travels as decimal text.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceRecord {
    pub family: String,
    pub index: u64,
    #[serde(serialize_with = "to_decimal", deserialize_with = "from_decimal")]
    pub value: BigCount,
}

fn to_decimal<S: Serializer>(v: &BigCount, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_str_radix(10))
}

fn from_decimal<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BigCount, D::Error> {
    let text = String::deserialize(d)?;
    parse_count(&text).map_err(serde::de::Error::custom)
}

/// Parses a nonnegative decimal integer, rejecting signs and whitespace.
pub fn parse_count(text: &str) -> Result<BigCount> {
    if text.is_empty() || !text.bytes().all(|b| b.is_ascii_digit()) {
        return Err(CensusError::InvalidArgument(format!(
            "not a decimal count: {text:?}"
        )));
    }
    BigCount::parse_bytes(text.as_bytes(), 10)
        .ok_or_else(|| CensusError::InvalidArgument(format!("not a decimal count: {text:?}")))
}

impl SequenceRecord {
    pub fn new(family: impl Into<String>, index: u64, value: BigCount) -> SequenceRecord {
        SequenceRecord {
            family: family.into(),
            index,
            value,
        }
    }

    /// `index,value`
    pub fn csv_line(&self) -> String {
        format!("{},{}", self.index, self.value)
    }
}

fn letter(surface: Surface) -> &'static str {
    match surface {
        Surface::Sphere => "sigma",
        Surface::Torus => "tau",
        Surface::Projective => "pi",
        Surface::Klein => "kappa",
    }
}

/// e.g. `tau.rooted.torus.r4`
pub fn rooted_tag(surface: Surface, r: usize) -> String {
    format!("{}.rooted.{}.r{r}", letter(surface), surface)
}

/// e.g. `tau.sensed.torus.r5`
pub fn sensed_tag(r: usize) -> String {
    format!("tau.sensed.torus.r{r}")
}

/// Vertices behind table row `row`: rows of odd `r` step by two vertices.
pub fn row_vertices(r: usize, row: u64) -> usize {
    let step = if r % 2 == 1 { 2 } else { 1 };
    row as usize * step
}

fn check_r(r: usize) -> Result<()> {
    if r < 3 {
        return Err(CensusError::InvalidArgument(format!(
            "regular degree must be at least 3, got {r}"
        )));
    }
    Ok(())
}

/// Rooted `r`-regular counts on `surface` for table rows `1..=rows`.
pub fn rooted_records(surface: Surface, r: usize, rows: u64) -> Result<Vec<SequenceRecord>> {
    check_r(r)?;
    let n_max = r * row_vertices(r, rows) / 2;
    let table = build_surface(surface, r, n_max)?;
    let tag = rooted_tag(surface, r);
    (1..=rows)
        .map(|row| {
            Ok(SequenceRecord::new(
                &tag,
                row,
                regular_cell(&table, row_vertices(r, row))?,
            ))
        })
        .collect()
}

/// Sensed `r`-regular torus counts for table rows `1..=rows`; closed formulas
/// for `r = 3, 4`, quotient counting otherwise.
pub fn sensed_records(r: usize, rows: u64) -> Result<Vec<SequenceRecord>> {
    check_r(r)?;
    let tag = sensed_tag(r);
    match r {
        3 => (1..=rows)
            .map(|row| {
                Ok(SequenceRecord::new(
                    &tag,
                    row,
                    sensed_tau3(row_vertices(r, row))?,
                ))
            })
            .collect(),
        4 => (1..=rows)
            .map(|row| Ok(SequenceRecord::new(&tag, row, sensed_tau4(row as usize)?)))
            .collect(),
        _ => sensed_general_records(r, rows),
    }
}

/// Sensed counts through the general quotient machinery, for any `r`.
pub fn sensed_general_records(r: usize, rows: u64) -> Result<Vec<SequenceRecord>> {
    check_r(r)?;
    let tag = sensed_tag(r);
    let census = SensedCensus::new(r, row_vertices(r, rows))?;
    let step = row_vertices(r, 1);
    Ok(census
        .sweep()?
        .into_iter()
        .map(|(v, value)| SequenceRecord::new(&tag, (v / step) as u64, value))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn tags() {
        assert_eq!(rooted_tag(Surface::Torus, 4), "tau.rooted.torus.r4");
        assert_eq!(rooted_tag(Surface::Klein, 3), "kappa.rooted.klein.r3");
        assert_eq!(sensed_tag(6), "tau.sensed.torus.r6");
    }

    #[test]
    fn rooted_rows() {
        let recs = rooted_records(Surface::Torus, 5, 2).unwrap();
        let lines: Vec<String> = recs.iter().map(|r| r.csv_line()).collect();
        assert_eq!(lines, ["1,120", "2,125280"]);
        let recs = rooted_records(Surface::Klein, 6, 1).unwrap();
        assert_eq!(recs[0].csv_line(), "1,42");
        let vals: Vec<u64> = rooted_records(Surface::Sphere, 4, 3)
            .unwrap()
            .iter()
            .map(|r| r.value.clone().try_into().unwrap())
            .collect();
        assert_eq!(vals, [2, 9, 54]);
    }

    #[test]
    fn sensed_rows() {
        let vals = |r, rows| -> Vec<String> {
            sensed_records(r, rows)
                .unwrap()
                .iter()
                .map(|x| x.value.to_string())
                .collect()
        };
        assert_eq!(vals(4, 4), ["1", "4", "23", "185"]);
        assert_eq!(vals(6, 2), ["3", "81"]);
        assert_eq!(vals(5, 1), ["15"]);
        assert_eq!(vals(3, 3), ["1", "5", "46"]);
        assert_eq!(
            sensed_general_records(3, 3).unwrap(),
            sensed_records(3, 3).unwrap()
        );
    }

    #[test]
    fn json_round_trip_is_exact() {
        let big = parse_count("68747100051073934332046868480").unwrap();
        let rec = SequenceRecord::new("tau.rooted.torus.r5", 10, big);
        let text = serde_json::to_string(&rec).unwrap();
        assert!(text.contains("\"68747100051073934332046868480\""));
        let back: SequenceRecord = serde_json::from_str(&text).unwrap();
        assert_eq!(back, rec);
    }

    #[test]
    fn rejects_bad_decimals() {
        for bad in ["", "-1", "1e5", " 12", "0x10"] {
            assert!(parse_count(bad).is_err(), "{bad:?}");
        }
    }

    proptest! {
        #[test]
        fn decimal_round_trip(digits in "[1-9][0-9]{0,60}") {
            let value = parse_count(&digits).unwrap();
            prop_assert_eq!(value.to_string(), digits.clone());
            let rec = SequenceRecord::new("x", 1, value);
            let back: SequenceRecord = serde_json::from_str(&serde_json::to_string(&rec).unwrap()).unwrap();
            prop_assert_eq!(back, rec);
        }
    }
}
