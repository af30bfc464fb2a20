//! Sensed `r`-regular maps on the torus.
//!
//! Maps are counted up to orientation-preserving homeomorphism by summing
//! rooted quotient maps over the cyclic orbifolds of the torus together with
//! the unbranched covers, then dividing by the number of darts `r v`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::bigmath::{binomial, divisors, exact_div, jordan_totient_2, BigCount};
use crate::closed_forms::{omega4, rho4, sigma3, sigma4, tau3};
use crate::error::{CensusError, Result};
use crate::orbifold::{toroidal_orbifolds, ConstrainedCounter, OrbifoldSignature};
use crate::par;
use crate::recurrence::{build_surface, regular_cell, DegreeTable, Surface};

/// Where a census contribution comes from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TermSource {
    /// Branched quotients on an orbifold, already weighted by its multiplicity.
    Orbifold(OrbifoldSignature),
    /// Unbranched covers: `sum over L | v of J_2(L) tau(v / L)`.
    Unbranched,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusTerm {
    pub source: TermSource,
    pub contribution: BigCount,
}

impl CensusTerm {
    pub fn label(&self) -> String {
        match &self.source {
            TermSource::Orbifold(sig) => sig.label(),
            TermSource::Unbranched => "unbranched".to_string(),
        }
    }
}

fn total_over(terms: &[CensusTerm], darts: usize) -> Result<BigCount> {
    let sum: BigCount = terms.iter().map(|t| &t.contribution).sum();
    exact_div(&sum, &BigCount::from(darts))
}

fn check_args(r: usize, v: usize) -> Result<()> {
    if r < 3 {
        return Err(CensusError::InvalidArgument(format!(
            "regular degree must be at least 3, got {r}"
        )));
    }
    if v == 0 || (r * v) % 2 == 1 {
        return Err(CensusError::InvalidArgument(format!(
            "no {r}-regular maps with {v} vertices"
        )));
    }
    Ok(())
}

/// General census driven by the torus recurrence and [`ConstrainedCounter`].
#[derive(Debug, Clone)]
pub struct SensedCensus {
    r: usize,
    v_max: usize,
    torus: DegreeTable,
}

impl SensedCensus {
    /// Prepares the torus table for every vertex count up to `v_max`.
    pub fn new(r: usize, v_max: usize) -> Result<SensedCensus> {
        check_args(r, 2)?;
        let torus = build_surface(Surface::Torus, r, r * v_max / 2)?;
        Ok(SensedCensus { r, v_max, torus })
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn v_max(&self) -> usize {
        self.v_max
    }

    /// Vertex counts up to `v_max` at which `r`-regular maps exist.
    pub fn vertex_counts(&self) -> Vec<usize> {
        (1..=self.v_max).filter(|v| (self.r * v) % 2 == 0).collect()
    }

    pub fn terms(&self, counter: &mut ConstrainedCounter, v: usize) -> Result<Vec<CensusTerm>> {
        check_args(self.r, v)?;
        if v > self.v_max {
            return Err(CensusError::InvalidArgument(format!(
                "census prepared up to {} vertices, asked for {v}",
                self.v_max
            )));
        }
        let mut terms = Vec::new();
        for sig in toroidal_orbifolds() {
            let h = counter.count_quotient_maps(&sig, v)?;
            terms.push(CensusTerm {
                contribution: h * sig.multiplicity,
                source: TermSource::Orbifold(sig),
            });
        }
        let mut unbranched = BigCount::zero();
        for l in divisors(v as i64)? {
            let rooted = regular_cell(&self.torus, v / l as usize)?;
            unbranched += jordan_totient_2(l as i64)? * rooted;
        }
        terms.push(CensusTerm {
            source: TermSource::Unbranched,
            contribution: unbranched,
        });
        Ok(terms)
    }

    pub fn count(&self, counter: &mut ConstrainedCounter, v: usize) -> Result<BigCount> {
        total_over(&self.terms(counter, v)?, self.r * v)
    }

    /// Sensed counts for every admissible vertex count, in parallel.
    pub fn sweep(&self) -> Result<Vec<(usize, BigCount)>> {
        let r = self.r;
        let vs = self.vertex_counts();
        // largest cases first so the work splits evenly
        let mut order = vs.clone();
        order.reverse();
        let mut results = par::map_init(
            order,
            || ConstrainedCounter::new(r).expect("r validated"),
            |counter, v| self.count(counter, v).map(|c| (v, c)),
        )
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
        results.sort_by_key(|(v, _)| *v);
        Ok(results)
    }
}

/// Sensed `r`-regular torus maps with `v` vertices.
pub fn sensed_general(r: usize, v: usize) -> Result<BigCount> {
    check_args(r, v)?;
    let census = SensedCensus::new(r, v)?;
    census.count(&mut ConstrainedCounter::new(r)?, v)
}

fn q(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn big(x: BigCount) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// `C(num / den, k)`; zero unless the top is a nonnegative integer.
fn binom_frac(num: i64, den: i64, k: i64) -> BigRational {
    if num % den != 0 {
        return BigRational::zero();
    }
    big(binomial(num / den, k))
}

/// `f(num / den)` when the argument is a nonnegative integer, else zero.
fn at<F>(num: i64, den: i64, f: F) -> Result<BigRational>
where
    F: FnOnce(u64) -> Result<BigCount>,
{
    if num < 0 || num % den != 0 {
        return Ok(BigRational::zero());
    }
    Ok(big(f((num / den) as u64)?))
}

fn integral(x: BigRational, context: &str) -> Result<BigCount> {
    if !x.is_integer() {
        return Err(CensusError::NonIntegral(format!("{context}: {x}")));
    }
    crate::bigmath::to_count(x.to_integer(), context)
}

fn rooted_terms(v: usize, rooted: impl Fn(usize) -> Result<BigCount>) -> Result<CensusTerm> {
    let mut sum = BigCount::zero();
    for l in divisors(v as i64)? {
        sum += jordan_totient_2(l as i64)? * rooted(v / l as usize)?;
    }
    Ok(CensusTerm {
        source: TermSource::Unbranched,
        contribution: sum,
    })
}

fn orbifold_term(indices: &[usize], bracket: BigRational) -> Result<CensusTerm> {
    let sig = toroidal_orbifolds()
        .into_iter()
        .find(|s| s.branch_indices == indices)
        .expect("known signature");
    let h = integral(bracket, &sig.label())?;
    Ok(CensusTerm {
        contribution: h * sig.multiplicity,
        source: TermSource::Orbifold(sig),
    })
}

fn sigma4_at(num: i64, den: i64) -> Result<BigRational> {
    at(num, den, |n| Ok(sigma4(n)))
}

fn rho4_at(num: i64, den: i64) -> Result<BigRational> {
    at(num, den, |n| Ok(rho4(n)))
}

/// Per-orbifold brackets of the 4-regular census, in closed form.
pub fn tau4_terms(v: usize) -> Result<Vec<CensusTerm>> {
    check_args(4, v)?;
    let x = v as i64;
    let omega = at(x, 2, |n| {
        if n == 0 {
            Ok(BigCount::zero())
        } else {
            omega4(n)
        }
    })?;

    let two4 = binom_frac(4 + x, 2, 4) * sigma4_at(x, 2)?
        + q(x, 2) * omega
        + q(x, 1) * big(binomial(x, 2)) * rho4_at(x - 2, 2)?
        + q(x * x * (x + 1), 2) * rho4_at(x - 1, 2)?
        + q(x, 1) * binom_frac(x + 2, 2, 2) * rho4_at(x, 2)?
        + q(x, 1) * binom_frac(x + 3, 2, 3) * sigma4_at(x - 1, 2)?
        + big(binomial(x, 2)) * binom_frac(x + 2, 2, 2) * sigma4_at(x - 2, 2)?
        + q(x + 1, 2) * big(binomial(x, 3)) * sigma4_at(x - 3, 2)?
        + big(binomial(x, 4)) * sigma4_at(x - 4, 2)?;

    let two_four_four = q(x + 8, 4) * binom_frac(4 + x, 4, 2) * sigma4_at(x, 4)?
        + q(x * (x + 3), 4) * rho4_at(x - 1, 4)?
        + q(x, 2) * binom_frac(x + 6, 4, 2) * sigma4_at(x - 2, 4)?
        + q(x * (x + 2), 8) * rho4_at(x - 2, 4)?
        + q(x * (x - 2), 4) * rho4_at(x - 4, 4)?;

    let three3 = binom_frac(6 + x, 3, 3) * sigma4_at(x, 3)?;

    let two_three_six = q(x + 12, 6) * q(x + 6, 6) * q(x, 6) * sigma4_at(x, 6)?
        + q(x + 9, 6) * q(x + 3, 6) * q(x, 3) * sigma4_at(x - 3, 6)?;

    Ok(vec![
        orbifold_term(&[2, 2, 2, 2], two4)?,
        orbifold_term(&[2, 4, 4], two_four_four)?,
        orbifold_term(&[3, 3, 3], three3)?,
        orbifold_term(&[2, 3, 6], two_three_six)?,
        rooted_terms(v, |w| crate::closed_forms::tau4(w as u64))?,
    ])
}

/// Sensed 4-regular torus maps with `v` vertices, in closed form.
pub fn sensed_tau4(v: usize) -> Result<BigCount> {
    total_over(&tau4_terms(v)?, 4 * v)
}

/// Sphere maps with `v` vertices, `i` of them leaves and the rest of degree 3,
/// rooted at a leaf.
pub fn q_leaf3(i: usize, v: usize) -> Result<BigCount> {
    q_leaf3_with(&mut ConstrainedCounter::new(3)?, i, v)
}

fn q_leaf3_with(counter: &mut ConstrainedCounter, i: usize, v: usize) -> Result<BigCount> {
    if i == 0 || v < i || (3 * (v - i) + i) % 2 == 1 {
        return Ok(BigCount::zero());
    }
    if i == 1 {
        let edges = (3 * v - 2) / 2;
        return Ok(counter.rooted_at(edges, 1, &[]));
    }
    if i == 2 && v == 2 {
        return Ok(BigCount::one());
    }
    let coeff = 3 * v as i64 - 2 * i as i64 - 4;
    if coeff <= 0 {
        return Ok(BigCount::zero());
    }
    let prev = q_leaf3_with(counter, i - 1, v - 2)?;
    exact_div(&(prev * coeff as u64), &BigCount::from(i - 1))
}

/// Per-orbifold brackets of the 3-regular census, in closed form.
pub fn tau3_terms(v: usize) -> Result<Vec<CensusTerm>> {
    check_args(3, v)?;
    let x = v as i64;
    let mut counter = ConstrainedCounter::new(3)?;
    let mut qv = |i: usize, num: i64, den: i64| -> Result<BigRational> {
        at(num, den, |w| q_leaf3_with(&mut counter, i, w as usize))
    };
    // sigma3 is indexed by half the vertex count, tau3 by one less
    let sigma = |num: i64, den: i64| at(num, 2 * den, sigma3);

    let mut two4 = binom_frac(8 + x, 4, 4) * sigma(x, 2)?;
    for i in 1..=4i64 {
        two4 +=
            q(3 * x, 2 * i) * binom_frac(8 + x - 2 * i, 4, 4 - i) * qv(i as usize, x + 2 * i, 2)?;
    }

    let mut three3 = binom_frac(12 + x, 6, 3) * sigma(x, 3)?;
    for i in 1..=3i64 {
        three3 += q(x, i) * binom_frac(x + 12 - 4 * i, 6, 3 - i) * qv(i as usize, x + 2 * i, 3)?;
    }

    let two_four_four = q(3 * x, 4) * binom_frac(x + 12, 8, 2) * qv(1, x + 4, 4)?
        + q(16 + x, 8) * binom_frac(8 + x, 8, 2) * sigma(x, 4)?;

    let two_three_six = q(24 + x, 12) * q(12 + x, 12) * q(x, 12) * sigma(x, 6)?
        + q(x, 1) * binom_frac(x + 16, 12, 2) * qv(1, x + 4, 6)?
        + q(x, 2) * q(x + 10, 12) * qv(2, x + 10, 6)?
        + q(x, 1) * binom_frac(x + 18, 12, 2) * qv(1, x + 6, 6)?;

    Ok(vec![
        orbifold_term(&[2, 2, 2, 2], two4)?,
        orbifold_term(&[2, 4, 4], two_four_four)?,
        orbifold_term(&[3, 3, 3], three3)?,
        orbifold_term(&[2, 3, 6], two_three_six)?,
        rooted_terms(v, |w| {
            if w % 2 == 1 {
                Ok(BigCount::zero())
            } else {
                tau3(w as u64 / 2 - 1)
            }
        })?,
    ])
}

/// Sensed 3-regular torus maps with `v` vertices (`v` even), in closed form.
pub fn sensed_tau3(v: usize) -> Result<BigCount> {
    total_over(&tau3_terms(v)?, 3 * v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn n(x: u64) -> BigCount {
        BigCount::from(x)
    }

    #[test]
    fn tau4_closed_form_prefix() {
        let want = [
            1u64, 4, 23, 185, 1647, 16455, 169734, 1805028, 19472757, 212603589,
        ];
        for (i, &w) in want.iter().enumerate() {
            assert_eq!(sensed_tau4(i + 1).unwrap(), n(w), "v={}", i + 1);
        }
    }

    #[test]
    fn tau3_closed_form_prefix() {
        let want = [1u64, 5, 46, 669, 11096, 196888];
        for (i, &w) in want.iter().enumerate() {
            assert_eq!(sensed_tau3(2 * i + 2).unwrap(), n(w), "v={}", 2 * i + 2);
        }
    }

    #[test]
    fn general_matches_closed_forms() {
        let c4 = SensedCensus::new(4, 8).unwrap();
        let mut k4 = ConstrainedCounter::new(4).unwrap();
        for v in 1..=8 {
            assert_eq!(
                c4.terms(&mut k4, v).unwrap(),
                tau4_terms(v).unwrap(),
                "r=4 v={v}"
            );
        }
        let c3 = SensedCensus::new(3, 12).unwrap();
        let mut k3 = ConstrainedCounter::new(3).unwrap();
        for v in (2..=12).step_by(2) {
            assert_eq!(
                c3.terms(&mut k3, v).unwrap(),
                tau3_terms(v).unwrap(),
                "r=3 v={v}"
            );
        }
    }

    #[test]
    fn general_examples() {
        assert_eq!(sensed_general(6, 3).unwrap(), n(3313));
        assert_eq!(sensed_general(5, 2).unwrap(), n(15));
        assert_eq!(sensed_general(6, 1).unwrap(), n(3));
        assert_eq!(sensed_general(5, 4).unwrap(), n(6423));
    }

    #[test]
    fn sweep_is_ordered() {
        let c = SensedCensus::new(6, 4).unwrap();
        let got = c.sweep().unwrap();
        let want: Vec<(usize, BigCount)> =
            vec![(1, n(3)), (2, n(81)), (3, n(3313)), (4, n(171282))];
        assert_eq!(got, want);
    }

    #[test]
    fn leaf_recurrence_agrees_with_contraction() {
        let mut c = ConstrainedCounter::new(3).unwrap();
        assert_eq!(q_leaf3(2, 2).unwrap(), n(1));
        assert_eq!(q_leaf3(3, 4).unwrap(), n(1));
        assert_eq!(q_leaf3(4, 4).unwrap(), n(0));
        for i in 2..=4usize {
            for v in i..=12 {
                let edges2 = 3 * (v - i) + i;
                if edges2 % 2 == 1 || v == i {
                    continue;
                }
                let leaves = vec![1; i - 1];
                assert_eq!(
                    q_leaf3(i, v).unwrap(),
                    c.rooted_at(edges2 / 2, 1, &leaves),
                    "q({i},{v})"
                );
            }
        }
    }

    #[test]
    fn rejects_odd_degree_sum() {
        assert!(sensed_general(3, 3).is_err());
        assert!(sensed_tau3(5).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn sensed_between_orbit_bounds(r in 3usize..=6, v in 1usize..=8) {
            prop_assume!((r * v) % 2 == 0);
            let sensed = sensed_general(r, v).unwrap();
            let rooted = crate::recurrence::rooted_regular(Surface::Torus, r, v).unwrap();
            prop_assert!(sensed <= rooted);
            prop_assert!(sensed.clone() * (r * v) >= rooted);
        }
    }
}
