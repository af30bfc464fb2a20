//! Explicit coefficient formulas for `r = 3` and `r = 4`.
//!
//! These are evaluated independently of the recurrence tables and serve both as
//! a cross-check and as fast inputs to the sensed census. Formulas with internal
//! fractions are summed over exact rationals; a non-integral total is an error.
//!
//! Indexing: `r = 4` families are indexed by vertex count, `r = 3` families by
//! `n` where the map has `2n` vertices and `3n` edges.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::bigmath::{binomial, double_factorial, exact_div_signed, factorial, to_count, BigCount};
use crate::error::{CensusError, Result};
use crate::recurrence::{regular_cell, rooted_regular, DegreeTable, Surface};

fn int(x: BigCount) -> BigInt {
    BigInt::from(x)
}

fn pow(base: u64, e: u64) -> BigInt {
    num_traits::pow(BigInt::from(base), e as usize)
}

fn df(n: i64) -> BigInt {
    // callers only pass n >= -1
    int(double_factorial(n).expect("double factorial argument below -1"))
}

fn fact(n: u64) -> BigInt {
    int(factorial(n))
}

fn ratio(num: BigInt, den: BigInt) -> BigRational {
    BigRational::new(num, den)
}

fn integral(x: BigRational, context: &str) -> Result<BigCount> {
    if !x.is_integer() {
        return Err(CensusError::NonIntegral(format!("{context} = {x}")));
    }
    to_count(x.to_integer(), context)
}

fn exact(num: BigInt, den: BigInt, context: &str) -> Result<BigCount> {
    to_count(exact_div_signed(&num, &den, context)?, context)
}

/// Rooted 4-regular sphere maps with `n` vertices: `2 3^n (2n)! / (n! (n+2)!)`.
pub fn sigma4(n: u64) -> BigCount {
    let num =
        factorial(2 * n) * BigCount::from(2u32) * num_traits::pow(BigCount::from(3u32), n as usize);
    num / (factorial(n) * factorial(n + 2))
}

/// Rooted 4-regular torus maps with `n >= 1` vertices.
pub fn tau4(n: u64) -> Result<BigCount> {
    if n == 0 {
        return Err(CensusError::InvalidArgument("tau4 needs n >= 1".into()));
    }
    let inner = pow(2, n) * fact(n) - df(2 * n as i64 - 1);
    exact(pow(6, n - 1) * inner, fact(n), "tau4")
}

/// `f(n) = sum_i C(2i, i) C(2n - 2i, n - i) (-1)^i / 3^i`, an exact rational.
pub fn f_aux(n: i64) -> BigRational {
    if n < 0 {
        return BigRational::zero();
    }
    let n = n as u64;
    // common denominator 3^n
    let mut num = BigInt::zero();
    for i in 0..=n {
        let term = int(binomial(2 * i as i64, i as i64))
            * int(binomial((2 * n - 2 * i) as i64, (n - i) as i64))
            * pow(3, n - i);
        if i % 2 == 0 {
            num += term;
        } else {
            num -= term;
        }
    }
    ratio(num, pow(3, n))
}

/// Rooted 4-regular projective-plane maps with `n >= 1` vertices.
pub fn pi4(n: u64) -> Result<BigCount> {
    if n == 0 {
        return Err(CensusError::InvalidArgument("pi4 needs n >= 1".into()));
    }
    let ni = n as i64;
    let mut total = ratio(pow(3, n) * fact(2 * n), fact(n + 1) * fact(n));
    let mut sum = BigRational::zero();
    for k in 0..n {
        let ki = k as i64;
        let weight = int(binomial(2 * ni + 1, ki));
        // 2^(2k - 2n) with 2k - 2n < 0
        let scale = ratio(BigInt::one(), pow(2, 2 * (n - k)));
        let bracket = f_aux(ni + 1 - ki) * ratio(BigInt::one(), BigInt::from(4))
            + f_aux(ni - 1 - ki) * ratio(BigInt::from(4), BigInt::from(3));
        sum += BigRational::from_integer(weight) * scale * bracket;
    }
    total += ratio(pow(3, n + 1), BigInt::from(2 * n + 1)) * sum;
    integral(total, "pi4")
}

/// Sphere maps with `n` degree-4 vertices and two leaves, rooted at a leaf.
pub fn rho4(n: u64) -> BigCount {
    let num = num_traits::pow(BigCount::from(3u32), n as usize) * binomial(2 * n as i64, n as i64);
    num / (n + 1)
}

/// Sphere maps with `v >= 1` degree-4 vertices and four leaves, rooted at a leaf.
pub fn omega4(v: u64) -> Result<BigCount> {
    if v == 0 {
        return Err(CensusError::InvalidArgument("omega4 needs v >= 1".into()));
    }
    let inner = df(2 * v as i64 + 1) - pow(2, v) * fact(v);
    exact(pow(6, v - 1) * inner, fact(v), "omega4")
}

/// Rooted 3-regular sphere maps with `2n` vertices.
pub fn sigma3(n: u64) -> Result<BigCount> {
    let num = BigInt::from(2) * pow(4, n) * df(3 * n as i64);
    exact(num, df(n as i64) * fact(n + 2), "sigma3")
}

/// `-[t^n] theta = 2^(2n) (3n)!! / ((n+1)! n!!)`.
pub fn theta_coeff(n: u64) -> Result<BigCount> {
    exact(
        pow(4, n) * df(3 * n as i64),
        fact(n + 1) * df(n as i64),
        "theta",
    )
}

/// Rooted 3-regular torus maps with `2n + 2` vertices: `1, 28, 664, ...`.
pub fn tau3(n: u64) -> Result<BigCount> {
    let ni = n as i64;
    let mut sum = BigRational::zero();
    for k in 0..=n {
        sum += ratio(pow(3, k) * df(3 * ni - 2 * k as i64 + 1), fact(n - k));
    }
    let total = ratio(pow(4, n) * df(ni), fact(n + 1)) * sum;
    integral(total, "tau3")
}

fn pi3_rational(n: u64) -> BigRational {
    let ni = n as i64;
    let first = ratio(
        -(BigInt::from(2) * pow(4, n) * df(3 * ni)),
        fact(n + 1) * df(ni),
    );
    let mut sum = BigRational::zero();
    for k in 0..=n {
        let ki = k as i64;
        sum += ratio(
            pow(3, k) * df(2 * ki - 1) * df(3 * ni - 2 * ki - 1),
            pow(2, k) * fact(k) * fact(n - k),
        );
    }
    first + ratio(BigInt::from(3) * pow(4, n), df(ni + 1)) * sum
}

/// Rooted 3-regular projective-plane maps with `2n` vertices, `n >= 1`.
pub fn pi3(n: u64) -> Result<BigCount> {
    if n == 0 {
        return Err(CensusError::InvalidArgument("pi3 needs n >= 1".into()));
    }
    integral(pi3_rational(n), "pi3")
}

/// How the `theta_n` symbol in the Klein-bottle formula is read.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThetaReading {
    /// `theta_n = -[t^n] theta`, the positive coefficient.
    Magnitude,
    /// `theta_n = [t^n] theta`, the signed coefficient.
    Signed,
}

/// Evaluates the Klein-bottle formula under a given reading of `theta_n`.
pub fn kappa3_with(n: u64, reading: ThetaReading) -> Result<BigRational> {
    if n == 0 {
        return Err(CensusError::InvalidArgument("kappa3 needs n >= 1".into()));
    }
    let ni = n as i64;
    let mut theta = int(theta_coeff(n)?);
    if reading == ThetaReading::Signed {
        theta = -theta;
    }
    let head = (BigRational::from_integer(BigInt::from(2) * theta) - pi3_rational(n))
        * BigRational::from_integer(BigInt::from(n + 1));
    let mut sum = BigRational::zero();
    for k in 0..=n {
        sum += ratio(pow(3, k) * df(3 * ni - 2 * k as i64 - 2), fact(n - k));
    }
    Ok(head + ratio(BigInt::from(3) * pow(4, n), df(ni - 2)) * sum)
}

/// Rooted 3-regular Klein-bottle maps with `2n` vertices, `n >= 1`.
///
/// Uses the signed reading of `theta_n`; see [`reconcile_kappa3`].
pub fn kappa3(n: u64) -> Result<BigCount> {
    integral(kappa3_with(n, ThetaReading::Signed)?, "kappa3")
}

/// Reports which reading of `theta_n` reproduces `klein_value`.
pub fn reconcile_kappa3(n: u64, klein_value: &BigCount) -> Result<ThetaReading> {
    let target = BigRational::from_integer(int(klein_value.clone()));
    for reading in [ThetaReading::Magnitude, ThetaReading::Signed] {
        if kappa3_with(n, reading)? == target {
            return Ok(reading);
        }
    }
    Err(CensusError::Reconciliation { n: n as usize })
}

/// Rooted 4-regular Klein-bottle maps with `n >= 1` vertices.
///
/// No closed formula is known; this reads the Klein recurrence table.
pub fn kappa4(n: u64) -> Result<BigCount> {
    if n == 0 {
        return Err(CensusError::InvalidArgument("kappa4 needs n >= 1".into()));
    }
    rooted_regular(Surface::Klein, 4, n as usize)
}

/// [`kappa4`] against an already built Klein table for `r = 4`.
pub fn kappa4_from(klein: &DegreeTable, n: u64) -> Result<BigCount> {
    if klein.r() != 4 || klein.family().surface != Surface::Klein {
        return Err(CensusError::InvalidArgument(format!(
            "kappa4 needs the r = 4 Klein table, got {}",
            klein.family()
        )));
    }
    regular_cell(klein, n as usize)
}

/// A named closed-form sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClosedFamily {
    Sigma3,
    Sigma4,
    Tau3,
    Tau4,
    Pi3,
    Pi4,
    Kappa3,
    Rho4,
    Omega4,
    Theta,
}

impl ClosedFamily {
    pub fn name(self) -> &'static str {
        match self {
            ClosedFamily::Sigma3 => "sigma3",
            ClosedFamily::Sigma4 => "sigma4",
            ClosedFamily::Tau3 => "tau3",
            ClosedFamily::Tau4 => "tau4",
            ClosedFamily::Pi3 => "pi3",
            ClosedFamily::Pi4 => "pi4",
            ClosedFamily::Kappa3 => "kappa3",
            ClosedFamily::Rho4 => "rho4",
            ClosedFamily::Omega4 => "omega4",
            ClosedFamily::Theta => "theta",
        }
    }

    pub fn eval(self, index: u64) -> Result<SequenceValue> {
        let value = match self {
            ClosedFamily::Sigma3 => sigma3(index)?,
            ClosedFamily::Sigma4 => sigma4(index),
            ClosedFamily::Tau3 => tau3(index)?,
            ClosedFamily::Tau4 => tau4(index)?,
            ClosedFamily::Pi3 => pi3(index)?,
            ClosedFamily::Pi4 => pi4(index)?,
            ClosedFamily::Kappa3 => kappa3(index)?,
            ClosedFamily::Rho4 => rho4(index),
            ClosedFamily::Omega4 => omega4(index)?,
            ClosedFamily::Theta => theta_coeff(index)?,
        };
        Ok(SequenceValue {
            family: self,
            index,
            value,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceValue {
    pub family: ClosedFamily,
    pub index: u64,
    pub value: BigCount,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(x: u64) -> BigCount {
        BigCount::from(x)
    }

    fn seq(
        f: impl Fn(u64) -> Result<BigCount>,
        range: std::ops::RangeInclusive<u64>,
    ) -> Vec<BigCount> {
        range.map(|i| f(i).unwrap()).collect()
    }

    fn ns(xs: &[u64]) -> Vec<BigCount> {
        xs.iter().map(|&x| n(x)).collect()
    }

    #[test]
    fn four_regular_series() {
        assert_eq!(seq(|i| Ok(sigma4(i)), 0..=3), ns(&[1, 2, 9, 54]));
        assert_eq!(seq(tau4, 1..=4), ns(&[1, 15, 198, 2511]));
        assert_eq!(seq(pi4, 1..=5), ns(&[5, 38, 331, 3098, 30330]));
        assert_eq!(seq(|i| Ok(rho4(i)), 0..=2), ns(&[1, 3, 18]));
        assert_eq!(seq(omega4, 1..=4), ns(&[1, 21, 342, 5049]));
        assert_eq!(seq(kappa4, 1..=3), ns(&[4, 68, 964]));
    }

    #[test]
    fn three_regular_series() {
        assert_eq!(seq(sigma3, 0..=3), ns(&[1, 4, 32, 336]));
        assert_eq!(seq(tau3, 0..=4), ns(&[1, 28, 664, 14912, 326496]));
        assert_eq!(seq(pi3, 1..=3), ns(&[9, 118, 1773]));
        assert_eq!(seq(kappa3, 1..=3), ns(&[6, 174, 4236]));
        assert_eq!(seq(theta_coeff, 0..=2), ns(&[1, 6, 64]));
    }

    #[test]
    fn f_aux_values() {
        assert_eq!(f_aux(0), BigRational::one());
        // 2 - 2/3
        assert_eq!(f_aux(1), ratio(BigInt::from(4), BigInt::from(3)));
        assert!(f_aux(-1).is_zero());
    }

    #[test]
    fn sigma3_is_scaled_theta() {
        for i in 0..=20u64 {
            let lhs = int(sigma3(i).unwrap()) * BigInt::from(i + 2);
            assert_eq!(lhs, BigInt::from(2) * int(theta_coeff(i).unwrap()));
        }
    }

    #[test]
    fn kappa3_reading_is_signed() {
        let klein = [6u64, 174, 4236];
        for (i, &k) in klein.iter().enumerate() {
            let reading = reconcile_kappa3(i as u64 + 1, &n(k)).unwrap();
            assert_eq!(reading, ThetaReading::Signed);
        }
        assert!(
            kappa3_with(1, ThetaReading::Magnitude).unwrap()
                != BigRational::from_integer(BigInt::from(6))
        );
        assert!(matches!(
            reconcile_kappa3(1, &n(7)),
            Err(CensusError::Reconciliation { n: 1 })
        ));
    }

    #[test]
    fn integrality_up_to_twenty() {
        for i in 1..=20u64 {
            tau4(i).unwrap();
            pi4(i).unwrap();
            omega4(i).unwrap();
            sigma3(i).unwrap();
            tau3(i).unwrap();
            pi3(i).unwrap();
            kappa3(i).unwrap();
            theta_coeff(i).unwrap();
        }
    }

    #[test]
    fn rejects_zero_index() {
        assert!(tau4(0).is_err());
        assert!(pi4(0).is_err());
        assert!(omega4(0).is_err());
        assert!(pi3(0).is_err());
        assert!(kappa3(0).is_err());
        assert!(kappa4(0).is_err());
    }

    #[test]
    fn kappa4_needs_klein_table() {
        let t = crate::recurrence::build_surface(Surface::Torus, 4, 4).unwrap();
        assert!(kappa4_from(&t, 1).is_err());
        let b = crate::recurrence::build_surface(Surface::Klein, 4, 4).unwrap();
        assert_eq!(kappa4_from(&b, 2).unwrap(), n(68));
    }

    #[test]
    fn closed_family_eval() {
        let v = ClosedFamily::Tau4.eval(10).unwrap();
        assert_eq!(v.value, n(8501284530));
        assert_eq!(ClosedFamily::Omega4.name(), "omega4");
    }
}
