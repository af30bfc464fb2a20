//! Exact integer helpers shared by every counting module.
//!
//! Counts are [`BigCount`] values. Out-of-range binomial arguments evaluate to
//! zero instead of failing, so census formulas whose arguments become negative
//! or fractional for some inputs can be transcribed term by term.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{CensusError, Result};

/// An exact, nonnegative count.
pub type BigCount = BigUint;

/// `C(n, k)`, zero when `k < 0`, `k > n` or `n < 0`.
pub fn binomial(n: i64, k: i64) -> BigCount {
    if n < 0 || k < 0 || k > n {
        return BigCount::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigCount::one();
    for i in 0..k {
        acc *= (n - i) as u64;
        acc /= (i + 1) as u64;
    }
    acc
}

/// Number of size-`k` multisets over `n` symbols, `C(n + k - 1, k)`.
pub fn multichoose(n: i64, k: i64) -> BigCount {
    if k == 0 {
        return BigCount::one();
    }
    if n <= 0 || k < 0 {
        return BigCount::zero();
    }
    binomial(n + k - 1, k)
}

pub fn factorial(n: u64) -> BigCount {
    (1..=n).fold(BigCount::one(), |acc, i| acc * i)
}

/// `n!! = n (n - 2) (n - 4) ...`, with `0!! = (-1)!! = 1`.
pub fn double_factorial(n: i64) -> Result<BigCount> {
    if n < -1 {
        return Err(CensusError::InvalidArgument(format!(
            "double factorial of {n}"
        )));
    }
    let mut acc = BigCount::one();
    let mut k = n;
    while k > 1 {
        acc *= k as u64;
        k -= 2;
    }
    Ok(acc)
}

/// Distinct prime factors of `n`, ascending.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Jordan's totient `J_2(L) = L^2 prod_{p | L} (1 - p^-2)`.
pub fn jordan_totient_2(l: i64) -> Result<BigCount> {
    if l <= 0 {
        return Err(CensusError::InvalidArgument(format!(
            "J_2 requires a positive argument, got {l}"
        )));
    }
    let l = l as u64;
    let mut num = BigCount::from(l) * l;
    let mut den = BigCount::one();
    for p in prime_factors(l) {
        num *= p * p - 1;
        den *= p * p;
    }
    exact_div(&num, &den)
}

/// `a / b`, failing unless `b` divides `a`.
///
/// Doubles as the integrality assertion for Burnside-style sums.
pub fn exact_div(a: &BigCount, b: &BigCount) -> Result<BigCount> {
    if b.is_zero() {
        return Err(CensusError::InvalidArgument("division by zero".into()));
    }
    let (q, r) = a.div_rem(b);
    if !r.is_zero() {
        return Err(non_exact(a, b, "exact_div"));
    }
    Ok(q)
}

/// Signed variant of [`exact_div`] used while evaluating alternating sums.
pub fn exact_div_signed(a: &BigInt, b: &BigInt, context: &str) -> Result<BigInt> {
    if b.is_zero() {
        return Err(CensusError::InvalidArgument("division by zero".into()));
    }
    let (q, r) = a.div_rem(b);
    if !r.is_zero() {
        return Err(non_exact(a, b, context));
    }
    Ok(q)
}

fn non_exact(a: &impl ToString, b: &impl ToString, context: &str) -> CensusError {
    CensusError::NonExactDivision {
        numerator: a.to_string(),
        denominator: b.to_string(),
        context: context.to_string(),
    }
}

/// Converts a signed intermediate into a count, rejecting negatives.
pub fn to_count(x: BigInt, context: &str) -> Result<BigCount> {
    if x.is_negative() {
        return Err(CensusError::NonIntegral(format!(
            "{context}: negative value {x}"
        )));
    }
    Ok(x.magnitude().clone())
}

/// All divisors of `n`, ascending.
pub fn divisors(n: i64) -> Result<Vec<u64>> {
    if n <= 0 {
        return Err(CensusError::InvalidArgument(format!(
            "divisors of non-positive {n}"
        )));
    }
    let n = n as u64;
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Ok(small)
}

/// `num / den` as an index when it is a nonnegative integer.
///
/// Census formulas evaluate families at arguments like `(v - 2) / 4`; terms
/// whose argument is not a nonnegative integer vanish.
pub fn integral_arg(num: i64, den: i64) -> Option<i64> {
    if den == 0 || num % den != 0 {
        return None;
    }
    let q = num / den;
    (q >= 0).then_some(q)
}
