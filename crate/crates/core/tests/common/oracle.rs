//! Exact-arithmetic hypergeometric oracles, independent of the library's
//! floating-point recurrence.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// C(n, k) in u128; exact for n <= 120.
pub fn binomial_u128(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut c: u128 = 1;
    for i in 0..k {
        // c * (n - i) is divisible by (i + 1) at every step.
        c = c * (n - i) as u128 / (i + 1) as u128;
    }
    c
}

/// Exact pmf and cdf for every k in 0..=min(n, K), computed as ratios of
/// u128 integers, converted to f64 only at the end.
pub struct SmallExact {
    pub pmf: Vec<f64>,
    pub cdf: Vec<f64>,
}

pub fn small_exact(population: u64, successes: u64, draws: u64) -> SmallExact {
    let denominator = binomial_u128(population, draws);
    let top = draws.min(successes);
    let mut pmf = Vec::with_capacity(top as usize + 1);
    let mut cdf = Vec::with_capacity(top as usize + 1);
    let mut running: u128 = 0;
    for k in 0..=top {
        let ways = if draws - k > population - successes {
            0
        } else {
            binomial_u128(successes, k) * binomial_u128(population - successes, draws - k)
        };
        running += ways;
        pmf.push(ratio_u128(ways, denominator));
        cdf.push(ratio_u128(running, denominator));
    }
    SmallExact { pmf, cdf }
}

/// Both conversions and the division round to nearest, so the result is
/// within 3 ulp of the exact ratio.
fn ratio_u128(num: u128, den: u128) -> f64 {
    num as f64 / den as f64
}

pub fn binomial_big(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut c = BigInt::one();
    for i in 0..k {
        c = c * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    c
}

/// Exact rational cdf table over 0..=min(n, K).
pub fn big_cdf(population: u64, successes: u64, draws: u64) -> Vec<BigRational> {
    let denominator = binomial_big(population, draws);
    let top = draws.min(successes);
    let mut running = BigInt::zero();
    (0..=top)
        .map(|k| {
            if draws - k <= population - successes {
                running +=
                    binomial_big(successes, k) * binomial_big(population - successes, draws - k);
            }
            BigRational::new(running.clone(), denominator.clone())
        })
        .collect()
}

/// Exact interval: smallest k with cdf >= alpha/2 and smallest k with
/// cdf >= 1 - alpha/2, with `alpha = alpha_num / alpha_den`.
pub fn big_interval(cdf: &[BigRational], alpha_num: i64, alpha_den: i64) -> (u64, u64) {
    let half = BigRational::new(BigInt::from(alpha_num), BigInt::from(2 * alpha_den));
    let upper_level = BigRational::one() - half.clone();
    let first_at = |level: &BigRational| cdf.iter().position(|c| c >= level).unwrap() as u64;
    (first_at(&half), first_at(&upper_level))
}

pub fn relative_error(got: f64, want: f64) -> f64 {
    if want == 0.0 {
        got.abs()
    } else {
        ((got - want) / want).abs()
    }
}
