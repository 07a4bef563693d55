//! Exact hypergeometric distribution for large urns.
//!
//! Probabilities come from the mode-outward recurrence
//!
//! ```text
//! p(k+1) / p(k) = (K - k)(n - k) / ((k + 1)(N - K - n + k + 1))
//! ```
//!
//! evaluated with the mode fixed at 1 and the table normalized by its own
//! sum. This sidesteps log-gamma cancellation at N ~ 10^7, where
//! `ln N!` is ~10^8 and a one-ulp error already costs ~10^-8 relative.
//! The walk stops once a term underflows `f64::MIN_POSITIVE`; probabilities
//! beyond that point are reported as 0, which is what they round to anyway.
//! Every factor is a product of integers below 2^53, so each ratio carries a
//! single rounding and the table is exactly symmetric in (n, K).

use crate::error::{Error, Result};

/// Population of `population` tokens, `successes` of which are the term,
/// and `draws` tokens drawn for the sample.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct UrnParams {
    pub population: u64,
    pub successes: u64,
    pub draws: u64,
}

impl UrnParams {
    pub fn new(population: u64, successes: u64, draws: u64) -> Result<Self> {
        if successes > population {
            return Err(Error::domain(format!(
                "successes {successes} exceed population {population}"
            )));
        }
        if draws > population {
            return Err(Error::domain(format!(
                "draws {draws} exceed population {population}"
            )));
        }
        Ok(UrnParams {
            population,
            successes,
            draws,
        })
    }

    /// Smallest and largest attainable draw counts.
    pub fn support(&self) -> (u64, u64) {
        let lo = (self.draws + self.successes).saturating_sub(self.population);
        let hi = self.draws.min(self.successes);
        (lo, hi)
    }

    pub fn mean(&self) -> f64 {
        if self.population == 0 {
            return 0.0;
        }
        self.draws as f64 * self.successes as f64 / self.population as f64
    }

    pub fn variance(&self) -> f64 {
        let (big_n, k, n) = (
            self.population as f64,
            self.successes as f64,
            self.draws as f64,
        );
        if self.population <= 1 {
            return 0.0;
        }
        n * (k / big_n) * (1.0 - k / big_n) * (big_n - n) / (big_n - 1.0)
    }

    pub fn std_dev(&self) -> f64 {
        self.variance().sqrt()
    }

    fn mode(&self) -> u64 {
        let m =
            (self.draws as u128 + 1) * (self.successes as u128 + 1) / (self.population as u128 + 2);
        let (lo, hi) = self.support();
        (m as u64).clamp(lo, hi)
    }
}

/// Neumaier-compensated running sum.
#[derive(Default)]
struct Compensated {
    sum: f64,
    carry: f64,
}

impl Compensated {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

/// Tabulated distribution over the numerically relevant part of the support.
#[derive(Clone, Debug)]
pub struct Hypergeometric {
    params: UrnParams,
    first: u64,
    pmf: Vec<f64>,
    cdf: Vec<f64>,
}

impl Hypergeometric {
    pub fn new(params: UrnParams) -> Self {
        let UrnParams {
            population: big_n,
            successes: big_k,
            draws: n,
        } = params;
        let (lo, hi) = params.support();
        let mode = params.mode();

        let mut below = Vec::new();
        let mut term = 1.0f64;
        let mut k = mode;
        while k > lo {
            let num = k as f64 * ((big_n + k) - big_k - n) as f64;
            let den = (big_k - k + 1) as f64 * (n - k + 1) as f64;
            term *= num / den;
            if term < f64::MIN_POSITIVE {
                break;
            }
            below.push(term);
            k -= 1;
        }

        let mut above = Vec::new();
        let mut term = 1.0f64;
        let mut k = mode;
        while k < hi {
            let num = (big_k - k) as f64 * (n - k) as f64;
            let den = (k + 1) as f64 * ((big_n + k + 1) - big_k - n) as f64;
            term *= num / den;
            if term < f64::MIN_POSITIVE {
                break;
            }
            above.push(term);
            k += 1;
        }

        let first = mode - below.len() as u64;
        let mut weights = Vec::with_capacity(below.len() + 1 + above.len());
        weights.extend(below.iter().rev());
        weights.push(1.0);
        weights.extend(above);

        let mut running = Compensated::default();
        let mut partial = Vec::with_capacity(weights.len());
        for &w in &weights {
            running.add(w);
            partial.push(running.value());
        }
        let total = running.value();
        let pmf = weights.iter().map(|w| w / total).collect();
        let cdf = partial.iter().map(|p| (p / total).min(1.0)).collect();

        Hypergeometric {
            params,
            first,
            pmf,
            cdf,
        }
    }

    pub fn params(&self) -> UrnParams {
        self.params
    }

    pub fn pmf(&self, k: u64) -> f64 {
        match k.checked_sub(self.first) {
            Some(i) => self.pmf.get(i as usize).copied().unwrap_or(0.0),
            None => 0.0,
        }
    }

    /// P(X <= k).
    pub fn cdf(&self, k: u64) -> f64 {
        match k.checked_sub(self.first) {
            None => 0.0,
            Some(i) => self.cdf.get(i as usize).copied().unwrap_or(1.0),
        }
    }

    /// P(X <= k) for a possibly negative `k`.
    pub fn cdf_signed(&self, k: i64) -> f64 {
        if k < 0 {
            0.0
        } else {
            self.cdf(k as u64)
        }
    }

    /// Smallest k with P(X <= k) >= p.
    pub fn quantile(&self, p: f64) -> u64 {
        let i = self.cdf.partition_point(|&c| c < p);
        if i >= self.cdf.len() {
            self.first + self.cdf.len() as u64 - 1
        } else {
            self.first + i as u64
        }
    }

    /// Two-sided bounds holding total mass `alpha` outside, split evenly:
    /// `lower` is the smallest k with cdf(k) >= alpha/2 and `upper` the
    /// smallest k with cdf(k) >= 1 - alpha/2.
    pub fn interval(&self, alpha: f64) -> Result<(u64, u64)> {
        check_alpha(alpha)?;
        Ok((self.quantile(alpha / 2.0), self.quantile(1.0 - alpha / 2.0)))
    }
}

pub(crate) fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha < 1.0 {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "alpha must lie in (0, 1), got {alpha}"
        )))
    }
}

pub fn hypergeom_pmf(params: UrnParams, k: u64) -> f64 {
    Hypergeometric::new(params).pmf(k)
}

pub fn hypergeom_cdf(params: UrnParams, k: u64) -> f64 {
    Hypergeometric::new(params).cdf(k)
}

pub fn confidence_interval(params: UrnParams, alpha: f64) -> Result<(u64, u64)> {
    check_alpha(alpha)?;
    Hypergeometric::new(params).interval(alpha)
}
