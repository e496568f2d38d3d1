//! Sample moments and the three slope estimators.
//!
//! A [`PairedSample`] caches the centroid, the two standard deviations and the
//! correlation of aligned (market, investment) return pairs. Three line fits
//! are derived from those moments:
//!
//! * [`ols_beta`] — least squares on vertical deviations, slope `r·σᵢ/σₘ`,
//! * [`reverse_beta`] — least squares on horizontal deviations, slope `σᵢ/(r·σₘ)`,
//! * [`beta_star`] — the volatility-ratio slope `sign(r)·σᵢ/σₘ`, the geometric
//!   mean of the other two in magnitude.
//!
//! All three lines pass through the centroid, so each intercept is
//! `ȳ − slope·x̄` exactly.

use crate::error::{Error, Result, SampleSide};

/// Which fitting rule produced a [`BetaEstimate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Estimator {
    Ols,
    Reverse,
    Gmfr,
}

/// Aligned (market, investment) rate pairs with cached sample moments.
///
/// Construction computes the moments once with the n−1 divisor; the cached
/// values are what every estimator consumes. Samples with fewer than three
/// pairs or with a constant side are rejected.
#[derive(Debug, Clone)]
pub struct PairedSample {
    pairs: Vec<(f64, f64)>,
    mean_market: f64,
    mean_investment: f64,
    sd_market: f64,
    sd_investment: f64,
    corr: f64,
}

impl PairedSample {
    /// Compute sample moments for `(market, investment)` pairs.
    ///
    /// Standard deviations use the n−1 divisor and the correlation is clamped
    /// to `[-1, 1]` to absorb floating-point overshoot.
    pub fn from_pairs(pairs: Vec<(f64, f64)>) -> Result<Self> {
        let n = pairs.len();
        if n < 3 {
            return Err(Error::InsufficientData {
                context: "paired sample",
                required: 3,
                actual: n,
            });
        }
        for side in [SampleSide::Market, SampleSide::Investment] {
            let pick = |p: &(f64, f64)| match side {
                SampleSide::Market => p.0,
                SampleSide::Investment => p.1,
            };
            let first = pick(&pairs[0]);
            if pairs.iter().all(|p| pick(p) == first) {
                return Err(Error::DegenerateSample { side });
            }
        }

        let nf = n as f64;
        let mean_market = pairs.iter().map(|p| p.0).sum::<f64>() / nf;
        let mean_investment = pairs.iter().map(|p| p.1).sum::<f64>() / nf;
        let mut sxx = 0.0;
        let mut syy = 0.0;
        let mut sxy = 0.0;
        for &(x, y) in &pairs {
            let dx = x - mean_market;
            let dy = y - mean_investment;
            sxx += dx * dx;
            syy += dy * dy;
            sxy += dx * dy;
        }
        if sxx == 0.0 {
            return Err(Error::DegenerateSample {
                side: SampleSide::Market,
            });
        }
        if syy == 0.0 {
            return Err(Error::DegenerateSample {
                side: SampleSide::Investment,
            });
        }
        let corr = (sxy / (sxx.sqrt() * syy.sqrt())).clamp(-1.0, 1.0);
        Ok(Self {
            pairs,
            mean_market,
            mean_investment,
            sd_market: (sxx / (nf - 1.0)).sqrt(),
            sd_investment: (syy / (nf - 1.0)).sqrt(),
            corr,
        })
    }

    pub fn n(&self) -> usize {
        self.pairs.len()
    }

    pub fn pairs(&self) -> &[(f64, f64)] {
        &self.pairs
    }

    /// Centroid x̄ of the market rates.
    pub fn mean_market(&self) -> f64 {
        self.mean_market
    }

    /// Centroid ȳ of the investment rates.
    pub fn mean_investment(&self) -> f64 {
        self.mean_investment
    }

    pub fn sd_market(&self) -> f64 {
        self.sd_market
    }

    pub fn sd_investment(&self) -> f64 {
        self.sd_investment
    }

    /// Pearson correlation, clamped to `[-1, 1]`.
    pub fn corr(&self) -> f64 {
        self.corr
    }

    /// The volatility ratio `σᵢ/σₘ` — relative volatility of the investment.
    pub fn volatility_ratio(&self) -> f64 {
        self.sd_investment / self.sd_market
    }

    /// Sample with the market and investment roles swapped.
    pub fn swapped(&self) -> Result<Self> {
        Self::from_pairs(self.pairs.iter().map(|&(x, y)| (y, x)).collect())
    }
}

/// A fitted line: slope, centroid-implied intercept, and sample context.
#[derive(Debug, Clone, Copy)]
pub struct BetaEstimate {
    pub slope: f64,
    pub intercept: f64,
    pub estimator: Estimator,
    pub n: usize,
    pub corr: f64,
}

impl BetaEstimate {
    /// Fitted investment rate at a given market rate.
    pub fn predict(&self, market_rate: f64) -> f64 {
        self.intercept + self.slope * market_rate
    }
}

fn estimate(sample: &PairedSample, slope: f64, estimator: Estimator) -> BetaEstimate {
    BetaEstimate {
        slope,
        intercept: sample.mean_investment() - slope * sample.mean_market(),
        estimator,
        n: sample.n(),
        corr: sample.corr(),
    }
}

/// Standard least-squares slope `r·σᵢ/σₘ` with the centroid intercept.
pub fn ols_beta(sample: &PairedSample) -> Result<BetaEstimate> {
    if sample.sd_market() == 0.0 {
        return Err(Error::DegenerateSample {
            side: SampleSide::Market,
        });
    }
    let slope = sample.corr() * sample.sd_investment() / sample.sd_market();
    Ok(estimate(sample, slope, Estimator::Ols))
}

/// Reverse-regression slope `σᵢ/(r·σₘ)`: least squares on horizontal
/// deviations, expressed in the same (market on x) plane.
pub fn reverse_beta(sample: &PairedSample) -> Result<BetaEstimate> {
    if sample.sd_market() == 0.0 {
        return Err(Error::DegenerateSample {
            side: SampleSide::Market,
        });
    }
    if sample.corr() == 0.0 {
        return Err(Error::UndefinedReverseSlope);
    }
    let slope = sample.sd_investment() / (sample.corr() * sample.sd_market());
    Ok(estimate(sample, slope, Estimator::Reverse))
}

/// The volatility-ratio slope `sign(r)·σᵢ/σₘ`.
///
/// Its magnitude is the geometric mean of the OLS and reverse slopes, and it
/// always lies between them.
pub fn beta_star(sample: &PairedSample) -> Result<BetaEstimate> {
    if sample.sd_market() == 0.0 {
        return Err(Error::DegenerateSample {
            side: SampleSide::Market,
        });
    }
    if sample.sd_investment() == 0.0 {
        return Err(Error::DegenerateSample {
            side: SampleSide::Investment,
        });
    }
    if sample.corr() == 0.0 {
        return Err(Error::SignUndefined);
    }
    let slope = sample.corr().signum() * sample.volatility_ratio();
    Ok(estimate(sample, slope, Estimator::Gmfr))
}

/// Blume adjustment: shrink a fitted beta toward one.
pub fn blume_beta(fit: &BetaEstimate, weight: f64) -> Result<f64> {
    check_weight(weight)?;
    Ok(weight * fit.slope + (1.0 - weight))
}

/// Vasicek adjustment: shrink a fitted beta toward a cross-sectional mean.
pub fn vasicek_beta(fit: &BetaEstimate, cross_section_mean: f64, weight: f64) -> Result<f64> {
    check_weight(weight)?;
    Ok(weight * fit.slope + (1.0 - weight) * cross_section_mean)
}

fn check_weight(weight: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&weight) {
        return Err(Error::Domain(format!(
            "adjustment weight must lie in [0, 1], got {weight}"
        )));
    }
    Ok(())
}
