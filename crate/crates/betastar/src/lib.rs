//! Beta analytics for investment return series.
//!
//! The central quantity is the volatility-ratio slope `β* = sign(r)·σᵢ/σₘ`,
//! the slope of the geometric mean functional relationship (reduced major
//! axis) between investment and market returns. The crate computes it next to
//! the ordinary and reverse least-squares slopes, attaches approximate and
//! exact confidence intervals, decomposes return variance, ranks assets, and
//! verifies the closed-form slope against a direct least-areas minimization.
//!
//! ```
//! use betastar::estimators::{beta_star, ols_beta, PairedSample};
//!
//! let pairs = vec![(0.01, 0.03), (-0.02, -0.055), (0.035, 0.09), (0.007, 0.012)];
//! let sample = PairedSample::from_pairs(pairs)?;
//! let ols = ols_beta(&sample)?;
//! let star = beta_star(&sample)?;
//! assert!((star.slope - ols.slope / sample.corr()).abs() < 1e-12);
//! # Ok::<(), betastar::Error>(())
//! ```

pub mod analytics;
mod error;
pub mod estimators;
pub mod inference;
pub mod oracle;
pub mod returns;
pub mod risk;

#[cfg(test)]
pub(crate) mod test_fixtures;

pub use error::{Error, Result, SampleSide};
pub use estimators::{BetaEstimate, Estimator, PairedSample};
pub use inference::{CiMethod, ConfidenceInterval};
pub use oracle::LineCandidate;
pub use returns::{PriceSeries, ReturnKind, ReturnSeries, RiskFreeSeries};
pub use risk::RiskDecomposition;
