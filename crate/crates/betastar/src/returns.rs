//! Price-to-return conversion, excess returns, and series alignment.
//!
//! Rates are stored as dimensionless per-period fractions (0.10, not 10%);
//! rendering as percentages is a presentation concern. A series of k prices
//! yields k−1 contiguous return intervals, so two intervals — the minimum for
//! any slope — require prices at three points in time.

use std::collections::HashMap;
use std::path::Path;

use chrono::NaiveDate;

use crate::error::{Error, Result};
use crate::estimators::PairedSample;

/// Whether rates are raw or net of the risk-free rate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReturnKind {
    Plain,
    Excess,
}

/// One per-interval rate of return.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReturnInterval {
    pub start: NaiveDate,
    pub end: NaiveDate,
    pub rate: f64,
}

/// Dated price observations, strictly increasing in date, all positive.
#[derive(Debug, Clone)]
pub struct PriceSeries {
    observations: Vec<(NaiveDate, f64)>,
}

impl PriceSeries {
    pub fn new(observations: Vec<(NaiveDate, f64)>) -> Result<Self> {
        if observations.is_empty() {
            return Err(Error::InsufficientData {
                context: "price series",
                required: 1,
                actual: 0,
            });
        }
        for (row, &(date, price)) in observations.iter().enumerate() {
            if !(price.is_finite() && price > 0.0) {
                return Err(Error::NonPositivePrice { row, date, price });
            }
            if row > 0 && date <= observations[row - 1].0 {
                return Err(Error::NonIncreasingDates { row, date });
            }
        }
        Ok(Self { observations })
    }

    /// Read a `date,price` CSV (ISO-8601 dates, dot decimal separator).
    pub fn from_csv_path(path: &Path) -> Result<Self> {
        let rows = read_two_column_csv(path, "price")?;
        Self::new(rows).map_err(|e| tag_parse_error(e, path))
    }

    pub fn observations(&self) -> &[(NaiveDate, f64)] {
        &self.observations
    }

    pub fn len(&self) -> usize {
        self.observations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.observations.is_empty()
    }

    /// Observations with dates in `[from, to]`.
    pub fn restrict(&self, from: NaiveDate, to: NaiveDate) -> Result<Self> {
        let picked: Vec<(NaiveDate, f64)> = self
            .observations
            .iter()
            .filter(|(d, _)| *d >= from && *d <= to)
            .copied()
            .collect();
        if picked.is_empty() {
            return Err(Error::InsufficientData {
                context: "price series in period",
                required: 1,
                actual: 0,
            });
        }
        Self::new(picked)
    }
}

/// Ordered, contiguous per-interval rates of return.
#[derive(Debug, Clone)]
pub struct ReturnSeries {
    intervals: Vec<ReturnInterval>,
    kind: ReturnKind,
}

impl ReturnSeries {
    pub fn new(intervals: Vec<ReturnInterval>, kind: ReturnKind) -> Result<Self> {
        for (i, iv) in intervals.iter().enumerate() {
            if iv.start >= iv.end {
                return Err(Error::Misaligned(format!(
                    "interval {i} has start {} not before end {}",
                    iv.start, iv.end
                )));
            }
            if i > 0 && intervals[i - 1].end != iv.start {
                return Err(Error::Misaligned(format!(
                    "interval {i} starting {} is not contiguous with previous end {}",
                    iv.start,
                    intervals[i - 1].end
                )));
            }
            if kind == ReturnKind::Plain && iv.rate <= -1.0 {
                return Err(Error::Domain(format!(
                    "plain return {} in interval {i} is not above -1",
                    iv.rate
                )));
            }
        }
        Ok(Self { intervals, kind })
    }

    pub fn intervals(&self) -> &[ReturnInterval] {
        &self.intervals
    }

    pub fn kind(&self) -> ReturnKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn rates(&self) -> Vec<f64> {
        self.intervals.iter().map(|iv| iv.rate).collect()
    }
}

/// Per-interval risk-free rates, dated by the interval they belong to.
#[derive(Debug, Clone)]
pub struct RiskFreeSeries {
    observations: Vec<(NaiveDate, f64)>,
}

impl RiskFreeSeries {
    pub fn new(observations: Vec<(NaiveDate, f64)>) -> Result<Self> {
        for (row, &(date, _)) in observations.iter().enumerate() {
            if row > 0 && date <= observations[row - 1].0 {
                return Err(Error::NonIncreasingDates { row, date });
            }
        }
        Ok(Self { observations })
    }

    /// Read a `date,rate` CSV (ISO-8601 dates, dot decimal separator).
    pub fn from_csv_path(path: &Path) -> Result<Self> {
        let rows = read_two_column_csv(path, "rate")?;
        Self::new(rows).map_err(|e| tag_parse_error(e, path))
    }

    pub fn observations(&self) -> &[(NaiveDate, f64)] {
        &self.observations
    }

    /// Convert annualized rates to per-period rates by dividing each rate by
    /// the number of periods per year.
    pub fn deannualized(&self, periods_per_year: f64) -> Result<Self> {
        if !(periods_per_year.is_finite() && periods_per_year > 0.0) {
            return Err(Error::Domain(format!(
                "periods per year must be positive, got {periods_per_year}"
            )));
        }
        Ok(Self {
            observations: self
                .observations
                .iter()
                .map(|&(d, r)| (d, r / periods_per_year))
                .collect(),
        })
    }

    /// The subset of rates matching the end dates of `returns`, one per
    /// interval and in interval order.
    pub fn select_for(&self, returns: &ReturnSeries) -> Result<Self> {
        let by_date: HashMap<NaiveDate, f64> = self.observations.iter().copied().collect();
        let mut picked = Vec::with_capacity(returns.len());
        for iv in returns.intervals() {
            match by_date.get(&iv.end) {
                Some(&rate) => picked.push((iv.end, rate)),
                None => {
                    return Err(Error::Misaligned(format!(
                        "no risk-free rate for interval ending {}",
                        iv.end
                    )))
                }
            }
        }
        Self::new(picked)
    }
}

/// Simple per-interval rates `(p[k+1] − p[k]) / p[k]` from a price series.
pub fn returns_from_prices(prices: &PriceSeries) -> Result<ReturnSeries> {
    rates_from_prices(prices, |prev, next| (next - prev) / prev)
}

/// Log per-interval rates `ln(p[k+1] / p[k])` from a price series.
pub fn log_returns_from_prices(prices: &PriceSeries) -> Result<ReturnSeries> {
    rates_from_prices(prices, |prev, next| (next / prev).ln())
}

fn rates_from_prices(
    prices: &PriceSeries,
    rate: impl Fn(f64, f64) -> f64,
) -> Result<ReturnSeries> {
    let obs = prices.observations();
    if obs.len() < 2 {
        return Err(Error::InsufficientData {
            context: "price series",
            required: 2,
            actual: obs.len(),
        });
    }
    let intervals = obs
        .windows(2)
        .map(|w| ReturnInterval {
            start: w[0].0,
            end: w[1].0,
            rate: rate(w[0].1, w[1].1),
        })
        .collect();
    ReturnSeries::new(intervals, ReturnKind::Plain)
}

/// Subtract the per-interval risk-free rate from each plain return.
///
/// The risk-free series must carry exactly one rate per interval, keyed by
/// the interval end date, in the same order.
pub fn excess_returns(returns: &ReturnSeries, rf: &RiskFreeSeries) -> Result<ReturnSeries> {
    if returns.kind() != ReturnKind::Plain {
        return Err(Error::Domain(
            "excess returns must be derived from plain returns".to_string(),
        ));
    }
    let rf_obs = rf.observations();
    if rf_obs.len() != returns.len() {
        return Err(Error::Misaligned(format!(
            "{} return intervals but {} risk-free rates",
            returns.len(),
            rf_obs.len()
        )));
    }
    let mut intervals = Vec::with_capacity(returns.len());
    for (iv, &(date, rf_rate)) in returns.intervals().iter().zip(rf_obs) {
        if date != iv.end {
            return Err(Error::Misaligned(format!(
                "risk-free rate dated {date} does not match interval ending {}",
                iv.end
            )));
        }
        intervals.push(ReturnInterval {
            rate: iv.rate - rf_rate,
            ..*iv
        });
    }
    ReturnSeries::new(intervals, ReturnKind::Excess)
}

/// The (start, end) intervals present in both series, in date order.
pub fn common_intervals(a: &ReturnSeries, b: &ReturnSeries) -> Vec<(NaiveDate, NaiveDate)> {
    let in_b: std::collections::HashSet<(NaiveDate, NaiveDate)> =
        b.intervals().iter().map(|iv| (iv.start, iv.end)).collect();
    a.intervals()
        .iter()
        .map(|iv| (iv.start, iv.end))
        .filter(|key| in_b.contains(key))
        .collect()
}

/// Pair up the market and investment rates over their common intervals.
///
/// Intervals missing from either side are dropped, never imputed. At least
/// three common intervals are required.
pub fn align(market: &ReturnSeries, investment: &ReturnSeries) -> Result<PairedSample> {
    let inv_rates: HashMap<(NaiveDate, NaiveDate), f64> = investment
        .intervals()
        .iter()
        .map(|iv| ((iv.start, iv.end), iv.rate))
        .collect();
    let pairs: Vec<(f64, f64)> = market
        .intervals()
        .iter()
        .filter_map(|iv| {
            inv_rates
                .get(&(iv.start, iv.end))
                .map(|&inv| (iv.rate, inv))
        })
        .collect();
    if pairs.len() < 3 {
        return Err(Error::InsufficientData {
            context: "aligned intervals",
            required: 3,
            actual: pairs.len(),
        });
    }
    PairedSample::from_pairs(pairs)
}

fn tag_parse_error(err: Error, path: &Path) -> Error {
    match err {
        Error::NonPositivePrice { row, date, price } => Error::Parse {
            path: path.to_path_buf(),
            line: row + 2,
            message: format!("non-positive price {price} at {date}"),
        },
        Error::NonIncreasingDates { row, date } => Error::Parse {
            path: path.to_path_buf(),
            line: row + 2,
            message: format!("date {date} does not advance"),
        },
        Error::InsufficientData { .. } => Error::Parse {
            path: path.to_path_buf(),
            line: 1,
            message: "no data rows".to_string(),
        },
        other => other,
    }
}

fn read_two_column_csv(path: &Path, value_name: &str) -> Result<Vec<(NaiveDate, f64)>> {
    let parse_err = |line: usize, message: String| Error::Parse {
        path: path.to_path_buf(),
        line,
        message,
    };
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| match e.kind() {
            csv::ErrorKind::Io(_) => Error::Io {
                path: path.to_path_buf(),
                source: std::io::Error::new(std::io::ErrorKind::Other, e.to_string()),
            },
            _ => parse_err(1, e.to_string()),
        })?;

    let headers = reader
        .headers()
        .map_err(|e| parse_err(1, e.to_string()))?
        .clone();
    if headers.len() != 2
        || !headers[0].eq_ignore_ascii_case("date")
        || !headers[1].eq_ignore_ascii_case(value_name)
    {
        return Err(parse_err(
            1,
            format!("expected header \"date,{value_name}\", got \"{}\"", headers.iter().collect::<Vec<_>>().join(",")),
        ));
    }

    let mut rows = Vec::new();
    for (idx, record) in reader.records().enumerate() {
        let line = idx + 2;
        let record = record.map_err(|e| parse_err(line, e.to_string()))?;
        if record.len() != 2 {
            return Err(parse_err(line, format!("expected 2 fields, got {}", record.len())));
        }
        let date = NaiveDate::parse_from_str(&record[0], "%Y-%m-%d")
            .map_err(|e| parse_err(line, format!("bad date {:?}: {e}", &record[0])))?;
        let value: f64 = record[1]
            .parse()
            .map_err(|e| parse_err(line, format!("bad {value_name} {:?}: {e}", &record[1])))?;
        rows.push((date, value));
    }
    if rows.is_empty() {
        return Err(parse_err(1, "no data rows".to_string()));
    }
    Ok(rows)
}
