//! Confidence intervals for the volatility-ratio slope.
//!
//! Two forms are provided. The approximate interval is `β* ± t·s` with
//! `s = |β*|·sqrt((1-r²)/(n-2))`. The exact interval is
//! `β*·[√(B+1) ∓ √B]` with `B = t²(1-r²)/(n-2)`; its endpoints multiply to
//! `β*²` because `(√(B+1)+√B)(√(B+1)-√B) = 1`, so it is symmetric on a
//! multiplicative scale. Both use the two-sided Student-t critical value at
//! n−2 degrees of freedom and collapse to a point at perfect correlation.
//!
//! The slope-variance formula is sometimes quoted linear in the slope rather
//! than quadratic; that reading is dimensionally inconsistent for a slope and
//! disagrees with the small-B limit of the exact interval, so the quadratic
//! form is the default and the linear form is kept behind
//! [`VarianceForm::SlopeLinear`] for auditability.

use crate::error::{Error, Result};
use crate::estimators::{BetaEstimate, PairedSample};

/// How an interval was constructed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CiMethod {
    Approximate,
    Exact,
}

/// Which variance formula backs the approximate interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum VarianceForm {
    /// `s² = β*²·(1-r²)/(n-2)` — consistent with the exact interval.
    #[default]
    SlopeSquared,
    /// `s² = β*·(1-r²)/(n-2)` — the literal linear-in-slope form; only
    /// defined for positive slopes.
    SlopeLinear,
}

/// A two-sided confidence interval for a slope.
#[derive(Debug, Clone, Copy)]
pub struct ConfidenceInterval {
    pub lower: f64,
    pub upper: f64,
    pub level: f64,
    pub method: CiMethod,
    pub t_critical: f64,
    /// `B = t²·(1-r²)/(n-2)`.
    pub b_factor: f64,
}

impl ConfidenceInterval {
    pub fn half_width(&self) -> f64 {
        (self.upper - self.lower) / 2.0
    }

    pub fn contains(&self, value: f64) -> bool {
        self.lower <= value && value <= self.upper
    }
}

/// Two-sided Student-t critical value: the t with
/// `P(|T| <= t) = level` at `df` degrees of freedom.
///
/// Computed by bisecting the CDF, which is evaluated through the regularized
/// incomplete beta function; no table lookup is involved.
pub fn t_critical(level: f64, df: usize) -> Result<f64> {
    if df == 0 {
        return Err(Error::Domain(
            "degrees of freedom must be at least 1".to_string(),
        ));
    }
    if !(level > 0.0 && level < 1.0) {
        return Err(Error::Domain(format!(
            "confidence level must lie strictly between 0 and 1, got {level}"
        )));
    }
    let target = 0.5 + level / 2.0;
    let nu = df as f64;

    let mut lo = 0.0f64;
    let mut hi = 1.0f64;
    let mut guard = 0;
    while student_cdf(hi, nu) < target {
        hi *= 2.0;
        guard += 1;
        if guard > 200 {
            return Err(Error::Domain(format!(
                "no critical value below {hi} for level {level}"
            )));
        }
    }
    while hi - lo > 1e-10 * hi.max(1.0) {
        let mid = 0.5 * (lo + hi);
        if student_cdf(mid, nu) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Standard error of the volatility-ratio slope, quadratic variance form.
pub fn slope_stderr(sample: &PairedSample, fit: &BetaEstimate) -> Result<f64> {
    slope_stderr_with(sample, fit, VarianceForm::SlopeSquared)
}

/// Standard error of the volatility-ratio slope under the chosen variance
/// form.
pub fn slope_stderr_with(
    sample: &PairedSample,
    fit: &BetaEstimate,
    form: VarianceForm,
) -> Result<f64> {
    let n = sample.n();
    if n < 3 {
        return Err(Error::InsufficientData {
            context: "slope standard error",
            required: 3,
            actual: n,
        });
    }
    let r2 = sample.corr() * sample.corr();
    let spread = (1.0 - r2) / (n as f64 - 2.0);
    match form {
        VarianceForm::SlopeSquared => Ok(fit.slope.abs() * spread.sqrt()),
        VarianceForm::SlopeLinear => {
            let var = fit.slope * spread;
            if var < 0.0 {
                return Err(Error::Domain(format!(
                    "linear-in-slope variance is negative for slope {}",
                    fit.slope
                )));
            }
            Ok(var.sqrt())
        }
    }
}

/// Symmetric interval `slope ± t·s`, quadratic variance form.
pub fn approx_ci(
    sample: &PairedSample,
    fit: &BetaEstimate,
    level: f64,
) -> Result<ConfidenceInterval> {
    approx_ci_with(sample, fit, level, VarianceForm::SlopeSquared)
}

/// Symmetric interval `slope ± t·s` under the chosen variance form.
pub fn approx_ci_with(
    sample: &PairedSample,
    fit: &BetaEstimate,
    level: f64,
    form: VarianceForm,
) -> Result<ConfidenceInterval> {
    let s = slope_stderr_with(sample, fit, form)?;
    let t = t_critical(level, sample.n() - 2)?;
    Ok(ConfidenceInterval {
        lower: fit.slope - t * s,
        upper: fit.slope + t * s,
        level,
        method: CiMethod::Approximate,
        t_critical: t,
        b_factor: b_factor(sample, t),
    })
}

/// Multiplicatively symmetric interval `slope·[√(B+1) ∓ √B]`.
pub fn exact_ci(
    sample: &PairedSample,
    fit: &BetaEstimate,
    level: f64,
) -> Result<ConfidenceInterval> {
    let n = sample.n();
    if n < 3 {
        return Err(Error::InsufficientData {
            context: "exact confidence interval",
            required: 3,
            actual: n,
        });
    }
    let t = t_critical(level, n - 2)?;
    let b = b_factor(sample, t);
    let root_sum = (b + 1.0).sqrt();
    let root_b = b.sqrt();
    let a = fit.slope * (root_sum - root_b);
    let bnd = fit.slope * (root_sum + root_b);
    let (lower, upper) = if a <= bnd { (a, bnd) } else { (bnd, a) };
    Ok(ConfidenceInterval {
        lower,
        upper,
        level,
        method: CiMethod::Exact,
        t_critical: t,
        b_factor: b,
    })
}

fn b_factor(sample: &PairedSample, t: f64) -> f64 {
    let r2 = sample.corr() * sample.corr();
    t * t * (1.0 - r2) / (sample.n() as f64 - 2.0)
}

/// CDF of Student's t with `nu` degrees of freedom.
fn student_cdf(t: f64, nu: f64) -> f64 {
    if t == 0.0 {
        return 0.5;
    }
    let x = nu / (nu + t * t);
    let tail = 0.5 * reg_inc_beta(0.5 * nu, 0.5, x);
    if t > 0.0 {
        1.0 - tail
    } else {
        tail
    }
}

/// Regularized incomplete beta function I_x(a, b), continued-fraction
/// evaluation with the symmetry switch at x = (a+1)/(a+b+2).
fn reg_inc_beta(a: f64, b: f64, x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    if x >= 1.0 {
        return 1.0;
    }
    let ln_front = ln_gamma(a + b) - ln_gamma(a) - ln_gamma(b) + a * x.ln() + b * (1.0 - x).ln();
    let front = ln_front.exp();
    if x < (a + 1.0) / (a + b + 2.0) {
        front * beta_cont_frac(a, b, x) / a
    } else {
        1.0 - front * beta_cont_frac(b, a, 1.0 - x) / b
    }
}

/// Lentz-style continued fraction for the incomplete beta integral.
fn beta_cont_frac(a: f64, b: f64, x: f64) -> f64 {
    const TINY: f64 = 1e-300;
    const EPS: f64 = 3e-16;
    let qab = a + b;
    let qap = a + 1.0;
    let qam = a - 1.0;
    let mut c = 1.0;
    let mut d = 1.0 - qab * x / qap;
    if d.abs() < TINY {
        d = TINY;
    }
    d = 1.0 / d;
    let mut h = d;
    for m in 1..=500 {
        let m = m as f64;
        let m2 = 2.0 * m;
        let aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        h *= d * c;
        let aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let del = d * c;
        h *= del;
        if (del - 1.0).abs() < EPS {
            break;
        }
    }
    h
}

/// Lanczos approximation (g = 7, 9 terms) of ln Γ(x) for x > 0.
fn ln_gamma(x: f64) -> f64 {
    const COEF: [f64; 8] = [
        676.520_368_121_885_1,
        -1_259.139_216_722_402_8,
        771.323_428_777_653_13,
        -176.615_029_162_140_59,
        12.507_343_278_686_905,
        -0.138_571_095_265_720_12,
        9.984_369_578_019_571_6e-6,
        1.505_632_735_149_311_6e-7,
    ];
    if x < 0.5 {
        // Reflection keeps the approximation in its accurate range.
        return std::f64::consts::PI.ln()
            - (std::f64::consts::PI * x).sin().ln()
            - ln_gamma(1.0 - x);
    }
    let x = x - 1.0;
    let mut acc = 0.999_999_999_999_809_93;
    for (i, &c) in COEF.iter().enumerate() {
        acc += c / (x + i as f64 + 1.0);
    }
    let t = x + 7.5;
    0.5 * (2.0 * std::f64::consts::PI).ln() + (x + 0.5) * t.ln() - t + acc.ln()
}
