use super::OracleError;

/// Supported significance levels.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Alpha {
    OnePercent,
    TenthPercent,
}

impl TryFrom<f64> for Alpha {
    type Error = OracleError;

    fn try_from(alpha: f64) -> Result<Self, OracleError> {
        if alpha == 0.01 {
            Ok(Alpha::OnePercent)
        } else if alpha == 0.001 {
            Ok(Alpha::TenthPercent)
        } else {
            Err(OracleError::UnsupportedAlpha(alpha))
        }
    }
}

// Upper quantiles of the chi-square distribution, df = 1..=30.
const CRITICAL_01: [f64; 30] = [
    6.6349, 9.2103, 11.3449, 13.2767, 15.0863, 16.8119, 18.4753, 20.0902, 21.6660, 23.2093, 24.7250, 26.2170,
    27.6882, 29.1412, 30.5779, 31.9999, 33.4087, 34.8053, 36.1909, 37.5662, 38.9322, 40.2894, 41.6384, 42.9798,
    44.3141, 45.6417, 46.9629, 48.2782, 49.5879, 50.8922,
];
const CRITICAL_001: [f64; 30] = [
    10.8276, 13.8155, 16.2662, 18.4668, 20.5150, 22.4577, 24.3219, 26.1245, 27.8772, 29.5883, 31.2641, 32.9095,
    34.5282, 36.1233, 37.6973, 39.2524, 40.7902, 42.3124, 43.8202, 45.3147, 46.7970, 48.2679, 49.7282, 51.1786,
    52.6197, 54.0520, 55.4760, 56.8923, 58.3012, 59.7031,
];

pub fn chi_square_critical_value(df: usize, alpha: Alpha) -> Result<f64, OracleError> {
    if df == 0 || df > 30 {
        return Err(OracleError::UnsupportedDegreesOfFreedom(df));
    }
    Ok(match alpha {
        Alpha::OnePercent => CRITICAL_01[df - 1],
        Alpha::TenthPercent => CRITICAL_001[df - 1],
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChiSquareOutcome {
    pub statistic: f64,
    pub df: usize,
    pub critical: f64,
    pub pass: bool,
}

/// Pearson goodness-of-fit of `observed` counts against cell
/// probabilities `expected`. Every expected count must be at least 5.
pub fn chi_square_gof(observed: &[u64], expected: &[f64], alpha: Alpha) -> Result<ChiSquareOutcome, OracleError> {
    if observed.len() != expected.len() {
        return Err(OracleError::LengthMismatch {
            observed: observed.len(),
            expected: expected.len(),
        });
    }
    let total: u64 = observed.iter().sum();
    let total = total as f64;
    let mut statistic = 0.0;
    for (cell, (&o, &p)) in observed.iter().zip(expected).enumerate() {
        let e = total * p;
        if !(e >= 5.0) {
            return Err(OracleError::SparseCell { cell, expected: e });
        }
        let diff = o as f64 - e;
        statistic += diff * diff / e;
    }
    let df = observed.len().saturating_sub(1);
    let critical = chi_square_critical_value(df, alpha)?;
    Ok(ChiSquareOutcome {
        statistic,
        df,
        critical,
        pass: statistic <= critical,
    })
}
