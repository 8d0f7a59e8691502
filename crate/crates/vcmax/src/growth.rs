use crate::error::{Error, Result};

/// Least-squares fit of `log(count)` against `log(size)`, with a residual
/// comparison against a semilog fit to flag apparently exponential growth.
#[derive(Clone, Debug)]
pub struct GrowthEstimate {
    /// Slope of the log-log fit: the estimated polynomial growth exponent.
    pub slope: f64,
    pub intercept: f64,
    /// Sum of squared residuals of the log-log (polynomial) fit.
    pub log_log_rss: f64,
    /// Sum of squared residuals of the semilog (exponential) fit.
    pub semilog_rss: f64,
    /// Set when the exponential model fits strictly better than the
    /// polynomial one; the slope is then not meaningful as an exponent.
    pub superpolynomial_suspected: bool,
    pub samples: Vec<(usize, u64)>,
}

fn least_squares(points: &[(f64, f64)]) -> (f64, f64, f64) {
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = if sxx == 0.0 { 0.0 } else { sxy / sxx };
    let intercept = my - slope * mx;
    let rss = points
        .iter()
        .map(|p| {
            let r = p.1 - (slope * p.0 + intercept);
            r * r
        })
        .sum();
    (slope, intercept, rss)
}

/// Estimates the polynomial growth exponent of a trace-counting oracle. The
/// oracle receives a parameter-set size and a derived seed and returns the
/// number of distinct traces observed at that size; the estimate is
/// deterministic for a fixed seed.
pub fn estimate_growth_exponent<F>(
    mut trace_counter: F,
    sizes: &[usize],
    seed: u64,
) -> Result<GrowthEstimate>
where
    F: FnMut(usize, u64) -> u64,
{
    if sizes.len() < 2 {
        return Err(Error::InvalidInput(
            "growth estimation needs at least two sizes".into(),
        ));
    }
    if sizes.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::InvalidInput("sizes must be ascending".into()));
    }
    if sizes.iter().all(|&s| s == sizes[0]) {
        return Err(Error::InvalidInput(
            "degenerate sizes: all sample sizes are equal".into(),
        ));
    }
    if sizes[0] == 0 {
        return Err(Error::InvalidInput("sizes must be positive".into()));
    }

    let samples: Vec<(usize, u64)> = sizes
        .iter()
        .enumerate()
        .map(|(i, &s)| (s, trace_counter(s, seed.wrapping_add(i as u64))))
        .collect();
    if samples.iter().any(|&(_, c)| c == 0) {
        return Err(Error::InvalidInput(
            "trace oracle returned zero; families are nonempty".into(),
        ));
    }

    let loglog: Vec<(f64, f64)> = samples
        .iter()
        .map(|&(s, c)| ((s as f64).ln(), (c as f64).ln()))
        .collect();
    let semilog: Vec<(f64, f64)> = samples
        .iter()
        .map(|&(s, c)| (s as f64, (c as f64).ln()))
        .collect();
    let (slope, intercept, log_log_rss) = least_squares(&loglog);
    let (_, _, semilog_rss) = least_squares(&semilog);

    let growing = samples.last().unwrap().1 > samples[0].1;
    let superpolynomial_suspected = growing && semilog_rss + 1e-9 < log_log_rss;

    Ok(GrowthEstimate {
        slope,
        intercept,
        log_log_rss,
        semilog_rss,
        superpolynomial_suspected,
        samples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sauer::sauer_bound_usize;

    #[test]
    fn quadratic_counts_fit_near_two() {
        let est = estimate_growth_exponent(
            |k, _| sauer_bound_usize(k, 2).unwrap() as u64,
            &[8, 16, 32],
            0,
        )
        .unwrap();
        assert!(
            est.slope >= 1.7 && est.slope <= 2.0,
            "slope {} outside [1.7, 2.0]",
            est.slope
        );
        assert!(!est.superpolynomial_suspected);
    }

    #[test]
    fn constant_counts_fit_zero() {
        let est = estimate_growth_exponent(|_, _| 17, &[4, 8, 16], 0).unwrap();
        assert!(est.slope.abs() < 1e-9, "slope {}", est.slope);
        assert!(!est.superpolynomial_suspected);
    }

    #[test]
    fn exponential_counts_raise_the_flag() {
        let est = estimate_growth_exponent(|k, _| 1u64 << k, &[8, 16, 32], 0).unwrap();
        assert!(est.superpolynomial_suspected);
        assert!(est.slope > 2.5);
    }

    #[test]
    fn degenerate_sizes_are_rejected() {
        assert!(estimate_growth_exponent(|_, _| 1, &[4, 4, 4], 0).is_err());
        assert!(estimate_growth_exponent(|_, _| 1, &[4], 0).is_err());
        assert!(estimate_growth_exponent(|_, _| 1, &[8, 4], 0).is_err());
    }

    #[test]
    fn deterministic_under_seed() {
        let oracle = |k: usize, s: u64| (k as u64).wrapping_mul(31).wrapping_add(s % 7) % 50 + 1;
        let a = estimate_growth_exponent(oracle, &[4, 8, 16], 42).unwrap();
        let b = estimate_growth_exponent(oracle, &[4, 8, 16], 42).unwrap();
        assert_eq!(a.samples, b.samples);
        assert_eq!(a.slope, b.slope);
    }
}
