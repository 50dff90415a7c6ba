//! Normal-approximation error bounds for the on-count of the standard
//! pattern, certified against the exact Kolmogorov distance.

use crate::chain::{self, SwitchPattern};
use crate::coupling;
use crate::{Error, Parity, Result};

/// Weight of the squared-increment term in the size-bias smoothing
/// inequality: it uniformly bounds the relevant derivative of the solution
/// of the normal characterizing equation over half-line test functions, so
/// a coupling with increments in [0, B] contributes at most this constant
/// times (B/sigma)^2 mu/sigma beyond the first-order terms.
pub const INCREMENT_SQUARED_WEIGHT: f64 = 0.82;

/// Density of the standard normal at its mode, 1/sqrt(2 pi): shifting a
/// normal CDF by h changes it by at most h times this value. The odd-n
/// bound pays it on the at-most-2 gap between the raw and symmetrized
/// counts.
pub const NORMAL_PEAK_DENSITY: f64 = 0.3989422804014327;

/// Inputs of the generic smoothing bound: a nonnegative random variable
/// with mean `mu` and standard deviation `sigma`, coupled to its
/// size-biased version with increments in [0, `b_width`]; `delta_cap` caps
/// the dispersion (standard deviation) of the conditional expectation of
/// the increment given the underlying configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundInputs {
    pub mu: f64,
    pub sigma: f64,
    pub delta_cap: f64,
    pub b_width: f64,
}

/// One certified bound evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub n: u32,
    pub parity: Parity,
    /// Variance of the standardizing law (the raw count for even n, the
    /// symmetrized count for odd n).
    pub sigma2: f64,
    /// Closed-form cap on the dispersion of the conditional mean increment.
    pub delta_bar: f64,
    /// First term: mu/sigma^2 times `delta_bar`.
    pub term_delta: f64,
    /// Second term: the squared-increment contribution.
    pub term_conc: f64,
    /// Third term: the smoothing cost B/sigma, plus the symmetrization gap
    /// cost for odd n.
    pub term_smooth: f64,
    /// Sum of the three terms: the certified Kolmogorov bound.
    pub total: f64,
    /// Exact Kolmogorov distance, when it was computed.
    pub ks_exact: Option<f64>,
}

impl BoundReport {
    /// Whether the exact distance respects the bound; `None` when the exact
    /// distance was not computed.
    pub fn certified(&self) -> Option<bool> {
        self.ks_exact.map(|ks| ks <= self.total)
    }
}

fn check_input(field: &'static str, value: f64) -> Result<()> {
    if !(value.is_finite() && value >= 0.0) {
        return Err(Error::InvalidBoundInput { field, value });
    }
    Ok(())
}

fn terms(mu: f64, sigma: f64, delta_cap: f64, b_width: f64) -> (f64, f64, f64) {
    let term_delta = mu / (sigma * sigma) * delta_cap;
    let term_conc = INCREMENT_SQUARED_WEIGHT * (b_width / sigma).powi(2) * mu / sigma;
    let term_smooth = b_width / sigma;
    (term_delta, term_conc, term_smooth)
}

/// The generic smoothing bound for a bounded size-bias coupling: the
/// Kolmogorov distance between the standardized variable and the normal is
/// at most mu/sigma^2 delta_cap + 0.82 (b_width/sigma)^2 mu/sigma +
/// b_width/sigma.
pub fn generic_bound(inputs: &BoundInputs) -> Result<f64> {
    if !(inputs.sigma.is_finite() && inputs.sigma > 0.0) {
        return Err(Error::NonpositiveSd(inputs.sigma));
    }
    check_input("mu", inputs.mu)?;
    check_input("delta_cap", inputs.delta_cap)?;
    check_input("b_width", inputs.b_width)?;
    let (t1, t2, t3) = terms(inputs.mu, inputs.sigma, inputs.delta_cap, inputs.b_width);
    Ok(t1 + t2 + t3)
}

/// Certified bound for even n >= 6 on the standard pattern, standardizing
/// the on-count by its own mean n/2 and variance: the coupling increments
/// are 0 or 2 and the conditional-increment dispersion is capped by the
/// closed form from [`coupling::delta0`].
pub fn even_bound(n: u32) -> Result<BoundReport> {
    let delta = coupling::delta0(n)?;
    let (mu, sigma2) = chain::mean_var_formula(&SwitchPattern::standard(n)?);
    let sigma = sigma2.sqrt();
    let (term_delta, term_conc, term_smooth) = terms(mu, sigma, delta.bound, 2.0);
    Ok(BoundReport {
        n,
        parity: Parity::Even,
        sigma2,
        delta_bar: delta.bound,
        term_delta,
        term_conc,
        term_smooth,
        total: term_delta + term_conc + term_smooth,
        ks_exact: None,
    })
}

/// Certified bound for odd n >= 7 on the standard pattern, standardizing
/// the on-count by the symmetrized moments (n/2, sigma_V): the symmetrized
/// count admits a coupling with increments in {0, 1, 2} and dispersion
/// capped by [`coupling::delta1`], and the raw count differs from the
/// symmetrized one by at most 2, costing an extra 2/sigma times the peak
/// normal density in the smoothing term.
pub fn odd_bound(n: u32) -> Result<BoundReport> {
    let delta = coupling::delta1(n)?;
    let (mu, sigma2) = chain::v_mean_var(n)?;
    let sigma = sigma2.sqrt();
    let (term_delta, term_conc, base_smooth) = terms(mu, sigma, delta.bound, 2.0);
    let term_smooth = base_smooth * (1.0 + NORMAL_PEAK_DENSITY);
    Ok(BoundReport {
        n,
        parity: Parity::Odd,
        sigma2,
        delta_bar: delta.bound,
        term_delta,
        term_conc,
        term_smooth,
        total: term_delta + term_conc + term_smooth,
        ks_exact: None,
    })
}

/// Evaluates the parity-appropriate bound and the exact Kolmogorov
/// distance it certifies: even n standardizes the exact law by its own
/// moments, odd n by the symmetrized moments. Requires n >= 6.
pub fn certify(n: u32) -> Result<BoundReport> {
    let mut report = if n % 2 == 0 {
        even_bound(n)?
    } else {
        odd_bound(n)?
    };
    let pattern = SwitchPattern::standard(n)?;
    let pmf = chain::exact_pmf(&pattern);
    let (mean, sd) = match report.parity {
        Parity::Even => {
            let (mu, var) = chain::mean_var_formula(&pattern);
            (mu, var.sqrt())
        }
        Parity::Odd => (f64::from(n) / 2.0, report.sigma2.sqrt()),
    };
    report.ks_exact = Some(chain::kolmogorov_distance(&pmf, mean, sd)?);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn even_bound_frozen_n6() {
        let r = even_bound(6).unwrap();
        assert_eq!(r.parity, Parity::Even);
        assert!((r.sigma2 - 1.4992592593).abs() < 1e-9);
        assert!((r.delta_bar - 0.3040531680).abs() < 1e-9);
        assert!((r.term_delta - 0.6084067838).abs() < 1e-8);
        assert!((r.term_conc - 5.3601875900).abs() < 1e-8);
        assert!((r.term_smooth - 1.6333965194).abs() < 1e-8);
        assert!((r.total - 7.6019908933).abs() < 1e-8);
        assert!((r.total - (r.term_delta + r.term_conc + r.term_smooth)).abs() < 1e-15);
        assert_eq!(r.ks_exact, None);
        assert_eq!(r.certified(), None);
    }

    #[test]
    fn odd_bound_frozen_n7() {
        let r = odd_bound(7).unwrap();
        assert_eq!(r.parity, Parity::Odd);
        assert!((r.sigma2 - 1.7500892485).abs() < 1e-9);
        assert!((r.delta_bar - 0.4394028399).abs() < 1e-9);
        // smoothing term exceeds the bare 2/sigma by the peak-density factor
        let sigma = r.sigma2.sqrt();
        assert!(r.term_smooth > 2.0 / sigma);
        assert!((r.term_smooth - 2.0 / sigma * (1.0 + NORMAL_PEAK_DENSITY)).abs() < 1e-12);
        assert!((r.total - (r.term_delta + r.term_conc + r.term_smooth)).abs() < 1e-15);
    }

    #[test]
    fn bound_validation() {
        assert!(even_bound(7).is_err());
        assert!(even_bound(4).is_err());
        assert!(odd_bound(6).is_err());
        assert!(odd_bound(5).is_err());
        assert!(certify(5).is_err());
    }

    #[test]
    fn generic_bound_matches_even_terms() {
        let r = even_bound(8).unwrap();
        let total = generic_bound(&BoundInputs {
            mu: 4.0,
            sigma: r.sigma2.sqrt(),
            delta_cap: r.delta_bar,
            b_width: 2.0,
        })
        .unwrap();
        assert!((total - r.total).abs() < 1e-14);
    }

    #[test]
    fn generic_bound_validation() {
        let good = BoundInputs {
            mu: 3.0,
            sigma: 1.2,
            delta_cap: 0.3,
            b_width: 2.0,
        };
        assert!(generic_bound(&good).is_ok());
        for (field, bad) in [
            ("sigma", BoundInputs { sigma: 0.0, ..good }),
            (
                "sigma",
                BoundInputs {
                    sigma: -1.0,
                    ..good
                },
            ),
            (
                "sigma",
                BoundInputs {
                    sigma: f64::NAN,
                    ..good
                },
            ),
            ("mu", BoundInputs { mu: -1.0, ..good }),
            (
                "delta_cap",
                BoundInputs {
                    delta_cap: -0.1,
                    ..good
                },
            ),
            (
                "b_width",
                BoundInputs {
                    b_width: f64::INFINITY,
                    ..good
                },
            ),
        ] {
            assert!(generic_bound(&bad).is_err(), "{field} not rejected");
        }
    }

    #[test]
    fn certify_small_even() {
        let r = certify(6).unwrap();
        let ks = r.ks_exact.unwrap();
        // exact distance of the standardized n = 6 law
        assert!((ks - 0.3125925926).abs() < 1e-9);
        assert!(ks <= r.total);
        assert_eq!(r.certified(), Some(true));
    }

    #[test]
    fn certify_small_odd() {
        let r = certify(7).unwrap();
        let ks = r.ks_exact.unwrap();
        // exact distance of the n = 7 law standardized by the symmetrized
        // moments
        assert!((ks - 0.3014239336).abs() < 1e-9);
        assert!(ks <= r.total);
        assert_eq!(r.certified(), Some(true));
    }

    #[test]
    fn bound_shrinks_with_n() {
        let mut prev = f64::INFINITY;
        for n in (6..=60u32).step_by(2) {
            let total = even_bound(n).unwrap().total;
            assert!(total < prev, "n={n}");
            prev = total;
        }
        prev = f64::INFINITY;
        for n in (7..=61u32).step_by(2) {
            let total = odd_bound(n).unwrap().total;
            assert!(total < prev, "n={n}");
            prev = total;
        }
    }

    #[test]
    fn large_even_scaling() {
        // at n = 10^4 the order-2 eigenvalue has fully decayed: sigma^2 is
        // n/4 and the bound times sqrt(n) lands near 18.13
        let r = even_bound(10_000).unwrap();
        assert!((r.sigma2 - 2500.0).abs() < 1e-6);
        let scaled = r.total * 100.0;
        assert!((17.0..=19.0).contains(&scaled), "{scaled}");
        assert!((scaled - 18.13).abs() < 0.01);
    }
}
