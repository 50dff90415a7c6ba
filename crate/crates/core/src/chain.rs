//! The toggle process itself: switch patterns, sampled switch matrices, the
//! exact law of the terminal on-count, closed-form moments, and Kolmogorov
//! distance between a standardized lattice law and the standard normal.

use rand::Rng;

use crate::numeric::CompensatedSum;
use crate::{spectral, Error, Result};

/// Tolerance within which a mass vector must sum to 1.
pub const PMF_MASS_TOL: f64 = 1e-12;

/// A stage-size profile: `stages[r-1]` bulbs are toggled at stage r, chosen
/// uniformly among the n bulbs, independently across stages.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SwitchPattern {
    n: u32,
    stages: Vec<u32>,
}

impl SwitchPattern {
    /// Builds a pattern over `n` bulbs; every stage size must be at most `n`.
    /// An empty stage list is allowed and leaves all bulbs off.
    pub fn new(n: u32, stages: Vec<u32>) -> Result<SwitchPattern> {
        if n == 0 {
            return Err(Error::InvalidBulbCount);
        }
        for &s in &stages {
            if s > n {
                return Err(Error::StageSizeOutOfRange { size: s, n });
            }
        }
        Ok(SwitchPattern { n, stages })
    }

    /// The standard pattern (1, 2, ..., n): stage r toggles exactly r bulbs.
    pub fn standard(n: u32) -> Result<SwitchPattern> {
        SwitchPattern::new(n, (1..=n).collect())
    }

    /// The standard pattern over odd n = 2m+1 with its two middle stages
    /// resized: stage m toggles m + `lower_offset` bulbs and stage m+1
    /// toggles m + `upper_offset` bulbs. Offsets must be 0 or 1; offsets
    /// (0, 1) reproduce the standard pattern.
    pub fn standard_middle(n: u32, lower_offset: u32, upper_offset: u32) -> Result<SwitchPattern> {
        if n % 2 == 0 {
            return Err(Error::ExpectedOdd(n));
        }
        if n < 3 {
            return Err(Error::BelowMinimum { n, min: 3 });
        }
        if lower_offset > 1 {
            return Err(Error::InvalidOffset(lower_offset));
        }
        if upper_offset > 1 {
            return Err(Error::InvalidOffset(upper_offset));
        }
        let m = (n - 1) / 2;
        let mut stages: Vec<u32> = (1..=n).collect();
        stages[(m - 1) as usize] = m + lower_offset;
        stages[m as usize] = m + upper_offset;
        SwitchPattern::new(n, stages)
    }

    /// Number of bulbs.
    pub fn n(&self) -> u32 {
        self.n
    }

    /// Stage sizes in order.
    pub fn stages(&self) -> &[u32] {
        &self.stages
    }

    /// Number of stages.
    pub fn len(&self) -> usize {
        self.stages.len()
    }

    /// True when there are no stages.
    pub fn is_empty(&self) -> bool {
        self.stages.is_empty()
    }

    /// Size of stage `l` (1-based).
    pub fn stage_size(&self, l: usize) -> Result<u32> {
        self.check_stage(l)?;
        Ok(self.stages[l - 1])
    }

    /// The pattern with stage `l` (1-based) deleted.
    pub fn without_stage(&self, l: usize) -> Result<SwitchPattern> {
        self.check_stage(l)?;
        let mut stages = self.stages.clone();
        stages.remove(l - 1);
        Ok(SwitchPattern { n: self.n, stages })
    }

    /// The pattern with the two distinct stages `l` and `j` (1-based)
    /// deleted.
    pub fn without_stage_pair(&self, l: usize, j: usize) -> Result<SwitchPattern> {
        self.check_stage(l)?;
        self.check_stage(j)?;
        if l == j {
            return Err(Error::EqualStageIndices(l));
        }
        let (first, second) = if l < j { (l, j) } else { (j, l) };
        let mut stages = self.stages.clone();
        stages.remove(second - 1);
        stages.remove(first - 1);
        Ok(SwitchPattern { n: self.n, stages })
    }

    fn check_stage(&self, l: usize) -> Result<()> {
        if l == 0 || l > self.stages.len() {
            return Err(Error::StageIndexOutOfRange {
                index: l,
                k: self.stages.len(),
            });
        }
        Ok(())
    }
}

/// A realized run of the process: row r records which bulbs stage r toggled.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SwitchMatrix {
    n: u32,
    bits: Vec<Vec<u8>>,
    row_sums: Vec<u32>,
}

impl SwitchMatrix {
    /// Builds a matrix from explicit rows of 0/1 entries; every row must
    /// have exactly `n` entries.
    pub fn from_rows(n: u32, bits: Vec<Vec<u8>>) -> Result<SwitchMatrix> {
        if n == 0 {
            return Err(Error::InvalidBulbCount);
        }
        let mut row_sums = Vec::with_capacity(bits.len());
        for (r, row) in bits.iter().enumerate() {
            if row.len() != n as usize {
                return Err(Error::RowWidthMismatch {
                    row: r + 1,
                    len: row.len(),
                    n,
                });
            }
            let mut sum = 0u32;
            for (c, &v) in row.iter().enumerate() {
                if v > 1 {
                    return Err(Error::NonBinaryEntry {
                        row: r + 1,
                        col: c + 1,
                    });
                }
                sum += u32::from(v);
            }
            row_sums.push(sum);
        }
        Ok(SwitchMatrix { n, bits, row_sums })
    }

    /// Number of bulbs (columns).
    pub fn n(&self) -> u32 {
        self.n
    }

    /// Number of stages (rows).
    pub fn stage_count(&self) -> usize {
        self.bits.len()
    }

    /// Entry for stage `r`, bulb `j` (both 1-based).
    ///
    /// # Panics
    /// Panics when either index is out of range.
    pub fn bit(&self, r: usize, j: usize) -> u8 {
        self.bits[r - 1][j - 1]
    }

    /// Per-row toggle counts.
    pub fn row_sums(&self) -> &[u32] {
        &self.row_sums
    }

    /// True when the row sums realize `pattern` over the same bulb count.
    pub fn matches_pattern(&self, pattern: &SwitchPattern) -> bool {
        self.n == pattern.n() && self.row_sums == pattern.stages()
    }

    /// Terminal state of every bulb: bulb j is on iff it was toggled an odd
    /// number of times.
    pub fn column_parities(&self) -> Vec<u8> {
        let mut parities = vec![0u8; self.n as usize];
        for row in &self.bits {
            for (p, &v) in parities.iter_mut().zip(row.iter()) {
                *p ^= v;
            }
        }
        parities
    }

    /// Overwrites one entry, keeping row sums consistent (0-based indices;
    /// internal use by the odd-n symmetrization).
    pub(crate) fn set(&mut self, r0: usize, j0: usize, v: u8) {
        let old = self.bits[r0][j0];
        self.row_sums[r0] = self.row_sums[r0] - u32::from(old) + u32::from(v);
        self.bits[r0][j0] = v;
    }
}

/// Draws one run of the process: each stage toggles a uniformly random
/// subset of the prescribed size, independently across stages.
pub fn sample_switch_matrix<R: Rng + ?Sized>(pattern: &SwitchPattern, rng: &mut R) -> SwitchMatrix {
    let n = pattern.n() as usize;
    // Partial Fisher-Yates over a persistent scratch permutation: stage r
    // needs an s_r-subset, obtained by s_r swap steps, O(sum s_r) total.
    let mut perm: Vec<usize> = (0..n).collect();
    let mut bits = Vec::with_capacity(pattern.len());
    let mut row_sums = Vec::with_capacity(pattern.len());
    for &s in pattern.stages() {
        let s = s as usize;
        let mut row = vec![0u8; n];
        for t in 0..s {
            let pick = rng.random_range(t..n);
            perm.swap(t, pick);
            row[perm[t]] = 1;
        }
        bits.push(row);
        row_sums.push(s as u32);
    }
    SwitchMatrix {
        n: pattern.n(),
        bits,
        row_sums,
    }
}

/// Number of bulbs left on by a realized run.
pub fn count_on(matrix: &SwitchMatrix) -> u32 {
    matrix.column_parities().iter().map(|&p| u32::from(p)).sum()
}

/// A probability mass function on {0, 1, ..., n}.
#[derive(Debug, Clone, PartialEq)]
pub struct Pmf {
    n: u32,
    mass: Vec<f64>,
}

impl Pmf {
    /// Validates that `mass` has length n+1, is entrywise nonnegative, and
    /// sums to 1 within [`PMF_MASS_TOL`].
    pub fn new(n: u32, mass: Vec<f64>) -> Result<Pmf> {
        let expected = n as usize + 1;
        if mass.len() != expected {
            return Err(Error::WrongMassLength {
                len: mass.len(),
                expected,
            });
        }
        let mut total = CompensatedSum::new();
        for (index, &value) in mass.iter().enumerate() {
            if value.is_nan() || value < 0.0 {
                return Err(Error::NegativeMass { index, value });
            }
            total.add(value);
        }
        let sum = total.value();
        if (sum - 1.0).abs() > PMF_MASS_TOL {
            return Err(Error::MassNotNormalized { sum });
        }
        Ok(Pmf { n, mass })
    }

    /// Upper end of the support range {0, ..., n}.
    pub fn n(&self) -> u32 {
        self.n
    }

    /// Mass vector indexed by outcome.
    pub fn mass(&self) -> &[f64] {
        &self.mass
    }

    /// Mass at outcome `k`.
    ///
    /// # Panics
    /// Panics when `k > n`.
    pub fn prob(&self, k: usize) -> f64 {
        self.mass[k]
    }

    /// Mean of the law.
    pub fn mean(&self) -> f64 {
        let mut acc = CompensatedSum::new();
        for (k, &p) in self.mass.iter().enumerate() {
            acc.add(k as f64 * p);
        }
        acc.value()
    }

    /// Variance of the law (centered two-pass evaluation).
    pub fn variance(&self) -> f64 {
        let mean = self.mean();
        let mut acc = CompensatedSum::new();
        for (k, &p) in self.mass.iter().enumerate() {
            let d = k as f64 - mean;
            acc.add(d * d * p);
        }
        acc.value()
    }

    /// Total variation distance to another law on the same support.
    ///
    /// # Panics
    /// Panics when the supports differ.
    pub fn total_variation(&self, other: &Pmf) -> f64 {
        assert_eq!(
            self.n, other.n,
            "total variation requires laws on the same support"
        );
        let mut acc = CompensatedSum::new();
        for (&p, &q) in self.mass.iter().zip(other.mass.iter()) {
            acc.add((p - q).abs());
        }
        0.5 * acc.value()
    }
}

/// Exact law of the on-count after running `pattern`, by dynamic
/// programming over stages: toggling a uniform s-subset sends on-count k to
/// k + s - 2j with hypergeometric weight C(k,j) C(n-k,s-j) / C(n,s).
///
/// Each hypergeometric row is built multiplicatively outward from its mode
/// and normalized by its own sum, so no C(n,s) is ever formed and every
/// intermediate stays in [0,1]; this keeps the recursion stable for n well
/// beyond 10^3. Destination cells accumulate with compensated summation.
pub fn exact_pmf(pattern: &SwitchPattern) -> Pmf {
    let n = pattern.n() as usize;
    let mut mass: Vec<CompensatedSum> = vec![CompensatedSum::new(); n + 1];
    mass[0].add(1.0);
    let mut weights = vec![0.0f64; n + 1];
    for &s in pattern.stages() {
        let s = s as usize;
        let mut next: Vec<CompensatedSum> = vec![CompensatedSum::new(); n + 1];
        for k in 0..=n {
            let mk = mass[k].value();
            if mk == 0.0 {
                continue;
            }
            let lo = s.saturating_sub(n - k);
            let hi = k.min(s);
            // Mode of the overlap count j between the s toggled bulbs and
            // the k currently-on bulbs.
            let mode = (((s + 1) * (k + 1)) / (n + 2)).clamp(lo, hi);
            weights[mode] = 1.0;
            let mut row_total = CompensatedSum::new();
            row_total.add(1.0);
            let mut w = 1.0;
            for j in mode..hi {
                // ratio of consecutive hypergeometric terms; the second
                // factor n+j+1-k-s stays positive for j >= lo
                w *= ((k - j) * (s - j)) as f64 / (((j + 1) * (n + j + 1 - k - s)) as f64);
                weights[j + 1] = w;
                row_total.add(w);
            }
            w = 1.0;
            for j in (lo..mode).rev() {
                w *= ((j + 1) * (n + j + 1 - k - s)) as f64 / (((k - j) * (s - j)) as f64);
                weights[j] = w;
                row_total.add(w);
            }
            let norm = row_total.value();
            for j in lo..=hi {
                next[k + s - 2 * j].add(mk * weights[j] / norm);
            }
        }
        mass = next;
    }
    let mass: Vec<f64> = mass.iter().map(|c| c.value().max(0.0)).collect();
    Pmf::new(pattern.n(), mass).expect("stagewise transitions preserve normalization")
}

/// Mean and variance of the on-count directly from the eigenvalue calculus,
/// without enumerating the law.
pub fn mean_var_formula(pattern: &SwitchPattern) -> (f64, f64) {
    let n = f64::from(pattern.n());
    let l1 = spectral::lambda_product(1, pattern).expect("order 1 is valid for every pattern");
    let mean = n / 2.0 * (1.0 - l1);
    if pattern.n() == 1 {
        // A single bulb has no bulb pairs: the pair-correlation coefficient
        // n(n-1)/4 vanishes and the variance reduces to the Bernoulli form.
        return (mean, (1.0 - l1 * l1) / 4.0);
    }
    let l2 = spectral::lambda_product(2, pattern)
        .expect("order 2 is valid for every pattern over 2+ bulbs");
    let var = n / 4.0 * (1.0 - l2) + n * n / 4.0 * (l2 - l1 * l1);
    (mean, var)
}

/// Mean and variance of the symmetrized on-count V for odd n under the
/// standard pattern. V has mean exactly n/2; its variance uses the
/// middle-averaged order-2 eigenvalue.
pub fn v_mean_var(n: u32) -> Result<(f64, f64)> {
    if n % 2 == 0 {
        return Err(Error::ExpectedOdd(n));
    }
    if n < 3 {
        return Err(Error::BelowMinimum { n, min: 3 });
    }
    let l2 = spectral::lambda_bar(2, &SwitchPattern::standard(n)?)?;
    let nf = f64::from(n);
    let var = nf / 4.0 * (1.0 - l2) + nf * nf / 4.0 * l2;
    Ok((nf / 2.0, var))
}

/// The size-biased law of `pmf`: mass at k proportional to k times the
/// original mass. Errors when the mean is zero.
pub fn size_biased_pmf(pmf: &Pmf) -> Result<Pmf> {
    let mean = pmf.mean();
    if mean <= 0.0 {
        return Err(Error::ZeroMeanPmf);
    }
    let mass: Vec<f64> = pmf
        .mass()
        .iter()
        .enumerate()
        .map(|(k, &p)| k as f64 * p / mean)
        .collect();
    Pmf::new(pmf.n(), mass)
}

/// Standard normal cumulative distribution function, evaluated through the
/// complementary error function for full relative accuracy in both tails.
pub fn normal_cdf(z: f64) -> f64 {
    0.5 * libm::erfc(-z / std::f64::consts::SQRT_2)
}

/// Kolmogorov distance between the law of (K - mean)/sd, K ~ `pmf`, and the
/// standard normal: the supremum over real z of the CDF gap, which for a
/// lattice law is attained at an atom from the left or the right.
pub fn kolmogorov_distance(pmf: &Pmf, mean: f64, sd: f64) -> Result<f64> {
    if !(sd.is_finite() && sd > 0.0) {
        return Err(Error::NonpositiveSd(sd));
    }
    let mut cdf = CompensatedSum::new();
    let mut sup = 0.0f64;
    for (k, &p) in pmf.mass().iter().enumerate() {
        let z = (k as f64 - mean) / sd;
        let phi = normal_cdf(z);
        // just below the atom: empirical CDF has not yet jumped
        sup = sup.max((phi - cdf.value()).abs());
        cdf.add(p);
        // at the atom: empirical CDF includes the jump
        sup = sup.max((cdf.value() - phi).abs());
    }
    Ok(sup)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Parity;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn standard(n: u32) -> SwitchPattern {
        SwitchPattern::standard(n).unwrap()
    }

    #[test]
    fn pattern_validation() {
        assert_eq!(SwitchPattern::new(0, vec![]), Err(Error::InvalidBulbCount));
        assert_eq!(
            SwitchPattern::new(3, vec![4]),
            Err(Error::StageSizeOutOfRange { size: 4, n: 3 })
        );
        let p = standard(5);
        assert_eq!(p.stages(), &[1, 2, 3, 4, 5]);
        assert_eq!(p.stage_size(3), Ok(3));
        assert!(p.stage_size(6).is_err());
        assert!(p.stage_size(0).is_err());
    }

    #[test]
    fn deletions() {
        let p = standard(5);
        assert_eq!(p.without_stage(3).unwrap().stages(), &[1, 2, 4, 5]);
        assert_eq!(p.without_stage_pair(2, 4).unwrap().stages(), &[1, 3, 5]);
        assert_eq!(p.without_stage_pair(4, 2).unwrap().stages(), &[1, 3, 5]);
        assert_eq!(p.without_stage_pair(2, 2), Err(Error::EqualStageIndices(2)));
    }

    #[test]
    fn middle_resized_patterns() {
        // n = 7, m = 3: offsets (a, b) resize stage 3 to 3+a, stage 4 to 3+b.
        let p = SwitchPattern::standard_middle(7, 0, 1).unwrap();
        assert_eq!(p.stages(), &[1, 2, 3, 4, 5, 6, 7]);
        let p = SwitchPattern::standard_middle(7, 1, 0).unwrap();
        assert_eq!(p.stages(), &[1, 2, 4, 3, 5, 6, 7]);
        let p = SwitchPattern::standard_middle(7, 0, 0).unwrap();
        assert_eq!(p.stages(), &[1, 2, 3, 3, 5, 6, 7]);
        assert!(SwitchPattern::standard_middle(6, 0, 0).is_err());
        assert!(SwitchPattern::standard_middle(7, 2, 0).is_err());
        // Deleting the resized stages recovers standard deletions: with the
        // lower offset arbitrary, upper offset 0 deletes to the same profile
        // as removing stage m+1, upper offset 1 to removing stage m.
        let base = standard(7);
        for a in 0..=1 {
            let p = SwitchPattern::standard_middle(7, a, 0).unwrap();
            let mut q = p.without_stage(3).unwrap().stages().to_vec();
            q.sort_unstable();
            let mut r = base.without_stage(4).unwrap().stages().to_vec();
            r.sort_unstable();
            assert_eq!(q, r);
            let p = SwitchPattern::standard_middle(7, a, 1).unwrap();
            let mut q = p.without_stage(3).unwrap().stages().to_vec();
            q.sort_unstable();
            let mut r = base.without_stage(3).unwrap().stages().to_vec();
            r.sort_unstable();
            assert_eq!(q, r);
        }
    }

    #[test]
    fn matrix_validation() {
        assert!(SwitchMatrix::from_rows(2, vec![vec![0, 1], vec![1, 1]]).is_ok());
        assert_eq!(
            SwitchMatrix::from_rows(2, vec![vec![0, 1, 0]]),
            Err(Error::RowWidthMismatch {
                row: 1,
                len: 3,
                n: 2
            })
        );
        assert_eq!(
            SwitchMatrix::from_rows(2, vec![vec![0, 2]]),
            Err(Error::NonBinaryEntry { row: 1, col: 2 })
        );
    }

    #[test]
    fn sampled_matrix_realizes_pattern() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in [1u32, 2, 5, 9, 24] {
            let p = standard(n);
            for _ in 0..20 {
                let m = sample_switch_matrix(&p, &mut rng);
                assert!(m.matches_pattern(&p));
                assert_eq!(m.stage_count(), n as usize);
            }
        }
    }

    #[test]
    fn count_matches_column_parity() {
        let m = SwitchMatrix::from_rows(
            4,
            vec![
                vec![1, 0, 0, 0],
                vec![1, 1, 0, 0],
                vec![1, 1, 1, 0],
                vec![1, 1, 1, 1],
            ],
        )
        .unwrap();
        assert_eq!(m.column_parities(), vec![0, 1, 0, 1]);
        assert_eq!(count_on(&m), 2);
    }

    #[test]
    fn pmf_validation() {
        assert!(Pmf::new(1, vec![0.5, 0.5]).is_ok());
        assert!(matches!(
            Pmf::new(1, vec![0.5, 0.5, 0.0]),
            Err(Error::WrongMassLength { .. })
        ));
        assert!(matches!(
            Pmf::new(1, vec![-0.1, 1.1]),
            Err(Error::NegativeMass { .. })
        ));
        assert!(matches!(
            Pmf::new(1, vec![0.5, 0.6]),
            Err(Error::MassNotNormalized { .. })
        ));
    }

    #[test]
    fn exact_law_small_cases() {
        // n = 1: the single stage toggles the single bulb.
        let p = exact_pmf(&standard(1));
        assert_eq!(p.mass(), &[0.0, 1.0]);
        // n = 2: stage 1 toggles one bulb, stage 2 toggles both; exactly one
        // bulb ends on.
        let p = exact_pmf(&standard(2));
        assert!((p.prob(1) - 1.0).abs() < 1e-15);
        assert_eq!(p.prob(0), 0.0);
        assert_eq!(p.prob(2), 0.0);
        // n = 4 by hand enumeration: {0: 1/8, 2: 3/4, 4: 1/8}.
        let p = exact_pmf(&standard(4));
        assert!((p.prob(0) - 0.125).abs() < 1e-14);
        assert!((p.prob(2) - 0.75).abs() < 1e-14);
        assert!((p.prob(4) - 0.125).abs() < 1e-14);
        assert_eq!(p.prob(1), 0.0);
        assert_eq!(p.prob(3), 0.0);
    }

    #[test]
    fn exact_law_parity_support() {
        // The on-count parity equals the total toggle-count parity, so half
        // the lattice carries exactly zero mass.
        for n in [3u32, 6, 11, 40] {
            let total: u32 = standard(n).stages().iter().sum();
            let p = exact_pmf(&standard(n));
            for k in 0..=n as usize {
                if (k as u32) % 2 != total % 2 {
                    assert_eq!(p.prob(k), 0.0, "n={n} k={k}");
                }
            }
        }
    }

    #[test]
    fn empty_pattern_is_point_mass_at_zero() {
        let p = exact_pmf(&SwitchPattern::new(5, vec![]).unwrap());
        assert_eq!(p.prob(0), 1.0);
        assert_eq!(p.mean(), 0.0);
    }

    #[test]
    fn moment_formulas_match_exact_law() {
        for n in 1..=40u32 {
            let pattern = standard(n);
            let pmf = exact_pmf(&pattern);
            let (mean, var) = mean_var_formula(&pattern);
            assert!(
                (pmf.mean() - mean).abs() <= 1e-11 * mean.max(1.0),
                "mean mismatch at n={n}: {} vs {}",
                pmf.mean(),
                mean
            );
            assert!(
                (pmf.variance() - var).abs() <= 1e-11 * var.max(1.0),
                "variance mismatch at n={n}: {} vs {}",
                pmf.variance(),
                var
            );
        }
    }

    #[test]
    fn moment_formulas_nonstandard_pattern() {
        let pattern = SwitchPattern::new(6, vec![2, 2, 5]).unwrap();
        let pmf = exact_pmf(&pattern);
        let (mean, var) = mean_var_formula(&pattern);
        assert!((pmf.mean() - mean).abs() < 1e-12);
        assert!((pmf.variance() - var).abs() < 1e-12);
    }

    #[test]
    fn even_standard_variance_closed_form() {
        // Even n: stage n/2 zeroes the order-1 product, so the variance is
        // n/4 (1 - l2) + n^2/4 l2 with l2 the order-2 product.
        let pattern = standard(6);
        let (mean, var) = mean_var_formula(&pattern);
        assert!((mean - 3.0).abs() < 1e-15);
        // l2 at n = 6 is -1/10125 by hand evaluation of the factor table.
        let l2 = -1.0 / 10125.0;
        let expect = 6.0 / 4.0 * (1.0 - l2) + 9.0 * l2;
        assert!((var - expect).abs() < 1e-14);
    }

    #[test]
    fn v_moments() {
        // n = 3: averaged order-2 value is 1/9, variance 11/12.
        let (mean, var) = v_mean_var(3).unwrap();
        assert!((mean - 1.5).abs() < 1e-15);
        assert!((var - 11.0 / 12.0).abs() < 1e-14);
        assert_eq!(v_mean_var(4), Err(Error::ExpectedOdd(4)));
        assert_eq!(v_mean_var(1), Err(Error::BelowMinimum { n: 1, min: 3 }));
    }

    #[test]
    fn size_biasing() {
        // n = 4: size-biasing {0:1/8, 2:3/4, 4:1/8} gives {2:3/4, 4:1/4}.
        let p = exact_pmf(&standard(4));
        let sb = size_biased_pmf(&p).unwrap();
        assert!((sb.prob(2) - 0.75).abs() < 1e-14);
        assert!((sb.prob(4) - 0.25).abs() < 1e-14);
        assert_eq!(sb.prob(0), 0.0);
        // The size-biased mean is E[X^2]/E[X].
        let second_moment = p.variance() + p.mean() * p.mean();
        assert!((sb.mean() - second_moment / p.mean()).abs() < 1e-12);
        // Zero-mean laws cannot be size-biased.
        let point = Pmf::new(2, vec![1.0, 0.0, 0.0]).unwrap();
        assert_eq!(size_biased_pmf(&point), Err(Error::ZeroMeanPmf));
    }

    #[test]
    fn normal_cdf_reference_values() {
        assert_eq!(normal_cdf(0.0), 0.5);
        // Reference values from the erfc series, accurate to 1e-16.
        assert!((normal_cdf(1.96) - 0.9750021048517795).abs() < 1e-14);
        assert!((normal_cdf(-1.96) - 0.024997895148220428).abs() < 1e-14);
        assert!((normal_cdf(1.0) - 0.8413447460685429).abs() < 1e-14);
        // Symmetry and tail behavior.
        for z in [0.1, 0.5, 1.5, 3.0, 8.0] {
            assert!((normal_cdf(z) + normal_cdf(-z) - 1.0).abs() < 1e-15);
        }
        assert!(normal_cdf(-40.0) >= 0.0);
        assert!(normal_cdf(40.0) <= 1.0);
    }

    #[test]
    fn kolmogorov_point_mass() {
        // A standardized point mass at its own mean compares F = 1 against
        // Phi(0) = 1/2 from the left: distance exactly 1/2.
        let p = Pmf::new(2, vec![0.0, 1.0, 0.0]).unwrap();
        let d = kolmogorov_distance(&p, 1.0, 1.0).unwrap();
        assert!((d - 0.5).abs() < 1e-15);
    }

    #[test]
    fn kolmogorov_two_point() {
        // Mass 1/2 at -1 and +1 after standardization: the gap just below
        // the upper atom is Phi(1) - 1/2.
        let p = Pmf::new(2, vec![0.5, 0.0, 0.5]).unwrap();
        let d = kolmogorov_distance(&p, 1.0, 1.0).unwrap();
        assert!((d - 0.341_344_746_068_542_9).abs() < 1e-14);
    }

    #[test]
    fn kolmogorov_affine_consistency() {
        // Doubling the lattice (mass of K moved to 2K) while doubling mean
        // and sd leaves every standardized atom, hence the distance, exactly
        // unchanged (doubling is exact in binary floating point).
        let p = exact_pmf(&standard(8));
        let (mean, var) = mean_var_formula(&standard(8));
        let sd = var.sqrt();
        let mut doubled = vec![0.0; 17];
        for (k, &m) in p.mass().iter().enumerate() {
            doubled[2 * k] = m;
        }
        let p2 = Pmf::new(16, doubled).unwrap();
        let d1 = kolmogorov_distance(&p, mean, sd).unwrap();
        let d2 = kolmogorov_distance(&p2, 2.0 * mean, 2.0 * sd).unwrap();
        assert_eq!(d1, d2);
        assert!(kolmogorov_distance(&p, mean, 0.0).is_err());
        assert!(kolmogorov_distance(&p, mean, f64::NAN).is_err());
        assert!(kolmogorov_distance(&p, mean, -1.0).is_err());
    }

    #[test]
    fn kolmogorov_decreases_along_standard_sizes() {
        // Sanity sweep: distance at the exact standardization decreases from
        // n = 6 to n = 60.
        let mut prev = f64::INFINITY;
        for n in [6u32, 12, 24, 60] {
            let pattern = standard(n);
            let p = exact_pmf(&pattern);
            let (mean, var) = mean_var_formula(&pattern);
            let d = kolmogorov_distance(&p, mean, var.sqrt()).unwrap();
            assert!(d < prev, "n={n}: {d} !< {prev}");
            prev = d;
        }
    }

    #[test]
    fn parity_helper() {
        assert_eq!(Parity::of(6), Parity::Even);
        assert_eq!(Parity::of(7), Parity::Odd);
        assert_eq!(Parity::Even.to_string(), "even");
        assert_eq!(Parity::Odd.to_string(), "odd");
    }
}
