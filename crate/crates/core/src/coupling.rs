//! Bounded size-bias couplings for the standard pattern: the even-n
//! single-swap construction on the on-count, and the odd-n construction on
//! the symmetrized count obtained by replacing one middle-row entry per
//! middle stage with a fair coin.

use rand::Rng;

use crate::chain::{count_on, SwitchMatrix, SwitchPattern};
use crate::numeric::falling;
use crate::{spectral, Error, Parity, Result};

/// One draw of a size-bias coupling. For even n the base count is the
/// on-count of the run; for odd n it is the symmetrized count of a
/// [`VDraw`]. The increment `xs - x` is 0 or 2 for even n and 0, 1, or 2
/// for odd n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CouplingDraw {
    /// Base count being size-biased.
    pub x: u32,
    /// The coupled size-biased count.
    pub xs: u32,
    /// The uniformly chosen bulb (1-based).
    pub i: usize,
    /// Interchange partner bulb, when an interchange happened.
    pub j: Option<usize>,
    /// Odd n only: which middle stage (1-based, m or m+1) was selected for
    /// the modification; `None` when the chosen bulb was already on.
    pub m_stage: Option<usize>,
    /// Odd n only: outcome of the single-flip branch. `Some(true)` means
    /// the entry was flipped (increment exactly 1), `Some(false)` means the
    /// flip was available but the interchange was taken, `None` means the
    /// flip branch was unavailable.
    pub flip: Option<bool>,
}

impl CouplingDraw {
    /// The coupling increment xs - x.
    pub fn increment(&self) -> u32 {
        self.xs - self.x
    }
}

fn require_standard(matrix: &SwitchMatrix) -> Result<()> {
    let n = matrix.n();
    if matrix.stage_count() != n as usize
        || matrix
            .row_sums()
            .iter()
            .enumerate()
            .any(|(r, &s)| s != r as u32 + 1)
    {
        return Err(Error::NotStandardMatrix);
    }
    Ok(())
}

/// Size-bias coupling for even n on a realized standard-pattern run: pick a
/// uniform bulb I; if it is on, the count is already exchangeable with its
/// size-biased version and nothing changes; if it is off, swap the stage-n/2
/// row entry of I with that of a uniform opposite-valued bulb J, toggling
/// both terminal states. The resulting count has the size-biased law of the
/// on-count, and the increment is 0 or 2.
pub fn even_size_bias<R: Rng + ?Sized>(matrix: &SwitchMatrix, rng: &mut R) -> Result<CouplingDraw> {
    let n = matrix.n();
    if n % 2 != 0 {
        return Err(Error::ExpectedEven(n));
    }
    require_standard(matrix)?;
    let parities = matrix.column_parities();
    let x = parities.iter().map(|&p| u32::from(p)).sum::<u32>();
    let nu = n as usize;
    let i = rng.random_range(1..=nu);
    if parities[i - 1] == 1 {
        return Ok(CouplingDraw {
            x,
            xs: x,
            i,
            j: None,
            m_stage: None,
            flip: None,
        });
    }
    let half = (n / 2) as usize;
    let my_bit = matrix.bit(half, i);
    // exactly n/2 opposite entries exist, so rejection sampling terminates
    // in two expected tries
    let j = loop {
        let cand = rng.random_range(1..=nu);
        if matrix.bit(half, cand) != my_bit {
            break cand;
        }
    };
    // the swap toggles the terminal states of bulbs i (off -> on) and j
    // Swapping I off and J in leaves the count unchanged when bulb J was
    // already on, and raises it by two when both end up toggled on.
    let xs = if parities[j - 1] == 0 { x + 2 } else { x };
    Ok(CouplingDraw {
        x,
        xs,
        i,
        j: Some(j),
        m_stage: None,
        flip: None,
    })
}

/// The pair statistic driving the even-n bound: (4/n^2) times the number of
/// ordered bulb pairs (i, j), both terminally off, whose stage-n/2 row
/// entries are 0 at i and 1 at j. Its expectation is half the mean coupling
/// increment: the conditional mean of the increment given the full switch
/// configuration equals exactly twice this statistic.
pub fn u_n(matrix: &SwitchMatrix) -> Result<f64> {
    let n = matrix.n();
    if n % 2 != 0 {
        return Err(Error::ExpectedEven(n));
    }
    require_standard(matrix)?;
    let parities = matrix.column_parities();
    let half = (n / 2) as usize;
    let mut off_zero = 0u64;
    let mut off_one = 0u64;
    for (idx, &parity) in parities.iter().enumerate() {
        if parity == 0 {
            if matrix.bit(half, idx + 1) == 0 {
                off_zero += 1;
            } else {
                off_one += 1;
            }
        }
    }
    let value = 4.0 * (off_zero * off_one) as f64 / (f64::from(n) * f64::from(n));
    debug_assert!((0.0..=2.0).contains(&value));
    Ok(value)
}

/// A symmetrized run for odd n = 2m+1: one uniformly chosen zero entry of
/// row m is replaced by a fair coin, and one uniformly chosen one entry of
/// row m+1 is replaced by an independent fair coin. Row m then sums to
/// m + C_m and row m+1 to m + C_{m+1}, making the two middle rows
/// exchangeable fair mixtures of sizes m and m+1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VDraw {
    matrix: SwitchMatrix,
    b_lower: usize,
    b_upper: usize,
    c_lower: u8,
    c_upper: u8,
    v: u32,
    x: u32,
}

impl VDraw {
    /// The modified switch matrix.
    pub fn matrix(&self) -> &SwitchMatrix {
        &self.matrix
    }

    /// Bulb (1-based) whose row-m entry was replaced.
    pub fn b_lower(&self) -> usize {
        self.b_lower
    }

    /// Bulb (1-based) whose row-(m+1) entry was replaced.
    pub fn b_upper(&self) -> usize {
        self.b_upper
    }

    /// Fair coin written into row m.
    pub fn c_lower(&self) -> u8 {
        self.c_lower
    }

    /// Fair coin written into row m+1.
    pub fn c_upper(&self) -> u8 {
        self.c_upper
    }

    /// Symmetrized on-count.
    pub fn v(&self) -> u32 {
        self.v
    }

    /// On-count of the unmodified run; differs from `v` by at most 2.
    pub fn x(&self) -> u32 {
        self.x
    }
}

/// Symmetrizes a realized standard-pattern run over odd n; see [`VDraw`].
pub fn symmetrize_v<R: Rng + ?Sized>(matrix: &SwitchMatrix, rng: &mut R) -> Result<VDraw> {
    let n = matrix.n();
    if n % 2 == 0 {
        return Err(Error::ExpectedOdd(n));
    }
    if n < 3 {
        return Err(Error::BelowMinimum { n, min: 3 });
    }
    require_standard(matrix)?;
    let x = count_on(matrix);
    let m = ((n - 1) / 2) as usize;
    let nu = n as usize;
    // row m has m ones, hence m+1 zeros; row m+1 has m+1 ones
    let b_lower = loop {
        let cand = rng.random_range(1..=nu);
        if matrix.bit(m, cand) == 0 {
            break cand;
        }
    };
    let b_upper = loop {
        let cand = rng.random_range(1..=nu);
        if matrix.bit(m + 1, cand) == 1 {
            break cand;
        }
    };
    let c_lower = u8::from(rng.random::<bool>());
    let c_upper = u8::from(rng.random::<bool>());
    let mut modified = matrix.clone();
    modified.set(m - 1, b_lower - 1, c_lower);
    modified.set(m, b_upper - 1, c_upper);
    let v = count_on(&modified);
    debug_assert_eq!(modified.row_sums()[m - 1], m as u32 + u32::from(c_lower));
    debug_assert_eq!(modified.row_sums()[m], m as u32 + u32::from(c_upper));
    Ok(VDraw {
        matrix: modified,
        b_lower,
        b_upper,
        c_lower,
        c_upper,
        v,
        x,
    })
}

/// Size-bias coupling for odd n on a symmetrized run: pick a uniform bulb
/// I; if it is on, nothing changes. Otherwise pick a middle stage M
/// uniformly from {m, m+1}. When the row-M entry of I equals that row's
/// coin (so the row can absorb one more toggle), flip that entry with
/// probability 1/(m+1), raising the count by exactly 1; otherwise
/// interchange the entry with that of a uniform opposite-valued bulb J in
/// row M, raising the count by 2 if J was off and 0 if it was on. The
/// resulting count has the size-biased law of the symmetrized count.
pub fn odd_size_bias<R: Rng + ?Sized>(draw: &VDraw, rng: &mut R) -> Result<CouplingDraw> {
    let matrix = draw.matrix();
    let n = matrix.n();
    let m = ((n - 1) / 2) as usize;
    let nu = n as usize;
    let parities = matrix.column_parities();
    let v = draw.v();
    let i = rng.random_range(1..=nu);
    if parities[i - 1] == 1 {
        return Ok(CouplingDraw {
            x: v,
            xs: v,
            i,
            j: None,
            m_stage: None,
            flip: None,
        });
    }
    let stage = if rng.random::<bool>() { m } else { m + 1 };
    let coin = if stage == m {
        draw.c_lower()
    } else {
        draw.c_upper()
    };
    let my_bit = matrix.bit(stage, i);
    let mut flip = None;
    if my_bit == coin {
        let take_flip = rng.random_range(0..m as u64 + 1) == 0;
        flip = Some(take_flip);
        if take_flip {
            return Ok(CouplingDraw {
                x: v,
                xs: v + 1,
                i,
                j: None,
                m_stage: Some(stage),
                flip,
            });
        }
    }
    // at least m opposite entries exist in the row, so rejection sampling
    // terminates quickly
    let j = loop {
        let cand = rng.random_range(1..=nu);
        if matrix.bit(stage, cand) != my_bit {
            break cand;
        }
    };
    // Interchange semantics mirror the even construction: the count rises by
    // two when the partner bulb was off, and is unchanged when it was on.
    let xs = if parities[j - 1] == 0 { v + 2 } else { v };
    Ok(CouplingDraw {
        x: v,
        xs,
        i,
        j: Some(j),
        m_stage: Some(stage),
        flip,
    })
}

/// The two statistics driving the odd-n bound, evaluated on a symmetrized
/// run. The first (flip term) is 1/(2n(m+1)) times the number of (stage,
/// bulb) pairs over the two middle stages with the bulb terminally off and
/// its row entry equal to the row's coin; the second (interchange term) is
/// 1/(n(m+1)) times the sum over the two middle stages of the product of
/// off-bulb counts with row entry 0 and with row entry 1. The conditional
/// mean coupling increment given the configuration is the first plus twice
/// the second.
pub fn zeta_xi(draw: &VDraw) -> (f64, f64) {
    let matrix = draw.matrix();
    let n = matrix.n();
    let m = ((n - 1) / 2) as usize;
    let parities = matrix.column_parities();
    let mut feasible = 0u64;
    let mut cross = 0u64;
    for (stage, coin) in [(m, draw.c_lower()), (m + 1, draw.c_upper())] {
        let mut off_zero = 0u64;
        let mut off_one = 0u64;
        for (idx, &parity) in parities.iter().enumerate() {
            if parity == 0 {
                if matrix.bit(stage, idx + 1) == 0 {
                    off_zero += 1;
                } else {
                    off_one += 1;
                }
                if matrix.bit(stage, idx + 1) == coin {
                    feasible += 1;
                }
            }
        }
        cross += off_zero * off_one;
    }
    let nf = f64::from(n);
    let mf = m as f64;
    let zeta = feasible as f64 / (2.0 * nf * (mf + 1.0));
    let xi = cross as f64 / (nf * (mf + 1.0));
    (zeta, xi)
}

/// Dispersion of the conditional mean increment of a size-bias coupling,
/// next to the closed-form cap the certified bounds substitute for it.
#[derive(Debug, Clone, PartialEq)]
pub struct DeltaReport {
    pub n: u32,
    pub parity: Parity,
    /// Standard deviation (even) or standard-deviation cap (odd) of the
    /// conditional mean increment statistic.
    pub delta: f64,
    /// Closed-form cap on `delta` used by the certified bounds.
    pub bound: f64,
    /// Even n: exact variance of the pair statistic. Odd n: the
    /// Cauchy-Schwarz cap A + 4 sqrt(AB) + 4B on the variance of the
    /// combined statistic.
    pub variance: f64,
    /// Odd n: variance A of the flip term.
    pub var_zeta: Option<f64>,
    /// Odd n: variance B of the interchange term.
    pub var_xi: Option<f64>,
}

impl DeltaReport {
    /// Whether the computed dispersion respects its closed-form cap.
    pub fn within_bound(&self) -> bool {
        self.delta <= self.bound
    }
}

/// Exact variance of the even-n pair statistic for the standard pattern,
/// with its closed-form cap 1/(2 sqrt n) + 1/(2n) + e^{-n/2}/3. Requires
/// even n >= 6.
pub fn delta0(n: u32) -> Result<DeltaReport> {
    if n % 2 != 0 {
        return Err(Error::ExpectedEven(n));
    }
    if n < 6 {
        return Err(Error::BelowMinimum { n, min: 6 });
    }
    let half_removed = SwitchPattern::standard(n)?.without_stage((n / 2) as usize)?;
    let l2 = spectral::lambda_product(2, &half_removed)?;
    let l4 = spectral::lambda_product(4, &half_removed)?;
    let nf = f64::from(n);
    let variance = 1.0 / (4.0 * nf) + 1.0 / (4.0 * nf * nf) + (l4 - l2 * l2) / 16.0
        - l2 / (2.0 * nf * nf)
        + (1.0 - nf) / (4.0 * nf * nf) * l4;
    let bound = 0.5 / nf.sqrt() + 0.5 / nf + (-nf / 2.0).exp() / 3.0;
    Ok(DeltaReport {
        n,
        parity: Parity::Even,
        delta: variance.sqrt(),
        bound,
        variance,
        var_zeta: None,
        var_xi: None,
    })
}

/// Exact variances of the odd-n flip and interchange statistics combined
/// into the Cauchy-Schwarz cap A + 4 sqrt(AB) + 4B, with the closed-form
/// cap 1/sqrt(n) + e^{-n/4}/(2 sqrt 2) on its square root. Requires odd
/// n >= 7.
pub fn delta1(n: u32) -> Result<DeltaReport> {
    if n % 2 == 0 {
        return Err(Error::ExpectedOdd(n));
    }
    if n < 7 {
        return Err(Error::BelowMinimum { n, min: 7 });
    }
    let m = (n - 1) / 2;
    let standard = SwitchPattern::standard(n)?;
    let lower_removed = standard.without_stage(m as usize)?;
    let pair_removed = standard.without_stage_pair(m as usize, m as usize + 1)?;
    let lb2 = spectral::lambda_bar(2, &lower_removed)?;
    let lb4 = spectral::lambda_bar(4, &lower_removed)?;
    let l2mm = spectral::lambda_product(2, &pair_removed)?;
    let l4mm = spectral::lambda_product(4, &pair_removed)?;
    let nf = f64::from(n);
    let mf = f64::from(m);
    let var_zeta = (3.0 * mf + 2.0) / (8.0 * nf.powi(3) * (mf + 1.0))
        + mf / (8.0 * nf * nf * (mf + 1.0)) * lb2;
    let var_xi = mf * (8.0 * mf + 3.0) / (8.0 * nf.powi(3))
        + mf * (mf * mf + mf - 1.0) / (4.0 * nf * nf * (mf + 1.0)) * lb2
        + falling(mf + 1.0, 2) / (4.0 * nf.powi(3)) * l2mm
        + mf * mf * (mf - 1.0) / (8.0 * nf * nf * (mf + 1.0)) * lb4
        + falling(mf, 2).powi(2) / (2.0 * nf * nf * falling(nf, 4)) * l4mm
        - mf * mf / (4.0 * nf * nf) * lb2 * lb2;
    let variance = var_zeta + 4.0 * (var_zeta * var_xi).sqrt() + 4.0 * var_xi;
    let bound = 1.0 / nf.sqrt() + (-nf / 4.0).exp() / (2.0 * std::f64::consts::SQRT_2);
    Ok(DeltaReport {
        n,
        parity: Parity::Odd,
        delta: variance.sqrt(),
        bound,
        variance,
        var_zeta: Some(var_zeta),
        var_xi: Some(var_xi),
    })
}
