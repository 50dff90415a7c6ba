//! Exact rational reference computations for the verification suite and the
//! acceptance gate. Every routine here recomputes a quantity the core crate
//! produces in floating point, by exhaustive enumeration or exact dynamic
//! programming over arbitrary-precision rationals, and deliberately follows
//! a different route than the core implementation so that agreement between
//! the two is evidence rather than tautology.
//!
//! These are test instruments, not library surface: misuse (a pattern too
//! large to enumerate, an even n passed to an odd-only routine) panics with
//! a message instead of returning an error.

use std::collections::BTreeMap;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};
use steinlight::chain::SwitchPattern;
use steinlight::spectral::TwoStageSpec;

/// Largest number of equally likely switch configurations the exhaustive
/// enumerations will visit.
pub const ENUMERATION_LIMIT: u64 = 1_000_000;

/// Binomial coefficient as an exact integer; safe for n <= 64.
fn binomial_count(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut c: u128 = 1;
    for i in 0..k {
        // stepwise exact: c * (n - i) is divisible by i + 1
        c = c * u128::from(n - i) / u128::from(i + 1);
    }
    c
}

fn ratio(num: u128, den: u128) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Number of equally likely switch configurations realizing `pattern`,
/// saturating at u64::MAX.
pub fn configuration_count(pattern: &SwitchPattern) -> u64 {
    pattern.stages().iter().fold(1u64, |acc, &s| {
        let c = binomial_count(u64::from(pattern.n()), u64::from(s));
        let c = u64::try_from(c).unwrap_or(u64::MAX);
        acc.saturating_mul(c)
    })
}

/// All n-bit masks with exactly s bits set, in increasing order.
fn subset_masks(n: u32, s: u32) -> Vec<u32> {
    assert!(n <= 31 && s <= n, "subset enumeration limited to n <= 31");
    if s == 0 {
        return vec![0];
    }
    let limit = 1u32 << n;
    let mut v = (1u32 << s) - 1;
    let mut out = Vec::new();
    while v < limit {
        out.push(v);
        // next mask with the same popcount
        let c = v & v.wrapping_neg();
        let r = v + c;
        v = (((r ^ v) >> 2) / c) | r;
    }
    out
}

/// Visits every configuration realizing `pattern` as a slice of per-stage
/// subset masks (bulb j is bit j-1).
fn for_each_config(pattern: &SwitchPattern, f: &mut impl FnMut(&[u32])) {
    let total = configuration_count(pattern);
    assert!(
        total <= ENUMERATION_LIMIT,
        "enumeration over {total} configurations exceeds the {ENUMERATION_LIMIT} cap"
    );
    let stage_masks: Vec<Vec<u32>> = pattern
        .stages()
        .iter()
        .map(|&s| subset_masks(pattern.n(), s))
        .collect();
    fn rec(stage_masks: &[Vec<u32>], i: usize, rows: &mut Vec<u32>, f: &mut impl FnMut(&[u32])) {
        if i == stage_masks.len() {
            f(rows);
            return;
        }
        for &m in &stage_masks[i] {
            rows.push(m);
            rec(stage_masks, i + 1, rows, f);
            rows.pop();
        }
    }
    let mut rows = Vec::with_capacity(stage_masks.len());
    rec(&stage_masks, 0, &mut rows, f);
}

/// Exact law of the terminal on-count by exhaustive enumeration of every
/// equally likely configuration. Masses indexed by count 0..=n.
pub fn enumerate_pmf(pattern: &SwitchPattern) -> Vec<BigRational> {
    let total = configuration_count(pattern);
    let mut counts = vec![0u64; pattern.n() as usize + 1];
    for_each_config(pattern, &mut |rows| {
        let acc = rows.iter().fold(0u32, |a, &r| a ^ r);
        counts[acc.count_ones() as usize] += 1;
    });
    counts
        .iter()
        .map(|&c| ratio(u128::from(c), u128::from(total)))
        .collect()
}

/// Exact joint law of a size-bias coupling, as rational masses on pairs
/// (base count, biased count).
#[derive(Debug, Clone)]
pub struct CouplingLaw {
    n: u32,
    joint: BTreeMap<(u32, u32), BigRational>,
}

impl CouplingLaw {
    pub fn joint(&self) -> &BTreeMap<(u32, u32), BigRational> {
        &self.joint
    }

    /// Marginal law of the base count, indexed 0..=n.
    pub fn base_law(&self) -> Vec<BigRational> {
        let mut law = vec![BigRational::zero(); self.n as usize + 1];
        for (&(x, _), p) in &self.joint {
            law[x as usize] += p;
        }
        law
    }

    /// Marginal law of the biased count, indexed 0..=n.
    pub fn biased_law(&self) -> Vec<BigRational> {
        let mut law = vec![BigRational::zero(); self.n as usize + 1];
        for (&(_, xs), p) in &self.joint {
            law[xs as usize] += p;
        }
        law
    }

    /// Exact mean of the coupling increment.
    pub fn mean_increment(&self) -> BigRational {
        let mut acc = BigRational::zero();
        for (&(x, xs), p) in &self.joint {
            acc += BigRational::from(BigInt::from(xs - x)) * p;
        }
        acc
    }
}

/// Exact joint law of the even-n single-swap coupling on the standard
/// pattern, by enumerating every configuration, every choice of the uniform
/// bulb, and every interchange partner.
pub fn even_coupling_law(n: u32) -> CouplingLaw {
    assert!(n >= 2 && n % 2 == 0, "even n >= 2 required");
    let pattern = SwitchPattern::standard(n).expect("standard pattern");
    let total = configuration_count(&pattern);
    let half = n / 2;
    // every branch weight is a multiple of 1/(total * n * (n/2)): the
    // unchanged branch skips the partner draw and carries n/2 units, and
    // each partner in the always-(n/2)-element opposite set carries one
    let mut units: BTreeMap<(u32, u32), u64> = BTreeMap::new();
    for_each_config(&pattern, &mut |rows| {
        let acc = rows.iter().fold(0u32, |a, &r| a ^ r);
        let x = acc.count_ones();
        let half_row = rows[half as usize - 1];
        for i in 0..n {
            if (acc >> i) & 1 == 1 {
                *units.entry((x, x)).or_insert(0) += u64::from(half);
                continue;
            }
            let my = (half_row >> i) & 1;
            for j in 0..n {
                if (half_row >> j) & 1 != my {
                    let xs = if (acc >> j) & 1 == 0 { x + 2 } else { x };
                    *units.entry((x, xs)).or_insert(0) += 1;
                }
            }
        }
    });
    let denom = u128::from(total) * u128::from(n) * u128::from(half);
    let joint = units
        .into_iter()
        .map(|(k, u)| (k, ratio(u128::from(u), denom)))
        .collect();
    CouplingLaw { n, joint }
}

/// Applies the odd-n symmetrization to one configuration: returns the
/// modified middle rows for a choice of replaced bulbs and coins.
fn resample_middle(row: u32, bulb: u32, coin: u8) -> u32 {
    if coin == 1 {
        row | (1 << bulb)
    } else {
        row & !(1 << bulb)
    }
}

/// Exact law of the symmetrized count for odd n, by enumerating every
/// configuration, replaced-entry choice, and coin pair. Masses indexed
/// 0..=n.
pub fn symmetrized_law(n: u32) -> Vec<BigRational> {
    assert!(n % 2 == 1 && n >= 3, "odd n >= 3 required");
    let pattern = SwitchPattern::standard(n).expect("standard pattern");
    let total = configuration_count(&pattern);
    let m = (n - 1) / 2;
    let mut units = vec![0u64; n as usize + 1];
    for_each_config(&pattern, &mut |rows| {
        let base = rows.iter().fold(0u32, |a, &r| a ^ r);
        let rl = rows[m as usize - 1];
        let ru = rows[m as usize];
        for bl in (0..n).filter(|&b| (rl >> b) & 1 == 0) {
            for bu in (0..n).filter(|&b| (ru >> b) & 1 == 1) {
                for cl in 0..2u8 {
                    for cu in 0..2u8 {
                        let nrl = resample_middle(rl, bl, cl);
                        let nru = resample_middle(ru, bu, cu);
                        let acc = base ^ rl ^ nrl ^ ru ^ nru;
                        units[acc.count_ones() as usize] += 1;
                    }
                }
            }
        }
    });
    // row m always has m+1 zeros and row m+1 has m+1 ones
    let denom = u128::from(total) * u128::from(m + 1) * u128::from(m + 1) * 4;
    units.iter().map(|&u| ratio(u128::from(u), denom)).collect()
}

/// Exact joint law of the odd-n coupling on the symmetrized count, by
/// enumerating every configuration, symmetrization choice, uniform bulb,
/// middle-stage choice, and flip/interchange branch.
pub fn odd_coupling_law(n: u32) -> CouplingLaw {
    assert!(n % 2 == 1 && n >= 3, "odd n >= 3 required");
    let pattern = SwitchPattern::standard(n).expect("standard pattern");
    let total = configuration_count(&pattern);
    let m = (n - 1) / 2;
    let mu = u64::from(m);
    // common unit 1/(total * 4(m+1)^2 * 2n * m(m+1)^3) makes every branch
    // weight an integer: the opposite-entry count in a resized middle row
    // is always m or m+1
    let unit_on = 2 * mu * (mu + 1).pow(3);
    let unit_flip = mu * (mu + 1) * (mu + 1);
    let unit_inter = |feasible: bool, opp: u64| -> u64 {
        if feasible {
            // remaining m/(m+1) share after the flip branch
            mu * mu * (mu + 1) * (mu + 1) / opp
        } else {
            mu * (mu + 1).pow(3) / opp
        }
    };
    let mut units: BTreeMap<(u32, u32), u64> = BTreeMap::new();
    for_each_config(&pattern, &mut |rows| {
        let base = rows.iter().fold(0u32, |a, &r| a ^ r);
        let rl = rows[m as usize - 1];
        let ru = rows[m as usize];
        for bl in (0..n).filter(|&b| (rl >> b) & 1 == 0) {
            for bu in (0..n).filter(|&b| (ru >> b) & 1 == 1) {
                for cl in 0..2u8 {
                    for cu in 0..2u8 {
                        let nrl = resample_middle(rl, bl, cl);
                        let nru = resample_middle(ru, bu, cu);
                        let acc = base ^ rl ^ nrl ^ ru ^ nru;
                        let v = acc.count_ones();
                        for i in 0..n {
                            if (acc >> i) & 1 == 1 {
                                *units.entry((v, v)).or_insert(0) += unit_on;
                                continue;
                            }
                            for (row, coin) in [(nrl, cl), (nru, cu)] {
                                let my = (row >> i) & 1;
                                let feasible = my == u32::from(coin);
                                if feasible {
                                    *units.entry((v, v + 1)).or_insert(0) += unit_flip;
                                }
                                let opp: u64 =
                                    (0..n).filter(|&j| (row >> j) & 1 != my).count() as u64;
                                let w = unit_inter(feasible, opp);
                                for j in (0..n).filter(|&j| (row >> j) & 1 != my) {
                                    let xs = if (acc >> j) & 1 == 0 { v + 2 } else { v };
                                    *units.entry((v, xs)).or_insert(0) += w;
                                }
                            }
                        }
                    }
                }
            }
        }
    });
    let denom = u128::from(total)
        * 4
        * u128::from(m + 1).pow(2)
        * 2
        * u128::from(n)
        * u128::from(mu * (mu + 1).pow(3));
    let joint = units
        .into_iter()
        .map(|(k, u)| (k, ratio(u128::from(u), denom)))
        .collect();
    CouplingLaw { n, joint }
}

/// Exact mean of a law given as masses indexed by value.
pub fn law_mean(law: &[BigRational]) -> BigRational {
    let mut acc = BigRational::zero();
    for (k, p) in law.iter().enumerate() {
        acc += BigRational::from(BigInt::from(k)) * p;
    }
    acc
}

/// Exact variance of a law given as masses indexed by value.
pub fn law_variance(law: &[BigRational]) -> BigRational {
    let mean = law_mean(law);
    let mut acc = BigRational::zero();
    for (k, p) in law.iter().enumerate() {
        acc += BigRational::from(BigInt::from(k * k)) * p;
    }
    acc - &mean * &mean
}

/// Exact size-biased law: mass at k proportional to k times the input mass.
/// Panics on a zero-mean law.
pub fn size_biased(law: &[BigRational]) -> Vec<BigRational> {
    let mean = law_mean(law);
    assert!(!mean.is_zero(), "size bias of a zero-mean law");
    law.iter()
        .enumerate()
        .map(|(k, p)| BigRational::from(BigInt::from(k)) * p / &mean)
        .collect()
}

/// Exact total variation distance between two laws on the same support
/// grid.
pub fn total_variation(a: &[BigRational], b: &[BigRational]) -> BigRational {
    assert_eq!(a.len(), b.len(), "laws on different grids");
    let mut acc = BigRational::zero();
    for (x, y) in a.iter().zip(b) {
        acc += (x - y).abs();
    }
    acc / BigRational::from(BigInt::from(2))
}

/// Rational-to-float conversion for comparisons against core output.
pub fn to_f64(x: &BigRational) -> f64 {
    x.to_f64().expect("rational representable as f64")
}

/// Float view of a rational law.
pub fn law_to_f64(law: &[BigRational]) -> Vec<f64> {
    law.iter().map(to_f64).collect()
}

/// Probability of a two-stage pinned-row event, by dynamic programming on
/// the joint parity vector of the mentioned bulbs. Stages act one at a
/// time; a stage of size s writes a restriction v (weight w) onto the q
/// mentioned positions with probability C(n-q, s-w) / C(n, s), restricted
/// to the pinned values on the two special stages, and the event requires
/// the final parity vector to be all zeros. This shares no code or formula
/// with the core computation it checks.
pub fn two_stage_parity_dp(spec: &TwoStageSpec) -> BigRational {
    let pattern = spec.pattern();
    let n = u64::from(pattern.n());
    let mut req_r: BTreeMap<usize, u8> = BTreeMap::new();
    let mut req_t: BTreeMap<usize, u8> = BTreeMap::new();
    for (group, req) in [(spec.group_r(), &mut req_r), (spec.group_t(), &mut req_t)] {
        for &(bulb, value) in group {
            if let Some(&prev) = req.get(&bulb) {
                if prev != value {
                    // contradictory pins make the event empty
                    return BigRational::zero();
                }
            }
            req.insert(bulb, value);
        }
    }
    let union: Vec<usize> = {
        let mut set: Vec<usize> = req_r.keys().chain(req_t.keys()).copied().collect();
        set.sort_unstable();
        set.dedup();
        set
    };
    let q = union.len();
    assert!(q <= 20, "parity DP limited to 20 mentioned bulbs");
    let pos: BTreeMap<usize, usize> = union.iter().enumerate().map(|(i, &b)| (b, i)).collect();
    let mut state = vec![BigRational::zero(); 1 << q];
    state[0] = BigRational::one();
    for (idx, &s) in pattern.stages().iter().enumerate() {
        let stage = idx + 1;
        let mut pins: Vec<(usize, u8)> = Vec::new();
        if stage == spec.stage_r() {
            pins.extend(req_r.iter().map(|(&b, &v)| (pos[&b], v)));
        }
        if stage == spec.stage_t() {
            pins.extend(req_t.iter().map(|(&b, &v)| (pos[&b], v)));
        }
        let s = u64::from(s);
        let mut next = vec![BigRational::zero(); 1 << q];
        for v in 0..(1u32 << q) {
            if pins.iter().any(|&(i, bit)| ((v >> i) & 1) as u8 != bit) {
                continue;
            }
            let w = u64::from(v.count_ones());
            if s < w || s - w > n - q as u64 {
                continue;
            }
            let pr = ratio(binomial_count(n - q as u64, s - w), binomial_count(n, s));
            for t in 0..(1usize << q) {
                if state[t].is_zero() {
                    continue;
                }
                let add = &state[t] * &pr;
                next[t ^ v as usize] += add;
            }
        }
        state = next;
    }
    state[0].clone()
}

/// Exact law of the terminal on-count by rational hypergeometric dynamic
/// programming over stages: from k bulbs on, a stage of size s moves j of
/// its toggles onto on bulbs with probability C(k,j) C(n-k,s-j) / C(n,s),
/// landing on k + s - 2j. Same recursion shape as the float implementation
/// but in exact arithmetic, so it cross-checks both the float rounding and
/// the exhaustive enumeration.
pub fn rational_pmf(pattern: &SwitchPattern) -> Vec<BigRational> {
    let n = pattern.n() as usize;
    assert!(n <= 64, "rational DP limited to n <= 64");
    let mut mass = vec![BigRational::zero(); n + 1];
    mass[0] = BigRational::one();
    for &s in pattern.stages() {
        let s = s as usize;
        let stage_total = binomial_count(n as u64, s as u64);
        let mut next = vec![BigRational::zero(); n + 1];
        for k in 0..=n {
            if mass[k].is_zero() {
                continue;
            }
            let lo = s.saturating_sub(n - k);
            let hi = s.min(k);
            for j in lo..=hi {
                let ways = binomial_count(k as u64, j as u64)
                    * binomial_count((n - k) as u64, (s - j) as u64);
                let pr = ratio(ways, stage_total);
                let add = &mass[k] * &pr;
                next[k + s - 2 * j] += add;
            }
        }
        mass = next;
    }
    mass
}
