//! Small numeric utilities shared across modules: compensated summation and
//! falling-factorial products.

/// Neumaier-compensated accumulator. Long probability and moment sums run
/// over 10^4+ terms spanning many orders of magnitude; plain summation loses
/// enough precision there to matter at the 1e-12 tolerances used in tests.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    pub fn new() -> CompensatedSum {
        CompensatedSum::default()
    }

    /// Accumulates `x`, tracking the rounding error of each addition.
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    /// Folds another accumulator into this one.
    pub fn merge(&mut self, other: CompensatedSum) {
        self.add(other.sum);
        self.add(other.compensation);
    }

    /// Current compensated total.
    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

/// Falling factorial (x)_k = x (x-1) ... (x-k+1); the empty product is 1.
pub fn falling(x: f64, k: u32) -> f64 {
    let mut p = 1.0;
    for i in 0..k {
        p *= x - i as f64;
    }
    p
}

/// Binomial coefficient C(n, k) as f64, exact for the small arguments used
/// here (products stay far below 2^53).
pub fn binomial(n: u32, k: u32) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut c = 1.0;
    for i in 0..k {
        c = c * (n - i) as f64 / (i + 1) as f64;
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compensated_sum_recovers_cancellation() {
        // Increments are powers of two so every intermediate quantity is
        // exactly representable and the recovered total is exact.
        let tiny = 2f64.powi(-60);
        let mut acc = CompensatedSum::new();
        acc.add(1.0);
        for _ in 0..10 {
            acc.add(tiny);
        }
        acc.add(-1.0);
        assert_eq!(acc.value(), 10.0 * tiny);
        let mut plain = 1.0f64;
        for _ in 0..10 {
            plain += tiny;
        }
        plain += -1.0;
        assert_eq!(plain, 0.0);
    }

    #[test]
    fn merge_matches_sequential() {
        let mut a = CompensatedSum::new();
        let mut b = CompensatedSum::new();
        let mut whole = CompensatedSum::new();
        for i in 0..1000 {
            let x = (i as f64).sin() * 1e-3;
            if i % 2 == 0 {
                a.add(x);
            } else {
                b.add(x);
            }
            whole.add(x);
        }
        a.merge(b);
        assert!((a.value() - whole.value()).abs() < 1e-15);
    }

    #[test]
    fn falling_factorials() {
        assert_eq!(falling(5.0, 0), 1.0);
        assert_eq!(falling(5.0, 2), 20.0);
        assert_eq!(falling(5.0, 6), 0.0);
        assert_eq!(falling(3.0, 4), 0.0);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(6, 3), 20.0);
        assert_eq!(binomial(6, 0), 1.0);
        assert_eq!(binomial(6, 7), 0.0);
        let big = binomial(200, 100);
        assert!((big / 9.054851465610328e58 - 1.0).abs() < 1e-12);
    }
}
