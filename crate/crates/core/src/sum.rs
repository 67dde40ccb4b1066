//! Compensated (Neumaier) summation with a running error bound.

/// Running sum with a Neumaier correction term.
///
/// Besides the compensated value, the accumulator tracks `Σ|term|` and the
/// number of terms, which give an a-priori bound on the summation error.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct CompensatedSum {
    sum: f64,
    correction: f64,
    abs_total: f64,
    terms: u64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, value: f64) {
        let t = self.sum + value;
        if self.sum.abs() >= value.abs() {
            self.correction += (self.sum - t) + value;
        } else {
            self.correction += (value - t) + self.sum;
        }
        self.sum = t;
        self.abs_total += value.abs();
        self.terms += 1;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.correction
    }

    /// `value()` split as `(head, tail)` with `head + tail` equal to the
    /// unrounded `sum + correction` (a Fast2Sum split).
    pub fn value_parts(&self) -> (f64, f64) {
        let head = self.sum + self.correction;
        let tail = if self.sum.abs() >= self.correction.abs() {
            (self.sum - head) + self.correction
        } else {
            (self.correction - head) + self.sum
        };
        (head, tail)
    }

    pub fn terms(&self) -> u64 {
        self.terms
    }

    pub fn abs_total(&self) -> f64 {
        self.abs_total
    }

    /// Bound on `|value() - Σ term|` where the terms are taken as exact.
    ///
    /// Neumaier's algorithm satisfies `|err| <= 2u|S| + 2n u² Σ|x|` with
    /// `u = EPSILON / 2`; the returned value doubles that.
    pub fn rounding_bound(&self) -> f64 {
        let u = f64::EPSILON / 2.0;
        let n = self.terms as f64;
        2.0 * (2.0 * u * self.value().abs() + 2.0 * n * u * u * self.abs_total)
    }
}

impl Extend<f64> for CompensatedSum {
    fn extend<I: IntoIterator<Item = f64>>(&mut self, iter: I) {
        for v in iter {
            self.add(v);
        }
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = Self::new();
        acc.extend(iter);
        acc
    }
}
