//! Compensated summation and deterministic chunked reductions over elements.

use std::ops::Range;

use rayon::prelude::*;

/// Elements per parallel work unit. Fixed so the reduction tree does not
/// depend on the thread count.
pub(crate) const CHUNK: usize = 1024;

/// Neumaier (improved Kahan-Babuska) running sum.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn merge(&mut self, other: &CompensatedSum) {
        self.add(other.sum);
        self.add(other.comp);
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = CompensatedSum::new();
        for x in iter {
            s.add(x);
        }
        s
    }
}

/// Runs `f` over fixed-size element ranges in parallel and returns the
/// per-chunk results in element order.
pub(crate) fn par_chunks<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(Range<usize>) -> T + Sync,
{
    let nchunks = n.div_ceil(CHUNK);
    (0..nchunks).into_par_iter().map(|c| f(c * CHUNK..((c + 1) * CHUNK).min(n))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_cancelled_terms() {
        let xs = [1.0, 1e100, 1.0, -1e100];
        let naive: f64 = xs.iter().sum();
        let s: CompensatedSum = xs.into_iter().collect();
        assert_eq!(naive, 0.0);
        assert_eq!(s.value(), 2.0);
    }

    #[test]
    fn chunk_results_keep_order() {
        let parts = par_chunks(3 * CHUNK + 5, |r| r.start);
        assert_eq!(parts, vec![0, CHUNK, 2 * CHUNK, 3 * CHUNK]);
    }
}
