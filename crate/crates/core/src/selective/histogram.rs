//! 2D (start, duration) density histogram used to estimate how many of a
//! vertex's edges fall inside a query window.
//!
//! Each integer value `v` is treated as the unit cell `[v, v + 1)`, so a
//! dimension whose values span `min..=max` covers `max - min + 1` units and is
//! cut into at most [`BUCKETS_PER_DIM`] equal-width buckets. Counts are assumed
//! uniform within a bucket.

use crate::model::{QueryWindow, Timestamp};

pub const BUCKETS_PER_DIM: usize = 100;

#[derive(Clone, Copy, Debug, PartialEq)]
struct Axis {
    min: Timestamp,
    span: u64,
    buckets: usize,
    width: f64,
}

impl Axis {
    fn new(min: Timestamp, max: Timestamp) -> Self {
        let span = max - min + 1;
        let buckets = span.min(BUCKETS_PER_DIM as u64) as usize;
        Self {
            min,
            span,
            buckets,
            width: span as f64 / buckets as f64,
        }
    }

    #[inline]
    fn bucket(&self, v: Timestamp) -> usize {
        ((v - self.min) as u128 * self.buckets as u128 / self.span as u128) as usize
    }

    #[inline]
    fn lower(&self, i: usize) -> f64 {
        self.min as f64 + i as f64 * self.width
    }
}

#[derive(Clone, Debug)]
pub struct DensityHistogram {
    x: Axis,
    y: Axis,
    /// Column-major: bucket `(i, j)` at `i * y.buckets + j`.
    counts: Vec<u32>,
    /// Per-column prefix sums over rows, `y.buckets + 1` entries per column.
    prefix: Vec<u64>,
    total: u64,
    max_start: Timestamp,
    min_end: Timestamp,
    max_end: Timestamp,
}

impl DensityHistogram {
    /// Builds from parallel start/end slices.
    pub fn build(starts: &[Timestamp], ends: &[Timestamp]) -> Self {
        assert_eq!(starts.len(), ends.len());
        let durations = || starts.iter().zip(ends).map(|(s, e)| e - s);
        let (x, y) = if starts.is_empty() {
            (Axis::new(0, 0), Axis::new(0, 0))
        } else {
            (
                Axis::new(*starts.iter().min().unwrap(), *starts.iter().max().unwrap()),
                Axis::new(durations().min().unwrap(), durations().max().unwrap()),
            )
        };
        let mut counts = vec![0u32; x.buckets * y.buckets];
        for (s, d) in starts.iter().zip(durations()) {
            counts[x.bucket(*s) * y.buckets + y.bucket(d)] += 1;
        }
        let mut prefix = Vec::with_capacity(x.buckets * (y.buckets + 1));
        for col in counts.chunks(y.buckets) {
            let mut acc = 0u64;
            prefix.push(0);
            for &c in col {
                acc += c as u64;
                prefix.push(acc);
            }
        }
        Self {
            x,
            y,
            counts,
            prefix,
            total: starts.len() as u64,
            max_start: starts.iter().copied().max().unwrap_or(0),
            min_end: ends.iter().copied().min().unwrap_or(0),
            max_end: ends.iter().copied().max().unwrap_or(0),
        }
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    /// Bucket grid size as (start buckets, duration buckets).
    pub fn shape(&self) -> (usize, usize) {
        (self.x.buckets, self.y.buckets)
    }

    pub fn bucket_sum(&self) -> u64 {
        self.counts.iter().map(|&c| c as u64).sum()
    }

    /// Exact answer when the window covers every edge or none can match.
    fn exact(&self, w: QueryWindow) -> Option<f64> {
        if self.total == 0 || w.t_a > self.max_start || w.t_b < self.min_end {
            Some(0.0)
        } else if w.t_a <= self.x.min && w.t_b >= self.max_end {
            Some(self.total as f64)
        } else {
            None
        }
    }

    /// Estimated number of edges with `start >= t_a` and `end <= t_b`.
    pub fn estimate(&self, w: QueryWindow) -> f64 {
        if let Some(k) = self.exact(w) {
            return k;
        }
        let (a, c) = (w.t_a as f64, w.t_b as f64 + 1.0);
        let (wx, wy) = (self.x.width, self.y.width);
        let ny = self.y.buckets;
        let first = if w.t_a <= self.x.min {
            0
        } else {
            self.x.bucket(w.t_a.min(self.x.min + self.x.span - 1))
        };
        let mut sum = 0.0;
        for i in first..self.x.buckets {
            let x0 = self.x.lower(i);
            let x1 = x0 + wx;
            let x0c = x0.max(a);
            if x0c >= x1 {
                continue;
            }
            if x0c + self.y.min as f64 >= c {
                break;
            }
            let rows_full = (((c - x1 - self.y.min as f64) / wy).floor().max(0.0) as usize).min(ny);
            let rows_any = (((c - x0c - self.y.min as f64) / wy).ceil().max(0.0) as usize).clamp(rows_full, ny);
            let col = i * (ny + 1);
            let full = (self.prefix[col + rows_full] - self.prefix[col]) as f64;
            sum += full * (x1 - x0c) / wx;
            for j in rows_full..rows_any {
                let count = self.counts[i * ny + j];
                if count > 0 {
                    let y0 = self.y.lower(j);
                    sum += count as f64 * region_area(x0c, x1, y0, y0 + wy, a, c) / (wx * wy);
                }
            }
        }
        sum.clamp(0.0, self.total as f64)
    }

    /// Reference estimate visiting every bucket.
    pub fn estimate_brute_force(&self, w: QueryWindow) -> f64 {
        if let Some(k) = self.exact(w) {
            return k;
        }
        let (a, c) = (w.t_a as f64, w.t_b as f64 + 1.0);
        let (wx, wy) = (self.x.width, self.y.width);
        let mut sum = 0.0;
        for i in 0..self.x.buckets {
            for j in 0..self.y.buckets {
                let count = self.counts[i * self.y.buckets + j];
                if count == 0 {
                    continue;
                }
                let (x0, y0) = (self.x.lower(i), self.y.lower(j));
                sum += count as f64 * region_area(x0, x0 + wx, y0, y0 + wy, a, c) / (wx * wy);
            }
        }
        sum.clamp(0.0, self.total as f64)
    }
}

/// Area of `[x0, x1) x [y0, y1)` inside `{x >= a, x + y <= c}`.
fn region_area(x0: f64, x1: f64, y0: f64, y1: f64, a: f64, c: f64) -> f64 {
    let x0 = x0.max(a);
    if x0 >= x1 {
        return 0.0;
    }
    let h = y1 - y0;
    // Integral of clamp(u, 0, h) from 0 to u.
    let g = |u: f64| {
        if u <= 0.0 {
            0.0
        } else if u <= h {
            u * u / 2.0
        } else {
            h * h / 2.0 + h * (u - h)
        }
    };
    g(c - x0 - y0) - g(c - x1 - y0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn win(a: u64, b: u64) -> QueryWindow {
        QueryWindow::new(a, b).unwrap()
    }

    #[test]
    fn full_and_empty_windows() {
        let starts = [10, 20, 30, 40];
        let ends = [15, 20, 90, 41];
        let h = DensityHistogram::build(&starts, &ends);
        assert_eq!(h.bucket_sum(), 4);
        assert!((h.estimate(win(10, 90)) - 4.0).abs() < 1e-9);
        assert_eq!(h.estimate(win(0, 9)), 0.0);
        assert_eq!(h.estimate(win(100, 200)), 0.0);
    }

    #[test]
    fn degenerate_dimensions_collapse() {
        let h = DensityHistogram::build(&[7, 7, 7], &[9, 9, 9]);
        assert_eq!(h.shape(), (1, 1));
        assert!((h.estimate(win(7, 9)) - 3.0).abs() < 1e-9);
        assert_eq!(h.estimate(win(8, 100)), 0.0);

        let empty = DensityHistogram::build(&[], &[]);
        assert_eq!(empty.estimate(win(0, 10)), 0.0);
    }

    #[test]
    fn full_grid_on_wide_ranges() {
        let starts: Vec<u64> = (0..5000).map(|i| i * 3).collect();
        let ends: Vec<u64> = starts.iter().enumerate().map(|(i, s)| s + (i as u64 * 7) % 400).collect();
        let h = DensityHistogram::build(&starts, &ends);
        assert_eq!(h.shape(), (BUCKETS_PER_DIM, BUCKETS_PER_DIM));
        assert_eq!(h.bucket_sum(), 5000);
    }

    #[test]
    fn recent_tenth_within_twenty_percent() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let n = 20_000;
        let starts: Vec<u64> = (0..n).map(|_| rng.random_range(0..1_000_000)).collect();
        let ends: Vec<u64> = starts.iter().map(|s| s + rng.random_range(1..=3600)).collect();
        let h = DensityHistogram::build(&starts, &ends);
        let mut sorted = starts.clone();
        sorted.sort_unstable();
        let t_a = sorted[n - n / 10];
        let t_b = *ends.iter().max().unwrap();
        let w = win(t_a, t_b);
        let truth = starts.iter().zip(&ends).filter(|(s, e)| w.contains(**s, **e)).count() as f64;
        let est = h.estimate(w);
        assert!((est - truth).abs() <= 0.2 * truth, "est {est} truth {truth}");
    }

    proptest! {
        #[test]
        fn fast_matches_brute_force_and_is_monotone(
            edges in prop::collection::vec((0u64..500, 0u64..60), 1..300),
            a in 0u64..600, len in 0u64..600, grow_lo in 0u64..50, grow_hi in 0u64..50,
        ) {
            let starts: Vec<u64> = edges.iter().map(|e| e.0).collect();
            let ends: Vec<u64> = edges.iter().map(|e| e.0 + e.1).collect();
            let h = DensityHistogram::build(&starts, &ends);
            prop_assert_eq!(h.bucket_sum(), h.total());
            let w = win(a, a + len);
            let fast = h.estimate(w);
            let slow = h.estimate_brute_force(w);
            prop_assert!((fast - slow).abs() <= 1e-6 * (1.0 + slow), "fast {} slow {}", fast, slow);
            prop_assert!(fast >= 0.0 && fast <= h.total() as f64);
            let wider = win(a.saturating_sub(grow_lo), a + len + grow_hi);
            prop_assert!(h.estimate(wider) + 1e-9 >= fast);
        }
    }
}
