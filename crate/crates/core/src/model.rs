//! The temporal graph data model: interval-stamped edges, query windows and
//! the ordering predicates that constrain consecutive edges on a path.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Discrete time, in dataset-defined units.
pub type Timestamp = u64;

/// Vertices are labeled `0..n_v`.
pub type VertexId = u32;

/// A closed interval `[start, end]` of discrete time.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Interval {
    pub start: Timestamp,
    pub end: Timestamp,
}

impl Interval {
    pub fn new(start: Timestamp, end: Timestamp) -> Self {
        debug_assert!(start <= end);
        Self { start, end }
    }

    pub fn duration(&self) -> Timestamp {
        self.end - self.start
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TemporalEdge {
    pub src: VertexId,
    pub dst: VertexId,
    pub start: Timestamp,
    pub end: Timestamp,
    /// 1.0 when the input carries no weight column.
    pub weight: f64,
}

impl TemporalEdge {
    pub fn new(src: VertexId, dst: VertexId, start: Timestamp, end: Timestamp) -> Self {
        Self::weighted(src, dst, start, end, 1.0)
    }

    pub fn weighted(
        src: VertexId,
        dst: VertexId,
        start: Timestamp,
        end: Timestamp,
        weight: f64,
    ) -> Self {
        Self {
            src,
            dst,
            start,
            end,
            weight,
        }
    }

    pub fn interval(&self) -> Interval {
        Interval {
            start: self.start,
            end: self.end,
        }
    }

    pub fn duration(&self) -> Timestamp {
        self.end.saturating_sub(self.start)
    }
}

/// The `[t_a, t_b]` interval parameterizing every traversal.
///
/// An edge qualifies for a window when its whole interval is contained in
/// it: `start >= t_a && end <= t_b`. Every access path (T-CSR scan, TGER
/// query, histogram estimate) uses [`QueryWindow::contains`] so they agree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QueryWindow {
    pub t_a: Timestamp,
    pub t_b: Timestamp,
}

impl QueryWindow {
    pub fn new(t_a: Timestamp, t_b: Timestamp) -> Result<Self> {
        if t_a > t_b {
            return Err(Error::InvalidWindow { t_a, t_b });
        }
        Ok(Self { t_a, t_b })
    }

    /// The window covering the whole time domain.
    pub fn universal() -> Self {
        Self {
            t_a: 0,
            t_b: Timestamp::MAX,
        }
    }

    #[inline]
    pub fn contains(&self, start: Timestamp, end: Timestamp) -> bool {
        start >= self.t_a && end <= self.t_b
    }

    #[inline]
    pub fn contains_interval(&self, iv: Interval) -> bool {
        self.contains(iv.start, iv.end)
    }

    /// Narrows the window; `None` when the result is empty.
    pub fn restrict(&self, t_a: Timestamp, t_b: Timestamp) -> Option<Self> {
        let lo = self.t_a.max(t_a);
        let hi = self.t_b.min(t_b);
        (lo <= hi).then_some(Self { t_a: lo, t_b: hi })
    }
}

/// Relation required between consecutive edges of a temporal path.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OrderingPredicate {
    /// `end(a) <= start(b)`.
    Succeeds,
    /// `end(a) < start(b)`.
    #[default]
    StrictlySucceeds,
    /// Allen overlap: `start(a) < start(b) < end(a) < end(b)`.
    Overlaps,
}

impl OrderingPredicate {
    pub const ALL: [OrderingPredicate; 3] = [
        OrderingPredicate::Succeeds,
        OrderingPredicate::StrictlySucceeds,
        OrderingPredicate::Overlaps,
    ];

    /// Whether `b` may directly follow `a` on a path.
    #[inline]
    pub fn holds(self, a: Interval, b: Interval) -> bool {
        match self {
            OrderingPredicate::Succeeds => a.end <= b.start,
            OrderingPredicate::StrictlySucceeds => a.end < b.start,
            OrderingPredicate::Overlaps => a.start < b.start && b.start < a.end && a.end < b.end,
        }
    }

    /// Containment window admitting every edge that can follow `prev`.
    ///
    /// Only a necessary condition for `Overlaps`; callers still check
    /// [`OrderingPredicate::holds`].
    pub fn successor_window(self, prev: Interval, base: QueryWindow) -> Option<QueryWindow> {
        let lo = match self {
            OrderingPredicate::Succeeds => prev.end,
            OrderingPredicate::StrictlySucceeds => prev.end.checked_add(1)?,
            OrderingPredicate::Overlaps => prev.start.checked_add(1)?,
        };
        base.restrict(lo, Timestamp::MAX)
    }

    /// Containment window admitting every edge that can precede `next`.
    pub fn predecessor_window(self, next: Interval, base: QueryWindow) -> Option<QueryWindow> {
        let hi = match self {
            OrderingPredicate::Succeeds => next.start,
            OrderingPredicate::StrictlySucceeds => next.start.checked_sub(1)?,
            OrderingPredicate::Overlaps => next.end.checked_sub(1)?,
        };
        base.restrict(0, hi)
    }

    /// Whether the relation reduces to a single threshold on the previous
    /// edge's end time.
    pub fn is_succession(self) -> bool {
        !matches!(self, OrderingPredicate::Overlaps)
    }

    pub fn name(self) -> &'static str {
        match self {
            OrderingPredicate::Succeeds => "succeeds",
            OrderingPredicate::StrictlySucceeds => "strictly-succeeds",
            OrderingPredicate::Overlaps => "overlaps",
        }
    }
}

impl std::str::FromStr for OrderingPredicate {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "succeeds" => Ok(OrderingPredicate::Succeeds),
            "strictly-succeeds" | "strict" | "strictlysucceeds" => {
                Ok(OrderingPredicate::StrictlySucceeds)
            }
            "overlaps" => Ok(OrderingPredicate::Overlaps),
            other => Err(Error::InvalidArgument(format!(
                "unknown ordering predicate `{other}`"
            ))),
        }
    }
}

/// Size and degree summary of a temporal graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphMeta {
    pub num_vertices: usize,
    /// Input edge count; undirected edges are counted once.
    pub num_edges: usize,
    pub directed: bool,
    pub out_degrees: Vec<usize>,
    pub in_degrees: Vec<usize>,
}

impl GraphMeta {
    /// Validates endpoints and intervals and counts degrees. `u64::MAX` is
    /// reserved as the "unreached" marker of path results.
    ///
    /// For undirected graphs both degree arrays hold the incident-edge count
    /// (a self-loop contributes 2), so they sum to `2 * n_e`.
    pub fn from_edges(edges: &[TemporalEdge], num_vertices: usize, directed: bool) -> Result<Self> {
        let mut out_degrees = vec![0usize; num_vertices];
        let mut in_degrees = vec![0usize; num_vertices];
        for (index, e) in edges.iter().enumerate() {
            for vertex in [e.src, e.dst] {
                if vertex as usize >= num_vertices {
                    return Err(Error::EndpointOutOfRange {
                        index,
                        vertex,
                        num_vertices,
                    });
                }
            }
            if e.start > e.end {
                return Err(Error::InvertedInterval {
                    index,
                    start: e.start,
                    end: e.end,
                });
            }
            if e.end == Timestamp::MAX {
                return Err(Error::ReservedTimestamp { index });
            }
            out_degrees[e.src as usize] += 1;
            in_degrees[e.dst as usize] += 1;
        }
        if !directed {
            for v in 0..num_vertices {
                let deg = out_degrees[v] + in_degrees[v];
                out_degrees[v] = deg;
                in_degrees[v] = deg;
            }
        }
        Ok(Self {
            num_vertices,
            num_edges: edges.len(),
            directed,
            out_degrees,
            in_degrees,
        })
    }

    pub fn max_out_degree(&self) -> usize {
        self.out_degrees.iter().copied().max().unwrap_or(0)
    }

    pub fn max_in_degree(&self) -> usize {
        self.in_degrees.iter().copied().max().unwrap_or(0)
    }

    pub fn avg_degree(&self) -> f64 {
        if self.num_vertices == 0 {
            return 0.0;
        }
        let total: usize = if self.directed {
            self.out_degrees.iter().sum::<usize>() + self.in_degrees.iter().sum::<usize>()
        } else {
            self.out_degrees.iter().sum()
        };
        total as f64 / self.num_vertices as f64
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn iv(start: u64, end: u64) -> Interval {
        Interval::new(start, end)
    }

    #[test]
    fn succession_boundaries() {
        assert!(OrderingPredicate::Succeeds.holds(iv(2, 5), iv(5, 9)));
        assert!(!OrderingPredicate::StrictlySucceeds.holds(iv(2, 5), iv(5, 9)));
        assert!(OrderingPredicate::Overlaps.holds(iv(2, 6), iv(4, 9)));
    }

    /// Allen's 13 relations of `b` relative to `a = [10, 20]`, with which of
    /// them count as "overlaps".
    #[test]
    fn overlaps_matches_allen_table() {
        let a = iv(10, 20);
        let table = [
            ("before", iv(25, 30), false),
            ("after", iv(1, 5), false),
            ("meets", iv(20, 30), false),
            ("met-by", iv(1, 10), false),
            ("overlaps", iv(15, 25), true),
            ("overlapped-by", iv(5, 15), false),
            ("starts", iv(10, 15), false),
            ("started-by", iv(10, 25), false),
            ("during", iv(12, 18), false),
            ("contains", iv(5, 25), false),
            ("finishes", iv(15, 20), false),
            ("finished-by", iv(5, 20), false),
            ("equals", iv(10, 20), false),
        ];
        for (name, b, expected) in table {
            assert_eq!(
                OrderingPredicate::Overlaps.holds(a, b),
                expected,
                "relation {name}"
            );
        }
    }

    #[test]
    fn window_restrict_and_contains() {
        let w = QueryWindow::new(2, 10).unwrap();
        assert!(w.contains(2, 10));
        assert!(!w.contains(1, 5));
        assert!(!w.contains(3, 11));
        assert_eq!(w.restrict(5, 20), Some(QueryWindow { t_a: 5, t_b: 10 }));
        assert_eq!(w.restrict(11, 20), None);
        assert!(QueryWindow::new(3, 2).is_err());
    }

    #[test]
    fn meta_degrees() {
        let edges = vec![
            TemporalEdge::new(0, 1, 2, 5),
            TemporalEdge::new(0, 2, 1, 3),
            TemporalEdge::new(2, 0, 4, 6),
        ];
        let m = GraphMeta::from_edges(&edges, 3, true).unwrap();
        assert_eq!(m.out_degrees, vec![2, 0, 1]);
        assert_eq!(m.in_degrees, vec![1, 1, 1]);
        let u = GraphMeta::from_edges(&edges, 3, false).unwrap();
        assert_eq!(u.out_degrees.iter().sum::<usize>(), 2 * edges.len());

        let bad = vec![TemporalEdge::new(0, 3, 1, 2)];
        assert!(matches!(
            GraphMeta::from_edges(&bad, 3, true),
            Err(Error::EndpointOutOfRange { index: 0, vertex: 3, .. })
        ));
        let inverted = vec![TemporalEdge::new(0, 1, 4, 2)];
        assert!(GraphMeta::from_edges(&inverted, 3, true).is_err());
    }

    fn interval() -> impl Strategy<Value = Interval> {
        (0u64..20, 0u64..8).prop_map(|(s, d)| iv(s, s + d))
    }

    proptest! {
        #[test]
        fn strict_refines_succeeds(a in interval(), b in interval()) {
            if OrderingPredicate::StrictlySucceeds.holds(a, b) {
                prop_assert!(OrderingPredicate::Succeeds.holds(a, b));
            }
        }

        #[test]
        fn succeeds_antisymmetric(a in interval(), b in interval()) {
            if OrderingPredicate::Succeeds.holds(a, b) && OrderingPredicate::Succeeds.holds(b, a) {
                prop_assert!(a.end == b.start && b.end == a.start && a.start == a.end);
            }
        }

        #[test]
        fn overlaps_excludes_succeeds(a in interval(), b in interval()) {
            if OrderingPredicate::Overlaps.holds(a, b) {
                prop_assert!(!OrderingPredicate::Succeeds.holds(a, b));
            }
        }

        #[test]
        fn tightened_windows_are_necessary(a in interval(), b in interval(), t_a in 0u64..10, span in 0u64..30) {
            let base = QueryWindow::new(t_a, t_a + span).unwrap();
            for p in OrderingPredicate::ALL {
                if p.holds(a, b) && base.contains_interval(b) {
                    let w = p.successor_window(a, base);
                    prop_assert!(w.is_some_and(|w| w.contains_interval(b)));
                }
                if p.holds(a, b) && base.contains_interval(a) {
                    let w = p.predecessor_window(b, base);
                    prop_assert!(w.is_some_and(|w| w.contains_interval(a)));
                }
            }
        }
    }
}
