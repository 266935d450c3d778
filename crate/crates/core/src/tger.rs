//! TGER (Temporal Graph Edge Registry): a priority search tree over the
//! intervals of one vertex's incident edges.
//!
//! One interval endpoint is the *priority* axis (heap-ordered), the other the
//! *search* axis (BST-ordered by a median split). A 3-sided query bounds the
//! priority axis on one side and the search axis on both, and runs in
//! `O(log m + k)`.
//!
//! Nodes live in a flat pool in preorder; children are pool indices.
//! Max-heap mode stores reflected priorities (`u64::MAX - p`) so there is a
//! single min-heap traversal. Search keys are made unique by pairing the
//! value with the element's rank in priority order, which keeps the median
//! split exact when many edges share an end time.

use rayon::prelude::*;

use crate::model::{Interval, QueryWindow, Timestamp};

/// Subtrees at least this large are built as parallel fork-join tasks.
pub const PARALLEL_BUILD_GRAIN: usize = 2048;
/// Indexes at least this large answer queries with parallel subtree visits.
pub const PARALLEL_QUERY_MIN: usize = 1 << 15;
const PARALLEL_QUERY_DEPTH: u32 = 6;

const NIL: u32 = u32::MAX;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum HeapMode {
    /// Query gives an upper bound on the priority axis.
    #[default]
    MinHeap,
    /// Query gives a lower bound on the priority axis.
    MaxHeap,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum IndexAxes {
    /// Priority = start time, search = end time.
    #[default]
    StartPriority,
    /// Priority = end time, search = start time.
    EndPriority,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ThreeSidedQuery {
    /// Upper bound in min-heap mode, lower bound in max-heap mode.
    pub priority_bound: Timestamp,
    pub search_lo: Timestamp,
    pub search_hi: Timestamp,
}

/// Search-axis value plus a unique rank.
type SearchKey = (Timestamp, u32);

#[derive(Clone, Copy, Debug)]
struct Node<P> {
    prio: u64,
    key: SearchKey,
    split: SearchKey,
    left: u32,
    right: u32,
    payload: P,
}

#[derive(Clone, Copy)]
struct Entry<P> {
    prio: u64,
    key: SearchKey,
    payload: P,
}

#[derive(Clone, Debug)]
pub struct TgerIndex<P> {
    nodes: Vec<Node<P>>,
    mode: HeapMode,
    axes: IndexAxes,
    height: usize,
}

fn depth<P>(nodes: &[Node<P>], i: u32) -> usize {
    if i == NIL {
        return 0;
    }
    let n = &nodes[i as usize];
    1 + depth(nodes, n.left).max(depth(nodes, n.right))
}

impl<P: Copy + Send + Sync> TgerIndex<P> {
    pub fn build(items: Vec<(Interval, P)>, mode: HeapMode, axes: IndexAxes) -> Self {
        let m = items.len();
        assert!(m < NIL as usize, "TGER holds at most 2^32 - 1 edges");
        let mut entries: Vec<Entry<P>> = items
            .into_par_iter()
            .map(|(iv, payload)| {
                let (p, s) = match axes {
                    IndexAxes::StartPriority => (iv.start, iv.end),
                    IndexAxes::EndPriority => (iv.end, iv.start),
                };
                let prio = match mode {
                    HeapMode::MinHeap => p,
                    HeapMode::MaxHeap => u64::MAX - p,
                };
                Entry {
                    prio,
                    key: (s, 0),
                    payload,
                }
            })
            .collect();
        // Stable, so equal (priority, search) pairs keep their input order.
        entries.par_sort_by_key(|e| (e.prio, e.key.0));
        entries
            .par_iter_mut()
            .enumerate()
            .for_each(|(rank, e)| e.key.1 = rank as u32);

        let mut nodes = match entries.first() {
            None => Vec::new(),
            Some(first) => vec![
                Node {
                    prio: 0,
                    key: (0, 0),
                    split: (0, 0),
                    left: NIL,
                    right: NIL,
                    payload: first.payload,
                };
                m
            ],
        };
        if m > 0 {
            let mut scratch = entries.clone();
            build_subtree(&mut entries, &mut scratch, &mut nodes, 0);
        }
        let height = if nodes.is_empty() { 0 } else { depth(&nodes, 0) };
        Self { nodes, mode, axes, height }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn mode(&self) -> HeapMode {
        self.mode
    }

    pub fn axes(&self) -> IndexAxes {
        self.axes
    }

    pub fn height(&self) -> usize {
        self.height
    }

    fn normalized_bound(&self, q: &ThreeSidedQuery) -> u64 {
        match self.mode {
            HeapMode::MinHeap => q.priority_bound,
            HeapMode::MaxHeap => u64::MAX - q.priority_bound,
        }
    }

    fn interval_of(&self, n: &Node<P>) -> Interval {
        let p = match self.mode {
            HeapMode::MinHeap => n.prio,
            HeapMode::MaxHeap => u64::MAX - n.prio,
        };
        match self.axes {
            IndexAxes::StartPriority => Interval { start: p, end: n.key.0 },
            IndexAxes::EndPriority => Interval { start: n.key.0, end: p },
        }
    }

    /// Calls `f` for every stored element matching `q`, sequentially.
    pub fn query_with(&self, q: &ThreeSidedQuery, mut f: impl FnMut(Interval, &P)) {
        if self.nodes.is_empty() || q.search_lo > q.search_hi {
            return;
        }
        let bound = self.normalized_bound(q);
        self.visit(0, bound, q, &mut |n| f(self.interval_of(n), &n.payload));
    }

    fn visit<'a>(&'a self, i: u32, bound: u64, q: &ThreeSidedQuery, f: &mut impl FnMut(&'a Node<P>)) {
        let n = &self.nodes[i as usize];
        if n.prio > bound {
            return;
        }
        if q.search_lo <= n.key.0 && n.key.0 <= q.search_hi {
            f(n);
        }
        if n.left != NIL && (q.search_lo, 0) < n.split {
            self.visit(n.left, bound, q, f);
        }
        if n.right != NIL && (q.search_hi, u32::MAX) >= n.split {
            self.visit(n.right, bound, q, f);
        }
    }

    /// All stored elements matching `q`, in unspecified order. Large indexes
    /// split the traversal into fork-join tasks with per-task buffers.
    pub fn query(&self, q: &ThreeSidedQuery) -> Vec<(Interval, P)> {
        if self.nodes.is_empty() || q.search_lo > q.search_hi {
            return Vec::new();
        }
        let bound = self.normalized_bound(q);
        if self.nodes.len() < PARALLEL_QUERY_MIN {
            let mut out = Vec::new();
            self.visit(0, bound, q, &mut |n| out.push((self.interval_of(n), n.payload)));
            return out;
        }
        self.par_visit(0, bound, q, 0)
    }

    fn par_visit(&self, i: u32, bound: u64, q: &ThreeSidedQuery, depth: u32) -> Vec<(Interval, P)> {
        if depth >= PARALLEL_QUERY_DEPTH {
            let mut out = Vec::new();
            self.visit(i, bound, q, &mut |n| out.push((self.interval_of(n), n.payload)));
            return out;
        }
        let n = &self.nodes[i as usize];
        if n.prio > bound {
            return Vec::new();
        }
        let go_left = n.left != NIL && (q.search_lo, 0) < n.split;
        let go_right = n.right != NIL && (q.search_hi, u32::MAX) >= n.split;
        let (mut left, right) = rayon::join(
            || {
                if go_left {
                    self.par_visit(n.left, bound, q, depth + 1)
                } else {
                    Vec::new()
                }
            },
            || {
                if go_right {
                    self.par_visit(n.right, bound, q, depth + 1)
                } else {
                    Vec::new()
                }
            },
        );
        if q.search_lo <= n.key.0 && n.key.0 <= q.search_hi {
            left.push((self.interval_of(n), n.payload));
        }
        left.extend(right);
        left
    }

    /// Number of nodes `query(q)` touches.
    pub fn count_visited(&self, q: &ThreeSidedQuery) -> usize {
        fn walk<P>(nodes: &[Node<P>], i: u32, bound: u64, q: &ThreeSidedQuery) -> usize {
            let n = &nodes[i as usize];
            if n.prio > bound {
                return 1;
            }
            let mut count = 1;
            if n.left != NIL && (q.search_lo, 0) < n.split {
                count += walk(nodes, n.left, bound, q);
            }
            if n.right != NIL && (q.search_hi, u32::MAX) >= n.split {
                count += walk(nodes, n.right, bound, q);
            }
            count
        }
        if self.nodes.is_empty() || q.search_lo > q.search_hi {
            return 0;
        }
        walk(&self.nodes, 0, self.normalized_bound(q), q)
    }

    /// Translates window containment (`start >= t_a && end <= t_b`) into a
    /// 3-sided query. The second value is `true` when the query is exact;
    /// otherwise matches must still be checked against the window.
    pub fn window_query(&self, w: QueryWindow) -> (ThreeSidedQuery, bool) {
        match (self.mode, self.axes) {
            (HeapMode::MaxHeap, IndexAxes::StartPriority) => (
                ThreeSidedQuery {
                    priority_bound: w.t_a,
                    search_lo: w.t_a,
                    search_hi: w.t_b,
                },
                true,
            ),
            (HeapMode::MinHeap, IndexAxes::EndPriority) => (
                ThreeSidedQuery {
                    priority_bound: w.t_b,
                    search_lo: w.t_a,
                    search_hi: w.t_b,
                },
                true,
            ),
            (HeapMode::MinHeap, IndexAxes::StartPriority) => (
                ThreeSidedQuery {
                    priority_bound: w.t_b,
                    search_lo: w.t_a,
                    search_hi: w.t_b,
                },
                false,
            ),
            (HeapMode::MaxHeap, IndexAxes::EndPriority) => (
                ThreeSidedQuery {
                    priority_bound: w.t_a,
                    search_lo: w.t_a,
                    search_hi: w.t_b,
                },
                false,
            ),
        }
    }

    /// Visits every element whose interval is contained in `w`.
    pub fn query_window_with(&self, w: QueryWindow, mut f: impl FnMut(Interval, &P)) {
        let (q, exact) = self.window_query(w);
        self.query_with(&q, |iv, p| {
            if exact || w.contains_interval(iv) {
                f(iv, p)
            }
        });
    }

    pub fn query_window(&self, w: QueryWindow) -> Vec<(Interval, P)> {
        let (q, exact) = self.window_query(w);
        let mut out = self.query(&q);
        if !exact {
            out.retain(|(iv, _)| w.contains_interval(*iv));
        }
        out
    }

    /// Heap order, BST order and node count all hold.
    pub fn check_invariants(&self) -> bool {
        fn check<P>(
            nodes: &[Node<P>],
            i: u32,
            lower: Option<SearchKey>,
            upper: Option<SearchKey>,
            seen: &mut usize,
        ) -> bool {
            let n = &nodes[i as usize];
            *seen += 1;
            if lower.is_some_and(|lo| n.key < lo) || upper.is_some_and(|hi| n.key >= hi) {
                return false;
            }
            for child in [n.left, n.right] {
                if child != NIL && nodes[child as usize].prio < n.prio {
                    return false;
                }
            }
            (n.left == NIL || check(nodes, n.left, lower, Some(n.split), seen))
                && (n.right == NIL || check(nodes, n.right, Some(n.split), upper, seen))
        }
        if self.nodes.is_empty() {
            return true;
        }
        let mut seen = 0;
        check(&self.nodes, 0, None, None, &mut seen) && seen == self.nodes.len()
    }

    #[cfg(test)]
    fn corrupt_split(&mut self, i: usize, split: Timestamp) {
        self.nodes[i].split = (split, 0);
    }
}

/// Builds the subtree for `src` (sorted by priority) into `out`, whose first
/// slot has pool index `base`. `scratch` has the same length as `src`.
fn build_subtree<P: Copy + Send + Sync>(
    src: &mut [Entry<P>],
    scratch: &mut [Entry<P>],
    out: &mut [Node<P>],
    base: u32,
) {
    let n = src.len();
    let root = src[0];
    let rest_len = n - 1;
    if rest_len == 0 {
        out[0] = Node {
            prio: root.prio,
            key: root.key,
            split: root.key,
            left: NIL,
            right: NIL,
            payload: root.payload,
        };
        return;
    }

    let left_len = rest_len / 2;
    let rest = &mut src[1..];
    let split = {
        let mut keys: Vec<SearchKey> = rest.iter().map(|e| e.key).collect();
        *keys.select_nth_unstable(left_len).1
    };

    let (scratch_left, scratch_right) = scratch[..rest_len].split_at_mut(left_len);
    let (mut li, mut ri) = (0, 0);
    for e in rest.iter() {
        if e.key < split {
            scratch_left[li] = *e;
            li += 1;
        } else {
            scratch_right[ri] = *e;
            ri += 1;
        }
    }
    debug_assert_eq!(li, left_len);

    out[0] = Node {
        prio: root.prio,
        key: root.key,
        split,
        left: if left_len > 0 { base + 1 } else { NIL },
        right: base + 1 + left_len as u32,
        payload: root.payload,
    };

    let (out_left, out_right) = out[1..].split_at_mut(left_len);
    let (rest_left, rest_right) = rest.split_at_mut(left_len);
    let right_base = base + 1 + left_len as u32;
    if n >= PARALLEL_BUILD_GRAIN {
        rayon::join(
            || {
                if left_len > 0 {
                    build_subtree(scratch_left, rest_left, out_left, base + 1)
                }
            },
            || build_subtree(scratch_right, rest_right, out_right, right_base),
        );
    } else {
        if left_len > 0 {
            build_subtree(scratch_left, rest_left, out_left, base + 1);
        }
        build_subtree(scratch_right, rest_right, out_right, right_base);
    }
}
