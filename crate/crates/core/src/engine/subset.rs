use rayon::prelude::*;

use crate::model::{TemporalEdge, VertexId};

/// A set of vertices out of `0..n`, stored as a sorted id list or a flag
/// array.
#[derive(Clone, Debug)]
pub enum VertexSubset {
    Sparse { n: usize, ids: Vec<VertexId> },
    Dense { flags: Vec<bool>, count: usize },
}

impl VertexSubset {
    pub fn empty(n: usize) -> Self {
        VertexSubset::Sparse { n, ids: Vec::new() }
    }

    pub fn single(n: usize, v: VertexId) -> Self {
        assert!((v as usize) < n);
        VertexSubset::Sparse { n, ids: vec![v] }
    }

    pub fn all(n: usize) -> Self {
        VertexSubset::Dense {
            flags: vec![true; n],
            count: n,
        }
    }

    /// Sorts and removes duplicates.
    pub fn from_ids(n: usize, mut ids: Vec<VertexId>) -> Self {
        ids.par_sort_unstable();
        ids.dedup();
        debug_assert!(ids.last().is_none_or(|&v| (v as usize) < n));
        VertexSubset::Sparse { n, ids }
    }

    pub fn from_flags(flags: Vec<bool>) -> Self {
        let count = flags.par_iter().filter(|&&f| f).count();
        VertexSubset::Dense { flags, count }
    }

    pub fn universe(&self) -> usize {
        match self {
            VertexSubset::Sparse { n, .. } => *n,
            VertexSubset::Dense { flags, .. } => flags.len(),
        }
    }

    pub fn len(&self) -> usize {
        match self {
            VertexSubset::Sparse { ids, .. } => ids.len(),
            VertexSubset::Dense { count, .. } => *count,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_dense(&self) -> bool {
        matches!(self, VertexSubset::Dense { .. })
    }

    pub fn contains(&self, v: VertexId) -> bool {
        match self {
            VertexSubset::Sparse { ids, .. } => ids.binary_search(&v).is_ok(),
            VertexSubset::Dense { flags, .. } => flags[v as usize],
        }
    }

    /// Members in ascending order.
    pub fn to_ids(&self) -> Vec<VertexId> {
        match self {
            VertexSubset::Sparse { ids, .. } => ids.clone(),
            VertexSubset::Dense { flags, .. } => flags
                .par_iter()
                .enumerate()
                .filter(|(_, &f)| f)
                .map(|(v, _)| v as VertexId)
                .collect(),
        }
    }

    pub fn to_flags(&self) -> Vec<bool> {
        match self {
            VertexSubset::Sparse { n, ids } => {
                let mut flags = vec![false; *n];
                for &v in ids {
                    flags[v as usize] = true;
                }
                flags
            }
            VertexSubset::Dense { flags, .. } => flags.clone(),
        }
    }

    pub fn into_sparse(self) -> Self {
        match self {
            s @ VertexSubset::Sparse { .. } => s,
            d => VertexSubset::Sparse {
                n: d.universe(),
                ids: d.to_ids(),
            },
        }
    }

    pub fn into_dense(self) -> Self {
        match self {
            d @ VertexSubset::Dense { .. } => d,
            s => VertexSubset::Dense {
                count: s.len(),
                flags: s.to_flags(),
            },
        }
    }
}

impl PartialEq for VertexSubset {
    fn eq(&self, other: &Self) -> bool {
        self.universe() == other.universe() && self.to_ids() == other.to_ids()
    }
}

impl Eq for VertexSubset {}

/// Applies `f` to every member in parallel and keeps those where it
/// returned true.
pub fn vertex_map(u: &VertexSubset, f: impl Fn(VertexId) -> bool + Sync) -> VertexSubset {
    let n = u.universe();
    match u {
        VertexSubset::Sparse { ids, .. } => VertexSubset::Sparse {
            n,
            ids: ids.par_iter().copied().filter(|&v| f(v)).collect(),
        },
        VertexSubset::Dense { flags, .. } => VertexSubset::from_flags(
            flags
                .par_iter()
                .enumerate()
                .map(|(v, &member)| member && f(v as VertexId))
                .collect(),
        ),
    }
}

/// A collection of temporal edges taken from a graph.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct TemporalEdgeSubset {
    pub members: Vec<TemporalEdge>,
}

impl TemporalEdgeSubset {
    pub fn new(members: Vec<TemporalEdge>) -> Self {
        Self { members }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Parallel filter over an edge subset; keeps input order.
pub fn edge_subset_map(u: &TemporalEdgeSubset, f: impl Fn(&TemporalEdge) -> bool + Sync) -> TemporalEdgeSubset {
    TemporalEdgeSubset {
        members: u.members.par_iter().filter(|e| f(e)).copied().collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vertex_map_filters() {
        let all = VertexSubset::from_ids(10, (0..10).collect());
        assert_eq!(vertex_map(&all, |_| true), all);
        assert!(vertex_map(&all, |_| false).is_empty());
        let even = vertex_map(&all, |v| v % 2 == 0);
        assert_eq!(even.to_ids(), vec![0, 2, 4, 6, 8]);
        let dense_even = vertex_map(&VertexSubset::all(10), |v| v % 2 == 0);
        assert!(dense_even.is_dense());
        assert_eq!(dense_even, even);
    }

    #[test]
    fn representations_agree() {
        let s = VertexSubset::from_ids(6, vec![4, 1, 4, 0]);
        assert_eq!(s.len(), 3);
        let d = s.clone().into_dense();
        assert!(d.contains(4) && !d.contains(2));
        assert_eq!(d.len(), 3);
        assert_eq!(d.into_sparse().to_ids(), vec![0, 1, 4]);
    }

    #[test]
    fn edge_subset_filter() {
        let u = TemporalEdgeSubset::new(vec![
            TemporalEdge::new(0, 1, 0, 3),
            TemporalEdge::new(1, 2, 2, 10),
            TemporalEdge::new(2, 3, 5, 11),
            TemporalEdge::new(3, 0, 1, 7),
        ]);
        assert_eq!(edge_subset_map(&u, |_| true), u);
        let long = edge_subset_map(&u, |e| e.duration() > 5);
        assert_eq!(long.members, vec![u.members[1], u.members[2], u.members[3]]);
        assert!(edge_subset_map(&TemporalEdgeSubset::default(), |_| true).is_empty());
    }
}
