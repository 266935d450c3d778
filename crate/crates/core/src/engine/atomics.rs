//! Lock-free update primitives for shared per-vertex algorithm state.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

/// Stores `v` if it is smaller than the current value. Returns whether it did.
#[inline]
pub fn write_min(cell: &AtomicU64, v: u64) -> bool {
    cell.fetch_min(v, Ordering::AcqRel) > v
}

/// Stores `v` if it is larger than the current value. Returns whether it did.
#[inline]
pub fn write_max(cell: &AtomicU64, v: u64) -> bool {
    cell.fetch_max(v, Ordering::AcqRel) < v
}

/// Sets the flag; true only for the call that flipped it.
#[inline]
pub fn test_and_set(flag: &AtomicBool) -> bool {
    !flag.load(Ordering::Relaxed) && !flag.swap(true, Ordering::AcqRel)
}

pub fn atomic_vec(n: usize, init: u64) -> Vec<AtomicU64> {
    (0..n).map(|_| AtomicU64::new(init)).collect()
}

pub fn flag_vec(n: usize) -> Vec<AtomicBool> {
    (0..n).map(|_| AtomicBool::new(false)).collect()
}

pub fn into_values(cells: Vec<AtomicU64>) -> Vec<u64> {
    cells.into_iter().map(AtomicU64::into_inner).collect()
}
