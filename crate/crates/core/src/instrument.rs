//! Per-thread operation counters for pairings and point multiplications.
//!
//! Scalar multiplications done inside map-to-point are tallied as
//! `hash_to_point` rather than `scalar_mul`.

use std::cell::Cell;

thread_local! {
    static PAIRINGS: Cell<u64> = const { Cell::new(0) };
    static SCALAR_MULS: Cell<u64> = const { Cell::new(0) };
    static HASH_TO_POINT: Cell<u64> = const { Cell::new(0) };
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct OpCounts {
    pub pairings: u64,
    pub scalar_muls: u64,
    pub hash_to_point: u64,
}

pub(crate) fn count_pairing() {
    PAIRINGS.with(|c| c.set(c.get() + 1));
}

pub(crate) fn count_scalar_mul() {
    SCALAR_MULS.with(|c| c.set(c.get() + 1));
}

pub(crate) fn count_hash_to_point() {
    HASH_TO_POINT.with(|c| c.set(c.get() + 1));
}

pub fn snapshot() -> OpCounts {
    OpCounts {
        pairings: PAIRINGS.with(Cell::get),
        scalar_muls: SCALAR_MULS.with(Cell::get),
        hash_to_point: HASH_TO_POINT.with(Cell::get),
    }
}

pub fn reset() {
    PAIRINGS.with(|c| c.set(0));
    SCALAR_MULS.with(|c| c.set(0));
    HASH_TO_POINT.with(|c| c.set(0));
}

/// Runs `f` and returns the operations it performed on this thread.
pub fn measure<T>(f: impl FnOnce() -> T) -> (T, OpCounts) {
    let before = snapshot();
    let out = f();
    let after = snapshot();
    let delta = OpCounts {
        pairings: after.pairings - before.pairings,
        scalar_muls: after.scalar_muls - before.scalar_muls,
        hash_to_point: after.hash_to_point - before.hash_to_point,
    };
    (out, delta)
}
