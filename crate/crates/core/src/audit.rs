//! Process-wide tally of axiom checks run on constructed structures.

use std::sync::atomic::{AtomicUsize, Ordering};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Category,
    Profunctor,
    Multicategory,
    MultiProfunctor,
}

const KINDS: usize = 4;

static CHECKED: [AtomicUsize; KINDS] = [const { AtomicUsize::new(0) }; KINDS];
static FAILED: [AtomicUsize; KINDS] = [const { AtomicUsize::new(0) }; KINDS];

pub fn record(kind: Kind, ok: bool) {
    CHECKED[kind as usize].fetch_add(1, Ordering::Relaxed);
    if !ok {
        FAILED[kind as usize].fetch_add(1, Ordering::Relaxed);
    }
}

/// `(checked, failed)` for one kind of structure.
pub fn tally(kind: Kind) -> (usize, usize) {
    (CHECKED[kind as usize].load(Ordering::Relaxed), FAILED[kind as usize].load(Ordering::Relaxed))
}
