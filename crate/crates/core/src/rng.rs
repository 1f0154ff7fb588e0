//! Seed derivation for reproducible, splittable random streams.
//!
//! Batch `i` of a run with master seed `s` always uses the generator seeded
//! with `child_seed(s, i)`, so serial and parallel executions walk identical
//! streams. The mix is SplitMix64.

/// One SplitMix64 output step.
#[inline]
pub(crate) fn splitmix64(state: u64) -> u64 {
    let mut z = state.wrapping_add(0x9e3779b97f4a7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

/// Child seed for batch `index` of a stream rooted at `master`.
#[inline]
pub(crate) fn child_seed(master: u64, index: u64) -> u64 {
    splitmix64(master ^ splitmix64(index))
}
