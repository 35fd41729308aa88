//! Execution strategy for the candidate scans.
//!
//! The witness sampler and the bounded integer search both reduce to
//! "smallest index whose candidate passes a pure check". With the
//! `parallel` feature (on by default) the scan is distributed over a
//! rayon pool; `find_first` keeps the result identical to the
//! sequential fallback, so verdicts and reports are byte-for-byte the
//! same under either build.

#[cfg(feature = "parallel")]
pub(crate) fn first_match<P>(count: u64, pred: P) -> Option<u64>
where
    P: Fn(u64) -> bool + Sync + Send,
{
    use rayon::iter::{IntoParallelIterator, ParallelIterator};
    (0..count).into_par_iter().find_first(|&i| pred(i))
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn first_match<P>(count: u64, pred: P) -> Option<u64>
where
    P: Fn(u64) -> bool + Sync + Send,
{
    (0..count).find(|&i| pred(i))
}
