//! Execution strategy for the data-parallel inner loops.
//!
//! The hot paths of the crate (box enumerations, per-piece fan computations,
//! stability sweeps) are expressed through [`map_collect`] / [`sum_by`] so the
//! same code runs on rayon or sequentially. The `parallel` feature selects
//! the default; benches compare the two modes explicitly.

/// How to run an embarrassingly parallel loop.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ExecMode {
    /// Plain sequential iteration.
    #[cfg_attr(not(feature = "parallel"), default)]
    Sequential,
    /// Rayon work-stealing iteration. Falls back to sequential when the
    /// `parallel` feature is disabled; with the feature enabled this is the
    /// default.
    #[cfg_attr(feature = "parallel", default)]
    Parallel,
}

#[cfg(not(feature = "parallel"))]
impl ExecMode {
    fn effective(self) -> ExecMode {
        ExecMode::Sequential
    }
}

#[cfg(feature = "parallel")]
impl ExecMode {
    fn effective(self) -> ExecMode {
        self
    }
}

/// Map `f` over `items`, preserving order.
pub fn map_collect<T, R, F>(mode: ExecMode, items: Vec<T>, f: F) -> Vec<R>
where
    T: Send,
    R: Send,
    F: Fn(T) -> R + Sync + Send,
{
    match mode.effective() {
        ExecMode::Sequential => items.into_iter().map(f).collect(),
        #[allow(unreachable_patterns)]
        _ => {
            #[cfg(feature = "parallel")]
            {
                use rayon::prelude::*;
                items.into_par_iter().map(f).collect()
            }
            #[cfg(not(feature = "parallel"))]
            unreachable!()
        }
    }
}

/// Fold the results of `f` over `0..n` with a commutative merge.
pub fn fold_range<A, F, M>(mode: ExecMode, n: usize, init: impl Fn() -> A + Sync, f: F, merge: M) -> A
where
    A: Send,
    F: Fn(A, usize) -> A + Sync + Send,
    M: Fn(A, A) -> A + Sync + Send,
{
    match mode.effective() {
        ExecMode::Sequential => (0..n).fold(init(), f),
        #[allow(unreachable_patterns)]
        _ => {
            #[cfg(feature = "parallel")]
            {
                use rayon::prelude::*;
                (0..n)
                    .into_par_iter()
                    .fold(&init, &f)
                    .reduce(&init, merge)
            }
            #[cfg(not(feature = "parallel"))]
            unreachable!()
        }
    }
}
