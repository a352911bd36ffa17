//! Sequential/parallel execution switch.
//!
//! Every data-parallel loop in the crate is written against [`Execution`].
//! With the `parallel` feature the `Parallel` variant dispatches to rayon;
//! without it both variants run the same sequential code.
//!
//! Reductions use fixed-size chunks combined in index order, so the
//! floating-point result does not depend on the mode or the thread count.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Number of elements per reduction chunk.
pub const CHUNK: usize = 4096;

/// Below this many elements pointwise kernels stay sequential.
pub const PAR_THRESHOLD: usize = 1 << 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Execution {
    Sequential,
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

impl Execution {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }

    /// Map `f` over independent jobs, returning results in input order.
    pub fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return items.par_iter().map(f).collect();
        }
        items.iter().map(f).collect()
    }

    /// Apply `f` to every element of `data`.
    pub fn for_each_mut<T, F>(self, data: &mut [T], f: F)
    where
        T: Send,
        F: Fn(usize, &mut T) + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() && data.len() >= PAR_THRESHOLD {
            data.par_iter_mut().enumerate().for_each(|(i, x)| f(i, x));
            return;
        }
        data.iter_mut().enumerate().for_each(|(i, x)| f(i, x));
    }

    /// Apply `f` to consecutive rows of length `row` in `data`.
    pub fn for_each_row<T, F>(self, data: &mut [T], row: usize, f: F)
    where
        T: Send,
        F: Fn(&mut [T]) + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() && data.len() >= PAR_THRESHOLD && data.len() > row {
            data.par_chunks_mut(row).for_each(f);
            return;
        }
        data.chunks_mut(row).for_each(f);
    }

    /// Deterministic sum of `f(i, &data[i])`.
    pub fn sum<T, F>(self, data: &[T], f: F) -> f64
    where
        T: Sync,
        F: Fn(usize, &T) -> f64 + Sync + Send,
    {
        let partial = |(c, chunk): (usize, &[T])| -> f64 {
            let base = c * CHUNK;
            chunk.iter().enumerate().map(|(i, x)| f(base + i, x)).sum()
        };
        #[cfg(feature = "parallel")]
        if self.is_parallel() && data.len() >= PAR_THRESHOLD {
            let parts: Vec<f64> = data.par_chunks(CHUNK).enumerate().map(partial).collect();
            return parts.into_iter().sum();
        }
        let parts: Vec<f64> = data.chunks(CHUNK).enumerate().map(partial).collect();
        parts.into_iter().sum()
    }

    /// Deterministic maximum of `f(i, &data[i])`; 0 for empty input.
    pub fn max<T, F>(self, data: &[T], f: F) -> f64
    where
        T: Sync,
        F: Fn(usize, &T) -> f64 + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() && data.len() >= PAR_THRESHOLD {
            return data
                .par_iter()
                .enumerate()
                .map(|(i, x)| f(i, x))
                .reduce(|| 0.0, f64::max);
        }
        data.iter().enumerate().map(|(i, x)| f(i, x)).fold(0.0, f64::max)
    }
}
