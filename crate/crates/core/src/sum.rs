//! Compensated summation with a reproducible chunked reduction.
//!
//! The canonical sum of a sequence is defined as: Neumaier-compensated
//! accumulation inside fixed chunks of [`CHUNK`] consecutive terms, then
//! Neumaier combination of the chunk totals in chunk order. Parallel callers
//! must sum whole chunks and combine in the same order, which makes the
//! result bit-identical for every thread count.

use crate::scalar::Real;
use rayon::prelude::*;

/// Fixed chunk length of the canonical reduction.
pub const CHUNK: usize = 4096;

/// Neumaier accumulator.
#[derive(Debug, Clone, Copy)]
pub struct Compensated<T: Real> {
    sum: T,
    carry: T,
}

impl<T: Real> Default for Compensated<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T: Real> Compensated<T> {
    #[inline]
    pub fn new() -> Self {
        Compensated {
            sum: T::zero(),
            carry: T::zero(),
        }
    }

    #[inline]
    pub fn add(&mut self, value: T) {
        let t = self.sum + value;
        if self.sum.abs() >= value.abs() {
            self.carry += (self.sum - t) + value;
        } else {
            self.carry += (value - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> T {
        self.sum + self.carry
    }
}

/// Canonical chunked compensated sum, sequential.
pub fn sum_sequential<T: Real>(values: &[T]) -> T {
    let mut total = Compensated::new();
    for chunk in values.chunks(CHUNK) {
        let mut acc = Compensated::new();
        for &v in chunk {
            acc.add(v);
        }
        total.add(acc.value());
    }
    total.value()
}

/// Canonical chunked compensated sum over `f(0), ..., f(n-1)` without
/// materializing the terms. Bit-identical to [`sum_sequential`] on the same
/// sequence.
pub fn sum_indexed<T: Real>(n: usize, f: impl Fn(usize) -> T) -> T {
    let mut total = Compensated::new();
    let mut start = 0;
    while start < n {
        let end = (start + CHUNK).min(n);
        let mut acc = Compensated::new();
        for i in start..end {
            acc.add(f(i));
        }
        total.add(acc.value());
        start = end;
    }
    total.value()
}

/// Parallel version of [`sum_indexed`]; chunk totals are combined in chunk
/// order so the result is bit-identical for every thread count.
pub fn sum_indexed_parallel<T: Real>(n: usize, f: impl Fn(usize) -> T + Send + Sync) -> T {
    let n_chunks = n.div_ceil(CHUNK);
    let partials: Vec<T> = (0..n_chunks)
        .into_par_iter()
        .map(|c| {
            let start = c * CHUNK;
            let end = (start + CHUNK).min(n);
            let mut acc = Compensated::new();
            for i in start..end {
                acc.add(f(i));
            }
            acc.value()
        })
        .collect();
    let mut total = Compensated::new();
    for p in partials {
        total.add(p);
    }
    total.value()
}

/// Canonical chunked compensated sum, chunk work in parallel, combination in
/// chunk order. Bit-identical to [`sum_sequential`].
pub fn sum_parallel<T: Real>(values: &[T]) -> T {
    let partials: Vec<T> = values
        .par_chunks(CHUNK)
        .map(|chunk| {
            let mut acc = Compensated::new();
            for &v in chunk {
                acc.add(v);
            }
            acc.value()
        })
        .collect();
    let mut total = Compensated::new();
    for p in partials {
        total.add(p);
    }
    total.value()
}
