//! Data-parallel helpers. With the `parallel` feature these fan out over
//! rayon's pool; without it they run sequentially. Either way results come
//! back in input order.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::scalar::{BackendKind, Scalar};

/// Maps `f` over `0..len`, collecting results in index order.
pub fn map_indices<R, F>(len: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Send + Sync,
{
    #[cfg(feature = "parallel")]
    {
        (0..len).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..len).map(f).collect()
    }
}

/// Fallible variant of [`map_indices`]; returns the lowest-index error.
pub fn try_map_indices<R, E, F>(len: usize, f: F) -> Result<Vec<R>, E>
where
    R: Send,
    E: Send,
    F: Fn(usize) -> Result<R, E> + Send + Sync,
{
    map_indices(len, f).into_iter().collect()
}

/// Sums `terms` produced by `term(0..len)`.
///
/// Float backends are reduced strictly left to right in index order so that
/// output is bit-reproducible. Exact backends may use any reduction shape,
/// since the result cannot depend on it.
pub fn sum_terms<T, F, A>(len: usize, term: F, add: A) -> Option<T>
where
    T: Send,
    F: Fn(usize) -> T + Send + Sync,
    A: Fn(T, T) -> T + Send + Sync,
{
    sum_terms_for(BackendKind::Float, len, term, add)
}

pub(crate) fn sum_terms_scalar<S: Scalar, T, F, A>(len: usize, term: F, add: A) -> Option<T>
where
    T: Send,
    F: Fn(usize) -> T + Send + Sync,
    A: Fn(T, T) -> T + Send + Sync,
{
    sum_terms_for(S::KIND, len, term, add)
}

fn sum_terms_for<T, F, A>(kind: BackendKind, len: usize, term: F, add: A) -> Option<T>
where
    T: Send,
    F: Fn(usize) -> T + Send + Sync,
    A: Fn(T, T) -> T + Send + Sync,
{
    match kind {
        #[cfg(feature = "parallel")]
        BackendKind::Exact => (0..len).into_par_iter().map(term).reduce_with(add),
        _ => map_indices(len, term).into_iter().reduce(add),
    }
}
