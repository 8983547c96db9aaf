//! Thin switch between rayon and sequential iteration.
//!
//! With the default `parallel` feature the helpers fan work out over
//! rayon's global pool; without it they run the same closures in order.
//! Callers must pass associative/commutative combining steps so both
//! modes agree bit for bit.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Map `f` over `0..n` and fold the results with `combine` starting
/// from `identity`. `combine` must be associative with `identity` as a
/// neutral element.
pub fn map_reduce<T, F, C>(n: usize, identity: T, f: F, combine: C) -> T
where
    T: Clone + Send + Sync,
    F: Fn(usize) -> T + Sync + Send,
    C: Fn(T, T) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n)
            .into_par_iter()
            .map(f)
            .reduce(|| identity.clone(), combine)
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).fold(identity, combine)
    }
}

/// Map `f` over `0..n`, collecting in index order.
pub fn map_collect<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).collect()
    }
}

/// Map `f` over a slice, collecting in order.
pub fn map_slice<S, T, F>(items: &[S], f: F) -> Vec<T>
where
    S: Sync,
    T: Send,
    F: Fn(&S) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}
