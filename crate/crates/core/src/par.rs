//! Data-parallel helpers. With the `parallel` feature the pair sweeps run on
//! rayon; without it they run sequentially. Results are always returned in
//! input order, so both builds produce identical output.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Maps `f` over `items`, preserving order.
#[cfg(feature = "parallel")]
pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    items.iter().map(f).collect()
}

/// Runs `f` with at most `threads` workers (`None` keeps the default pool).
/// A no-op wrapper in the sequential build.
#[cfg(feature = "parallel")]
pub fn with_threads<R, F>(threads: Option<usize>, f: F) -> R
where
    R: Send,
    F: FnOnce() -> R + Send,
{
    match threads {
        None => f(),
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t.max(1))
            .build()
            .expect("thread pool")
            .install(f),
    }
}

#[cfg(not(feature = "parallel"))]
pub fn with_threads<R, F>(_threads: Option<usize>, f: F) -> R
where
    R: Send,
    F: FnOnce() -> R + Send,
{
    f()
}

/// Whether this build runs sweeps in parallel.
pub const fn is_parallel() -> bool {
    cfg!(feature = "parallel")
}

/// All unordered pairs `(u, v)` with `u < v < n`.
pub fn all_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_preserved_under_any_pool() {
        let items: Vec<u64> = (0..1000).collect();
        let one = with_threads(Some(1), || map(&items, |x| x * x));
        let many = with_threads(Some(4), || map(&items, |x| x * x));
        assert_eq!(one, many);
        assert_eq!(one[999], 999 * 999);
    }

    #[test]
    fn pairs() {
        assert_eq!(all_pairs(3), vec![(0, 1), (0, 2), (1, 2)]);
        assert!(all_pairs(1).is_empty());
    }
}
