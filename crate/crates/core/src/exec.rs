//! Execution strategy for the data-parallel sweeps (subset enumeration,
//! morphism search, batch checks). Without the `parallel` feature every
//! strategy runs sequentially.

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

impl Exec {
    /// Ordered `filter_map` over `0..n`.
    pub fn filter_map_range<T, F>(self, n: u64, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(u64) -> Option<T> + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => {
                use rayon::prelude::*;
                (0..n).into_par_iter().filter_map(f).collect()
            }
            _ => (0..n).filter_map(f).collect(),
        }
    }

    /// Ordered `map` over a slice.
    pub fn map_slice<S, T, F>(self, items: &[S], f: F) -> Vec<T>
    where
        S: Sync,
        T: Send,
        F: Fn(&S) -> T + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => {
                use rayon::prelude::*;
                items.par_iter().map(f).collect()
            }
            _ => items.iter().map(f).collect(),
        }
    }

    /// Number of indices in `0..n` satisfying `f`.
    pub fn count_range<F>(self, n: u64, f: F) -> usize
    where
        F: Fn(u64) -> bool + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => {
                use rayon::prelude::*;
                (0..n).into_par_iter().filter(|&i| f(i)).count()
            }
            _ => (0..n).filter(|&i| f(i)).count(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strategies_agree_and_keep_order() {
        let f = |i: u64| (i.is_multiple_of(3)).then_some(i * 2);
        let a = Exec::Sequential.filter_map_range(100, f);
        let b = Exec::Parallel.filter_map_range(100, f);
        assert_eq!(a, b);
        assert_eq!(a[..3], [0, 6, 12]);
        assert_eq!(Exec::Parallel.count_range(10, |i| i > 4), 5);
    }
}
