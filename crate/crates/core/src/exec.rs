//! Data-parallel helpers with a sequential fallback.
//!
//! Results always come back in input order, so output does not depend on
//! the mode or on scheduling. Without the `parallel` feature every mode
//! runs sequentially.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Exec {
    Sequential,
    Parallel,
}

impl Default for Exec {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Exec::Parallel
        } else {
            Exec::Sequential
        }
    }
}

impl Exec {
    fn parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }

    /// `items.map(f)`, in input order.
    pub fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.parallel() {
            return items.par_iter().map(f).collect();
        }
        items.iter().map(f).collect()
    }

    /// The first `Some` in input order; later items may or may not have
    /// been evaluated.
    pub fn find_map_first<T, R, F>(self, items: &[T], f: F) -> Option<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> Option<R> + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.parallel() {
            return items.par_iter().find_map_first(f);
        }
        items.iter().find_map(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_agree() {
        let items: Vec<u64> = (0..1000).collect();
        let square = |x: &u64| x * x;
        assert_eq!(
            Exec::Sequential.map(&items, square),
            Exec::Parallel.map(&items, square)
        );
        let first = |x: &u64| (x % 97 == 96).then_some(*x);
        assert_eq!(Exec::Parallel.find_map_first(&items, first), Some(96));
        assert_eq!(Exec::Sequential.find_map_first(&items, first), Some(96));
    }
}
