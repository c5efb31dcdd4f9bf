//! Rayon or sequential execution, selected by the `parallel` feature.
//!
//! Call sites use `into_par_iter()` / `par_iter()` unconditionally. Without
//! the feature these resolve to plain `Iterator`s, so results and their order
//! are identical in both builds.

#[cfg(feature = "parallel")]
pub use rayon::prelude::*;

#[cfg(not(feature = "parallel"))]
mod sequential {
    pub trait IntoParallelIterator {
        type Iter: Iterator<Item = Self::Item>;
        type Item;
        fn into_par_iter(self) -> Self::Iter;
    }

    impl<I: IntoIterator> IntoParallelIterator for I {
        type Iter = I::IntoIter;
        type Item = I::Item;
        fn into_par_iter(self) -> Self::Iter {
            self.into_iter()
        }
    }

    pub trait ParallelSlice<T> {
        fn par_iter(&self) -> std::slice::Iter<'_, T>;
    }

    impl<T> ParallelSlice<T> for [T] {
        fn par_iter(&self) -> std::slice::Iter<'_, T> {
            self.iter()
        }
    }

    /// Rayon-only adaptors, mapped onto their sequential equivalents.
    pub trait ParallelIteratorExt: Iterator + Sized {
        fn flat_map_iter<U: IntoIterator, F: FnMut(Self::Item) -> U>(self, f: F) -> std::iter::FlatMap<Self, U, F> {
            self.flat_map(f)
        }

        fn find_any<P: FnMut(&Self::Item) -> bool>(mut self, predicate: P) -> Option<Self::Item> {
            self.find(predicate)
        }

        fn find_map_any<B, F: FnMut(Self::Item) -> Option<B>>(mut self, f: F) -> Option<B> {
            self.find_map(f)
        }
    }

    impl<I: Iterator> ParallelIteratorExt for I {}
}

#[cfg(not(feature = "parallel"))]
pub use sequential::*;

/// Whether this build evaluates independent work items on a thread pool.
pub const fn is_parallel() -> bool {
    cfg!(feature = "parallel")
}
