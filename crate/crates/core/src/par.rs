// Copyright 2026 trion-sim Contributors
// SPDX-License-Identifier: Apache-2.0

//! Internal parallel-map helper. Grid points are independent; results are
//! gathered in index order, so output is identical with and without the
//! `parallel` feature.

#[cfg(feature = "parallel")]
pub(crate) fn map_indexed<U, F>(n: usize, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(usize) -> U + Sync + Send,
{
    use rayon::prelude::*;
    (0..n).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map_indexed<U, F>(n: usize, f: F) -> Vec<U>
where
    F: Fn(usize) -> U,
{
    (0..n).map(f).collect()
}
