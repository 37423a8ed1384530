// Copyright 2026 trion-sim Contributors
// SPDX-License-Identifier: Apache-2.0

//! Small grid utilities shared by peak extraction and dip metrics.

/// Vertex abscissa of the parabola through three points. `None` when the
/// points are collinear (or degenerate), in which case callers fall back
/// to the middle sample.
pub(crate) fn parabola_vertex(
    x0: f64,
    y0: f64,
    x1: f64,
    y1: f64,
    x2: f64,
    y2: f64,
) -> Option<f64> {
    let d0 = x1 - x0;
    let d2 = x1 - x2;
    let denom = d0 * (y1 - y2) - d2 * (y1 - y0);
    if denom.abs() <= 1e-300 {
        return None;
    }
    let num = d0 * d0 * (y1 - y2) - d2 * d2 * (y1 - y0);
    let x = x1 - 0.5 * num / denom;
    x.is_finite().then_some(x)
}

/// Piecewise-linear interpolation on an ascending grid; clamps outside.
pub(crate) fn linear_interp(xs: &[f64], ys: &[f64], x: f64) -> f64 {
    debug_assert_eq!(xs.len(), ys.len());
    if x <= xs[0] {
        return ys[0];
    }
    if x >= xs[xs.len() - 1] {
        return ys[ys.len() - 1];
    }
    let j = xs.partition_point(|&v| v < x).max(1);
    let (x0, x1) = (xs[j - 1], xs[j]);
    let (y0, y1) = (ys[j - 1], ys[j]);
    if x1 == x0 {
        return y0;
    }
    y0 + (y1 - y0) * (x - x0) / (x1 - x0)
}
