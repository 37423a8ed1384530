// Copyright 2026 trion-sim Contributors
// SPDX-License-Identifier: Apache-2.0

//! Dense complex linear algebra and Hilbert-space bookkeeping.
//!
//! Everything here is dimension-agnostic, but the model spaces are tiny
//! (d ≤ 4, superoperators ≤ 16²), so dense storage and direct methods are
//! used throughout. Operators are dimensionless; rates are carried
//! separately in rad/ns.

use crate::{C64, CMat, CVec, Result, SimError};

/// A finite Hilbert space with named basis states.
///
/// The basis index order is fixed: for the trion model it is
/// s = 0, p = 1, t = 2 (see [`crate::trion`]).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertSpace {
    labels: Vec<String>,
}

impl HilbertSpace {
    /// Build a space from basis-state labels. Labels must be unique and
    /// non-empty.
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(SimError::InvalidArgument(
                "Hilbert space needs at least one basis state".into(),
            ));
        }
        for (i, a) in labels.iter().enumerate() {
            if labels[..i].contains(a) {
                return Err(SimError::InvalidArgument(format!(
                    "duplicate basis label '{a}'"
                )));
            }
        }
        Ok(Self { labels })
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }
}

/// Transition operator |i⟩⟨j|: single unit entry at (i, j).
pub fn projector(space: &HilbertSpace, i: usize, j: usize) -> Result<CMat> {
    let d = space.dim();
    if i >= d || j >= d {
        return Err(SimError::IndexOutOfRange(format!(
            "projector({i}, {j}) on a dim-{d} space"
        )));
    }
    let mut m = CMat::zeros((d, d));
    m[[i, j]] = C64::new(1.0, 0.0);
    Ok(m)
}

/// Kronecker product, (rA·rB) × (cA·cB).
pub fn kron(a: &CMat, b: &CMat) -> CMat {
    ndarray::linalg::kron(a, b)
}

/// Conjugate transpose.
pub fn dagger(m: &CMat) -> CMat {
    m.t().mapv(|z| z.conj())
}

/// Largest entry magnitude; zero for empty matrices.
pub fn max_abs(m: &CMat) -> f64 {
    m.iter().fold(0.0f64, |acc, z| acc.max(z.norm()))
}

/// Max deviation from Hermiticity, `max |m[i,j] − conj(m[j,i])|`.
pub fn hermitian_deviation(m: &CMat) -> f64 {
    let n = m.nrows();
    let mut dev = 0.0f64;
    for i in 0..n {
        for j in i..n {
            dev = dev.max((m[[i, j]] - m[[j, i]].conj()).norm());
        }
    }
    dev
}

/// True when the matrix is square and Hermitian within `tol` (entrywise).
pub fn is_hermitian(m: &CMat, tol: f64) -> bool {
    m.nrows() == m.ncols() && hermitian_deviation(m) <= tol
}

/// Pivot magnitudes below `1e-14 · max|A|` are treated as singular.
const SINGULAR_PIVOT_REL: f64 = 1e-14;

/// LU factorization with partial pivoting, kept around so the factors can
/// be reused for iterative refinement.
struct LuFactors {
    lu: CMat,
    swaps: Vec<(usize, usize)>,
}

fn lu_factor(a: &CMat) -> Result<LuFactors> {
    let n = a.nrows();
    let mut lu = a.clone();
    let mut swaps = Vec::new();
    let threshold = SINGULAR_PIVOT_REL * max_abs(a);
    for k in 0..n {
        let (piv, pmag) = (k..n)
            .map(|i| (i, lu[[i, k]].norm()))
            .max_by(|x, y| x.1.total_cmp(&y.1))
            .expect("non-empty pivot column");
        if pmag <= threshold {
            return Err(SimError::SingularMatrix {
                pivot: pmag,
                threshold,
            });
        }
        if piv != k {
            for j in 0..n {
                lu.swap([k, j], [piv, j]);
            }
            swaps.push((k, piv));
        }
        let pivot = lu[[k, k]];
        for i in k + 1..n {
            let f = lu[[i, k]] / pivot;
            lu[[i, k]] = f;
            for j in k + 1..n {
                let t = lu[[k, j]];
                lu[[i, j]] -= f * t;
            }
        }
    }
    Ok(LuFactors { lu, swaps })
}

impl LuFactors {
    fn solve(&self, b: &CVec) -> CVec {
        let n = b.len();
        let mut x = b.clone();
        for &(i, j) in &self.swaps {
            x.swap(i, j);
        }
        for k in 0..n {
            for i in k + 1..n {
                let t = x[k];
                x[i] -= self.lu[[i, k]] * t;
            }
        }
        for k in (0..n).rev() {
            let mut s = x[k];
            for j in k + 1..n {
                s -= self.lu[[k, j]] * x[j];
            }
            x[k] = s / self.lu[[k, k]];
        }
        x
    }
}

/// Solve A x = b by LU with partial pivoting plus one step of iterative
/// refinement.
pub fn solve_linear(a: &CMat, b: &CVec) -> Result<CVec> {
    let n = a.nrows();
    if a.ncols() != n {
        return Err(SimError::DimensionMismatch(format!(
            "solve_linear needs a square matrix, got {}×{}",
            a.nrows(),
            a.ncols()
        )));
    }
    if b.len() != n {
        return Err(SimError::DimensionMismatch(format!(
            "solve_linear: matrix is {n}×{n} but rhs has length {}",
            b.len()
        )));
    }
    let factors = lu_factor(a)?;
    let mut x = factors.solve(b);
    let r = b - &a.dot(&x);
    let dx = factors.solve(&r);
    x += &dx;
    Ok(x)
}

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi
/// rotations. Returns eigenvalues in ascending order and the unitary matrix
/// whose columns are the matching eigenvectors.
///
/// The input must be Hermitian within `1e-10 · (1 + max|A|)`.
pub fn eig_hermitian(a: &CMat) -> Result<(Vec<f64>, CMat)> {
    let n = a.nrows();
    if a.ncols() != n {
        return Err(SimError::DimensionMismatch(format!(
            "eig_hermitian needs a square matrix, got {}×{}",
            a.nrows(),
            a.ncols()
        )));
    }
    let scale = max_abs(a);
    let dev = hermitian_deviation(a);
    if dev > 1e-10 * (1.0 + scale) {
        return Err(SimError::NotHermitian(dev));
    }
    // work on the exactly-Hermitian average
    let mut h: CMat = (a + &dagger(a)).mapv(|z| 0.5 * z);
    let mut v = CMat::eye(n);
    if n > 1 {
        let target = 1e-14 * (1.0 + scale);
        let mut converged = false;
        for _sweep in 0..100 {
            let mut off = 0.0f64;
            for p in 0..n {
                for q in p + 1..n {
                    off = off.max(h[[p, q]].norm());
                }
            }
            if off <= target {
                converged = true;
                break;
            }
            for p in 0..n - 1 {
                for q in p + 1..n {
                    let hpq = h[[p, q]];
                    let r = hpq.norm();
                    if r <= target * 1e-2 {
                        continue;
                    }
                    // Unitary plane rotation W = D·G with D = diag(1, e^{-iφ})
                    // removing the phase of h[p][q] and G a real Jacobi
                    // rotation zeroing the resulting real off-diagonal.
                    let phase = hpq / r;
                    let tau = (h[[p, p]].re - h[[q, q]].re) / (2.0 * r);
                    let sgn = if tau >= 0.0 { 1.0 } else { -1.0 };
                    let t = -sgn / (tau.abs() + (1.0 + tau * tau).sqrt());
                    let c = 1.0 / (1.0 + t * t).sqrt();
                    let s = t * c;
                    let wpp = C64::new(c, 0.0);
                    let wpq = C64::new(s, 0.0);
                    let wqp = -phase.conj() * s;
                    let wqq = phase.conj() * c;
                    for i in 0..n {
                        let hip = h[[i, p]];
                        let hiq = h[[i, q]];
                        h[[i, p]] = hip * wpp + hiq * wqp;
                        h[[i, q]] = hip * wpq + hiq * wqq;
                    }
                    for j in 0..n {
                        let hpj = h[[p, j]];
                        let hqj = h[[q, j]];
                        h[[p, j]] = wpp.conj() * hpj + wqp.conj() * hqj;
                        h[[q, j]] = wpq.conj() * hpj + wqq.conj() * hqj;
                    }
                    for i in 0..n {
                        let vip = v[[i, p]];
                        let viq = v[[i, q]];
                        v[[i, p]] = vip * wpp + viq * wqp;
                        v[[i, q]] = vip * wpq + viq * wqq;
                    }
                }
            }
        }
        if !converged {
            let mut off = 0.0f64;
            for p in 0..n {
                for q in p + 1..n {
                    off = off.max(h[[p, q]].norm());
                }
            }
            if off > target {
                return Err(SimError::ConvergenceFailure(format!(
                    "Jacobi eigensolver: off-diagonal {off:.3e} after 100 sweeps"
                )));
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| h[[i, i]].re.total_cmp(&h[[j, j]].re));
    let eigenvalues: Vec<f64> = order.iter().map(|&i| h[[i, i]].re).collect();
    let mut vectors = CMat::zeros((n, n));
    for (col, &src) in order.iter().enumerate() {
        for row in 0..n {
            vectors[[row, col]] = v[[row, src]];
        }
    }
    Ok((eigenvalues, vectors))
}
