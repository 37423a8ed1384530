// Copyright 2026 trion-sim Contributors
// SPDX-License-Identifier: Apache-2.0

//! Lindblad master-equation engine.
//!
//! Builds the dense superoperator generating
//!
//!   dρ/dt = 𝓛ρ = −i[H, ρ] + Σ_k γ_k (L_k ρ L_k† − ½{L_k†L_k, ρ})
//!
//! and computes steady states (constrained direct solve) and time
//! propagation (adaptive Dormand–Prince RK45) of density matrices.
//!
//! # Vectorization convention
//!
//! Column stacking: `vec(ρ)[i + j·d] = ρ[i,j]`, so `vec(A X B) =
//! (Bᵀ ⊗ A) vec(X)`. Under this convention
//!
//!   𝓛 = −i(I ⊗ H − Hᵀ ⊗ I)
//!       + Σ_k γ_k ( L̄_k ⊗ L_k − ½ I ⊗ L_k†L_k − ½ (L_k†L_k)ᵀ ⊗ I ).
//!
//! The convention is locked by a regression test comparing `𝓛 vec(ρ)`
//! against direct evaluation of the right-hand side on random ρ.

use crate::operators::{dagger, hermitian_deviation, is_hermitian, kron, max_abs, solve_linear};
use crate::{C64, CMat, CVec, Result, SimError};

/// A single dissipation channel: jump operator L (dimensionless) with its
/// rate γ ≥ 0 in rad/ns.
#[derive(Debug, Clone)]
pub struct DissipationChannel {
    pub operator: CMat,
    pub rate: f64,
}

impl DissipationChannel {
    pub fn new(operator: CMat, rate: f64) -> Result<Self> {
        if !(rate >= 0.0 && rate.is_finite()) {
            return Err(SimError::InvalidArgument(format!(
                "channel rate must be finite and ≥ 0, got {rate}"
            )));
        }
        if operator.nrows() != operator.ncols() {
            return Err(SimError::DimensionMismatch(format!(
                "jump operator must be square, got {}×{}",
                operator.nrows(),
                operator.ncols()
            )));
        }
        Ok(Self { operator, rate })
    }
}

/// Dense superoperator acting on column-stacked density matrices.
#[derive(Debug, Clone)]
pub struct Liouvillian {
    dim: usize,
    matrix: CMat,
}

impl Liouvillian {
    /// Hilbert-space dimension d (the matrix is d² × d²).
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self) -> &CMat {
        &self.matrix
    }

    /// 𝓛 y for a vectorized operator y.
    pub fn apply(&self, y: &CVec) -> CVec {
        self.matrix.dot(y)
    }

    /// Propagate a vectorized operator along `t_grid` with the adaptive
    /// RK45 integrator. `t_grid` must be strictly ascending and start at
    /// t ≥ 0; integration begins at t = 0.
    ///
    /// This is the low-level engine behind [`propagate`]; it does not
    /// assume the state is Hermitian, which is what two-time correlation
    /// functions need when evolving conditioned operators.
    pub fn propagate_vec(&self, y0: &CVec, t_grid: &[f64], tol: f64) -> Result<Vec<CVec>> {
        if y0.len() != self.matrix.nrows() {
            return Err(SimError::DimensionMismatch(format!(
                "state has length {} but the Liouvillian acts on length {}",
                y0.len(),
                self.matrix.nrows()
            )));
        }
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(SimError::InvalidArgument(format!(
                "tolerance must be positive, got {tol}"
            )));
        }
        check_ascending_from_zero(t_grid)?;
        let mut out = Vec::with_capacity(t_grid.len());
        let mut t = 0.0f64;
        let mut y = y0.clone();
        // conservative initial step from the operator's row-sum norm
        let opnorm = self
            .matrix
            .rows()
            .into_iter()
            .map(|r| r.iter().map(|z| z.norm()).sum::<f64>())
            .fold(0.0f64, f64::max);
        let mut h = (0.5 / (1.0 + opnorm)).min(0.1);
        for &tk in t_grid {
            while t < tk {
                let step = h.min(tk - t);
                let (y_new, err) = rk45_step(&self.matrix, &y, step, tol);
                if err <= 1.0 {
                    t += step;
                    y = y_new;
                    let grow = (0.9 * err.powf(-0.2)).clamp(0.2, 5.0);
                    // a step truncated only by the output grid must not
                    // shrink the working step size
                    h = if step < h { h.max(step * grow) } else { step * grow };
                } else {
                    h = step * (0.9 * err.powf(-0.2)).clamp(0.2, 0.9);
                }
                if h < 1e-12 * (1.0 + t.abs()) {
                    return Err(SimError::IntegrationFailure {
                        reached: t,
                        message: "step size underflow (problem too stiff for the budget)".into(),
                    });
                }
            }
            out.push(y.clone());
        }
        Ok(out)
    }
}

fn check_ascending_from_zero(t_grid: &[f64]) -> Result<()> {
    if t_grid.is_empty() {
        return Err(SimError::InvalidArgument("empty time grid".into()));
    }
    if t_grid.iter().any(|t| !t.is_finite()) {
        return Err(SimError::InvalidArgument(
            "time grid contains non-finite values".into(),
        ));
    }
    if t_grid[0] < 0.0 {
        return Err(SimError::InvalidArgument(format!(
            "time grid must start at t ≥ 0, got {}",
            t_grid[0]
        )));
    }
    for w in t_grid.windows(2) {
        if w[1] <= w[0] {
            return Err(SimError::InvalidArgument(format!(
                "time grid must be strictly ascending, got {} then {}",
                w[0], w[1]
            )));
        }
    }
    Ok(())
}

// Dormand–Prince 5(4) coefficients.
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
const E1: f64 = B1 - 5179.0 / 57600.0;
const E3: f64 = B3 - 7571.0 / 16695.0;
const E4: f64 = B4 - 393.0 / 640.0;
const E5: f64 = B5 + 92097.0 / 339200.0;
const E6: f64 = B6 - 187.0 / 2100.0;
const E7: f64 = -1.0 / 40.0;

fn combine(y: &CVec, h: f64, terms: &[(f64, &CVec)]) -> CVec {
    let mut out = y.clone();
    for &(c, k) in terms {
        let f = C64::new(c * h, 0.0);
        out.zip_mut_with(k, |o, &kk| *o += kk * f);
    }
    out
}

/// One embedded RK45 step. Returns the 5th-order solution and the scaled
/// error estimate (accept when ≤ 1).
fn rk45_step(m: &CMat, y: &CVec, h: f64, tol: f64) -> (CVec, f64) {
    let k1 = m.dot(y);
    let k2 = m.dot(&combine(y, h, &[(A21, &k1)]));
    let k3 = m.dot(&combine(y, h, &[(A31, &k1), (A32, &k2)]));
    let k4 = m.dot(&combine(y, h, &[(A41, &k1), (A42, &k2), (A43, &k3)]));
    let k5 = m.dot(&combine(
        y,
        h,
        &[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)],
    ));
    let k6 = m.dot(&combine(
        y,
        h,
        &[(A61, &k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)],
    ));
    let y5 = combine(y, h, &[(B1, &k1), (B3, &k3), (B4, &k4), (B5, &k5), (B6, &k6)]);
    let k7 = m.dot(&y5);
    let mut err = 0.0f64;
    for i in 0..y.len() {
        let e = k1[i] * C64::new(E1 * h, 0.0)
            + k3[i] * C64::new(E3 * h, 0.0)
            + k4[i] * C64::new(E4 * h, 0.0)
            + k5[i] * C64::new(E5 * h, 0.0)
            + k6[i] * C64::new(E6 * h, 0.0)
            + k7[i] * C64::new(E7 * h, 0.0);
        let scale = tol * (1.0 + y[i].norm().max(y5[i].norm()));
        err = err.max(e.norm() / scale);
    }
    (y5, err)
}

/// Hermitian, unit-trace, positive-semidefinite system state.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    matrix: CMat,
}

impl DensityMatrix {
    /// Validating constructor: Hermitian within 1e-9, trace 1 within 1e-9,
    /// eigenvalues ≥ −1e-9.
    pub fn new(matrix: CMat) -> Result<Self> {
        let rho = Self { matrix };
        rho.validate(1e-9)?;
        Ok(rho)
    }

    /// Pure basis state |i⟩⟨i|.
    pub fn pure_state(dim: usize, i: usize) -> Result<Self> {
        if i >= dim {
            return Err(SimError::IndexOutOfRange(format!(
                "pure_state({i}) in dimension {dim}"
            )));
        }
        let mut m = CMat::zeros((dim, dim));
        m[[i, i]] = C64::new(1.0, 0.0);
        Ok(Self { matrix: m })
    }

    pub(crate) fn from_matrix_unchecked(matrix: CMat) -> Self {
        Self { matrix }
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &CMat {
        &self.matrix
    }

    /// Diagonal element ⟨i|ρ|i⟩ (real part).
    pub fn population(&self, i: usize) -> f64 {
        self.matrix[[i, i]].re
    }

    pub fn trace(&self) -> C64 {
        self.matrix.diag().sum()
    }

    /// Check the density-matrix invariants at tolerance `tol`.
    pub fn validate(&self, tol: f64) -> Result<()> {
        if self.matrix.nrows() != self.matrix.ncols() {
            return Err(SimError::DimensionMismatch(
                "density matrix must be square".into(),
            ));
        }
        let dev = hermitian_deviation(&self.matrix);
        if dev > tol {
            return Err(SimError::NotHermitian(dev));
        }
        let tr = self.trace();
        if (tr - C64::new(1.0, 0.0)).norm() > tol {
            return Err(SimError::InvalidArgument(format!(
                "density matrix trace {} differs from 1",
                tr
            )));
        }
        let herm = (&self.matrix + &dagger(&self.matrix)).mapv(|z| 0.5 * z);
        let (vals, _) = crate::operators::eig_hermitian(&herm)?;
        if let Some(&min) = vals.first() {
            if min < -tol {
                return Err(SimError::InvalidArgument(format!(
                    "density matrix has negative eigenvalue {min:.3e}"
                )));
            }
        }
        Ok(())
    }
}

/// Column-stacking vectorization, `vec(ρ)[i + j·d] = ρ[i,j]`.
pub fn vectorize(m: &CMat) -> CVec {
    let d = m.nrows();
    CVec::from_shape_fn(d * d, |k| m[[k % d, k / d]])
}

/// Inverse of [`vectorize`].
pub fn unvectorize(v: &CVec) -> Result<CMat> {
    let n = v.len();
    let d = (n as f64).sqrt().round() as usize;
    if d * d != n {
        return Err(SimError::DimensionMismatch(format!(
            "vector of length {n} is not a vectorized square matrix"
        )));
    }
    Ok(CMat::from_shape_fn((d, d), |(i, j)| v[i + j * d]))
}

/// Build the superoperator for Hamiltonian `h` (Hermitian within 1e-10)
/// and the given dissipation channels.
pub fn build_liouvillian(h: &CMat, channels: &[DissipationChannel]) -> Result<Liouvillian> {
    let d = h.nrows();
    if h.ncols() != d {
        return Err(SimError::DimensionMismatch(format!(
            "Hamiltonian must be square, got {}×{}",
            h.nrows(),
            h.ncols()
        )));
    }
    if !is_hermitian(h, 1e-10 * (1.0 + max_abs(h))) {
        return Err(SimError::NotHermitian(hermitian_deviation(h)));
    }
    for (k, ch) in channels.iter().enumerate() {
        if ch.operator.nrows() != d || ch.operator.ncols() != d {
            return Err(SimError::DimensionMismatch(format!(
                "channel {k} operator is {}×{} but the Hamiltonian is {d}×{d}",
                ch.operator.nrows(),
                ch.operator.ncols()
            )));
        }
        if !(ch.rate >= 0.0 && ch.rate.is_finite()) {
            return Err(SimError::InvalidArgument(format!(
                "channel {k} rate must be finite and ≥ 0, got {}",
                ch.rate
            )));
        }
    }
    let eye = CMat::eye(d);
    let ht = h.t().to_owned();
    let minus_i = C64::new(0.0, -1.0);
    let mut sup = (&kron(&eye, h) - &kron(&ht, &eye)).mapv(|z| minus_i * z);
    for ch in channels {
        if ch.rate == 0.0 {
            continue;
        }
        let l = &ch.operator;
        let lbar = l.mapv(|z| z.conj());
        let ldl = dagger(l).dot(l);
        let ldl_t = ldl.t().to_owned();
        let half = C64::new(0.5, 0.0);
        let term = &kron(&lbar, l) - &(&kron(&eye, &ldl) + &kron(&ldl_t, &eye)).mapv(|z| half * z);
        sup += &term.mapv(|z| C64::new(ch.rate, 0.0) * z);
    }
    Ok(Liouvillian {
        dim: d,
        matrix: sup,
    })
}

/// Unique steady state of 𝓛, found by replacing one row of the
/// superoperator with the trace functional and solving against a unit
/// right-hand side.
pub fn steady_state(l: &Liouvillian) -> Result<DensityMatrix> {
    let d = l.dim;
    let n = d * d;
    let mut a = l.matrix.clone();
    for col in 0..n {
        a[[0, col]] = C64::new(0.0, 0.0);
    }
    for i in 0..d {
        a[[0, i * (d + 1)]] = C64::new(1.0, 0.0);
    }
    let mut rhs = CVec::zeros(n);
    rhs[0] = C64::new(1.0, 0.0);
    let x = solve_linear(&a, &rhs).map_err(|e| match e {
        SimError::SingularMatrix { .. } => SimError::DegenerateSteadyState(
            "constrained solve is singular (kernel dimension ≠ 1)".into(),
        ),
        other => other,
    })?;
    let raw = unvectorize(&x)?;
    let mut rho = (&raw + &dagger(&raw)).mapv(|z| 0.5 * z);
    let tr = rho.diag().sum();
    if (tr.norm() - 1.0).abs() > 0.5 {
        return Err(SimError::DegenerateSteadyState(format!(
            "solved state has trace {tr}, expected 1"
        )));
    }
    rho.mapv_inplace(|z| z / tr);
    let residual = l
        .apply(&vectorize(&rho))
        .iter()
        .fold(0.0f64, |m, z| m.max(z.norm()));
    let guard = 1e-9 * (1.0 + max_abs(&l.matrix));
    if residual > guard {
        return Err(SimError::DegenerateSteadyState(format!(
            "steady-state residual {residual:.3e} exceeds {guard:.3e}"
        )));
    }
    Ok(DensityMatrix::from_matrix_unchecked(rho))
}

/// Propagate a density matrix along `t_grid`. Returned states satisfy the
/// density-matrix invariants within 10·tol.
pub fn propagate(
    rho0: &DensityMatrix,
    l: &Liouvillian,
    t_grid: &[f64],
    tol: f64,
) -> Result<Vec<DensityMatrix>> {
    let states = l.propagate_vec(&vectorize(rho0.matrix()), t_grid, tol)?;
    let check_tol = 10.0 * tol + 1e-12;
    states
        .into_iter()
        .map(|v| {
            let rho = DensityMatrix::from_matrix_unchecked(unvectorize(&v)?);
            rho.validate(check_tol)?;
            Ok(rho)
        })
        .collect()
}

/// Expectation value tr(Aρ).
pub fn expectation(rho: &DensityMatrix, a: &CMat) -> Result<C64> {
    if a.nrows() != rho.dim() || a.ncols() != rho.dim() {
        return Err(SimError::DimensionMismatch(format!(
            "observable is {}×{} but the state has dimension {}",
            a.nrows(),
            a.ncols(),
            rho.dim()
        )));
    }
    Ok(a.dot(rho.matrix()).diag().sum())
}
