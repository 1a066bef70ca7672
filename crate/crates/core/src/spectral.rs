//! Transition matrices H(t) = exp(−itA) for NEPS products of P3.
//!
//! Three independent routes are provided: the product of per-row factors
//! built from P3's closed-form projectors, the spectral sum over a
//! numerical eigendecomposition, and a scaling-and-squaring Taylor series.

use std::f64::consts::{FRAC_1_SQRT_2, PI, SQRT_2};
use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use serde::ser::{Serialize, SerializeMap, Serializer};
use thiserror::Error;

use crate::gf2::{Basis, BitVector};
use crate::graphs::{order_for, stride, GraphError, RealMatrix};

pub type ComplexMatrix = DMatrix<Complex64>;

const SYMMETRY_TOL: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpectralError {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not symmetric: max |A - A^T| = {0:e}")]
    NotSymmetric(f64),
    #[error("symmetric eigensolver did not converge")]
    NoConvergence,
    #[error("the zero tuple has no NEPS factor")]
    ZeroRow,
    #[error("|t|·||A|| = {0:e} exceeds the series oracle's scaling budget")]
    ScalingBudget(f64),
    #[error("vector length {found} does not match 3^n = {expected}")]
    VectorLength { expected: usize, found: usize },
    #[error("bad time {0:?}: expected tau:K or a decimal number")]
    BadTime(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A time value, kept as `factor·π/(√2)^k` for as long as possible.
///
/// Multiplying a τ time by √2 only decrements `k`, so the recursion over P3
/// factors reaches exactly `factor·π` without accumulating rounding.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Time {
    Tau { k: u32, factor: f64 },
    Real(f64),
}

impl Time {
    /// τ_k = π/(√2)^k.
    pub fn tau(k: u32) -> Self {
        Time::Tau { k, factor: 1.0 }
    }

    pub fn zero() -> Self {
        Time::Real(0.0)
    }

    pub fn value(self) -> f64 {
        match self {
            Time::Tau { k, factor } => {
                let base = PI / 2f64.powi((k / 2) as i32);
                let base = if k % 2 == 1 {
                    base * FRAC_1_SQRT_2
                } else {
                    base
                };
                factor * base
            }
            Time::Real(t) => t,
        }
    }

    pub fn scale(self, c: f64) -> Self {
        match self {
            Time::Tau { k, factor } => Time::Tau {
                k,
                factor: factor * c,
            },
            Time::Real(t) => Time::Real(t * c),
        }
    }

    pub fn times_sqrt2(self) -> Self {
        match self {
            Time::Tau { k: 0, factor } => Time::Tau {
                k: 0,
                factor: factor * SQRT_2,
            },
            Time::Tau { k, factor } => Time::Tau { k: k - 1, factor },
            Time::Real(t) => Time::Real(t * SQRT_2),
        }
    }

    fn times_sqrt2_pow(self, w: usize) -> Self {
        (0..w).fold(self, |t, _| t.times_sqrt2())
    }

    /// exp(−i·t).
    pub fn phase(self) -> Complex64 {
        match self {
            // even k: t/π = factor / 2^(k/2) exactly
            Time::Tau { k, factor } if k % 2 == 0 => cis_neg_pi(factor / 2f64.powi((k / 2) as i32)),
            other => {
                let v = other.value();
                Complex64::new(v.cos(), -v.sin())
            }
        }
    }
}

/// exp(−iπx), exact at multiples of ½.
fn cis_neg_pi(x: f64) -> Complex64 {
    let r = x.rem_euclid(2.0);
    if (2.0 * r).fract() == 0.0 {
        return match (2.0 * r) as u8 {
            0 | 4 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, -1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, 1.0),
        };
    }
    let v = PI * r;
    Complex64::new(v.cos(), -v.sin())
}

impl fmt::Display for Time {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Time::Tau { k, factor: 1.0 } => write!(f, "tau:{k}"),
            Time::Tau { k, factor } => write!(f, "{factor}*tau:{k}"),
            Time::Real(t) => write!(f, "{t}"),
        }
    }
}

impl FromStr for Time {
    type Err = SpectralError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if let Some(k) = s.strip_prefix("tau:") {
            return k
                .parse::<u32>()
                .map(Time::tau)
                .map_err(|_| SpectralError::BadTime(s.to_string()));
        }
        match s.parse::<f64>() {
            Ok(t) if t.is_finite() => Ok(Time::Real(t)),
            _ => Err(SpectralError::BadTime(s.to_string())),
        }
    }
}

impl Serialize for Time {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(None)?;
        if let Time::Tau { k, factor } = *self {
            if factor != 1.0 {
                map.serialize_entry("factor", &factor)?;
            }
            map.serialize_entry("tau_k", &k)?;
        }
        map.serialize_entry("value", &self.value())?;
        map.end()
    }
}

/// Distinct eigenvalues in ascending order with their orthogonal projectors.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    eigenvalues: Vec<f64>,
    projectors: Vec<RealMatrix>,
}

impl SpectralDecomposition {
    pub fn order(&self) -> usize {
        self.projectors[0].nrows()
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn projectors(&self) -> &[RealMatrix] {
        &self.projectors
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, &RealMatrix)> {
        self.eigenvalues.iter().copied().zip(self.projectors.iter())
    }

    /// Σ λ_r E_r.
    pub fn reconstruct(&self) -> RealMatrix {
        let n = self.order();
        self.iter()
            .fold(RealMatrix::zeros(n, n), |acc, (l, e)| acc + e * l)
    }

    /// Worst violation of E_r² = E_r, E_r E_s = 0 and Σ E_r = I.
    pub fn projector_residual(&self) -> f64 {
        let n = self.order();
        let mut worst = max_abs_real(
            &(self
                .projectors
                .iter()
                .fold(RealMatrix::zeros(n, n), |acc, e| acc + e)
                - RealMatrix::identity(n, n)),
        );
        for (r, er) in self.projectors.iter().enumerate() {
            for (s, es) in self.projectors.iter().enumerate() {
                let prod = er * es;
                let res = if r == s { prod - er } else { prod };
                worst = worst.max(max_abs_real(&res));
            }
        }
        worst
    }
}

fn max_abs_real(m: &RealMatrix) -> f64 {
    m.iter().fold(0.0, |acc, x| acc.max(x.abs()))
}

pub fn default_group_tol(a: &RealMatrix) -> f64 {
    1e-8 * (1.0 + max_abs_real(a))
}

fn check_symmetric(a: &RealMatrix) -> Result<(), SpectralError> {
    let (rows, cols) = a.shape();
    if rows != cols {
        return Err(SpectralError::NotSquare { rows, cols });
    }
    let asym = max_abs_real(&(a - a.transpose()));
    if asym > SYMMETRY_TOL {
        return Err(SpectralError::NotSymmetric(asym));
    }
    Ok(())
}

/// Full symmetric eigendecomposition with eigenvalues closer than
/// `group_tol` merged into one distinct eigenvalue (their mean).
pub fn eigendecompose(
    a: &RealMatrix,
    group_tol: f64,
) -> Result<SpectralDecomposition, SpectralError> {
    check_symmetric(a)?;
    let n = a.nrows();
    let eig = SymmetricEigen::try_new(a.clone(), f64::EPSILON, 100_000)
        .ok_or(SpectralError::NoConvergence)?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));

    let mut eigenvalues = Vec::new();
    let mut projectors = Vec::new();
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && eig.eigenvalues[order[end]] - eig.eigenvalues[order[end - 1]] <= group_tol
        {
            end += 1;
        }
        let cluster = &order[start..end];
        let mean = cluster.iter().map(|&i| eig.eigenvalues[i]).sum::<f64>() / cluster.len() as f64;
        let mut e = RealMatrix::zeros(n, n);
        for &i in cluster {
            let v = eig.eigenvectors.column(i);
            e += v * v.transpose();
        }
        eigenvalues.push(mean);
        projectors.push(e);
        start = end;
    }
    Ok(SpectralDecomposition {
        eigenvalues,
        projectors,
    })
}

/// Closed-form spectral data of P3: eigenvalues −√2, 0, √2.
pub fn p3_spectral() -> SpectralDecomposition {
    let h = SQRT_2 / 4.0;
    let e1 = RealMatrix::from_row_slice(3, 3, &[0.25, -h, 0.25, -h, 0.5, -h, 0.25, -h, 0.25]);
    let e2 = RealMatrix::from_row_slice(3, 3, &[0.5, 0., -0.5, 0., 0., 0., -0.5, 0., 0.5]);
    let e3 = RealMatrix::from_row_slice(3, 3, &[0.25, h, 0.25, h, 0.5, h, 0.25, h, 0.25]);
    SpectralDecomposition {
        eigenvalues: vec![-SQRT_2, 0.0, SQRT_2],
        projectors: vec![e1, e2, e3],
    }
}

pub fn to_complex(m: &RealMatrix) -> ComplexMatrix {
    m.map(|x| Complex64::new(x, 0.0))
}

/// H(t) = Σ exp(−itλ_r) E_r.
pub fn transition_matrix(spec: &SpectralDecomposition, time: Time) -> ComplexMatrix {
    let n = spec.order();
    let mut h = ComplexMatrix::zeros(n, n);
    for (lambda, e) in spec.iter() {
        let phase = time.scale(lambda).phase();
        h.zip_apply(e, |z, x| *z += phase * x);
    }
    h
}

/// Transition matrix of NEPS(P3, ..., P3; {β}).
///
/// Built coordinate by coordinate: a zero coordinate tensors on I₃, a one
/// coordinate expands over P3's projectors as
/// `H(−√2 t) ⊗ E₁ + I ⊗ E₂ + H(√2 t) ⊗ E₃`, and H(−s) is the conjugate of
/// H(s). The empty prefix is the 1×1 matrix exp(−it).
pub fn factor_transition(beta: &BitVector, time: Time) -> Result<ComplexMatrix, SpectralError> {
    if beta.is_zero() {
        return Err(SpectralError::ZeroRow);
    }
    order_for(beta.len())?;
    let p3 = p3_spectral();
    let [e1, e2, e3] = [0, 1, 2].map(|i| to_complex(&p3.projectors[i]));
    let i3 = ComplexMatrix::identity(3, 3);

    let mut h = ComplexMatrix::from_element(1, 1, time.times_sqrt2_pow(beta.weight()).phase());
    for bit in beta.iter() {
        h = if bit {
            let id = ComplexMatrix::identity(h.nrows(), h.ncols());
            h.conjugate().kronecker(&e1) + id.kronecker(&e2) + h.kronecker(&e3)
        } else {
            h.kronecker(&i3)
        };
    }
    Ok(h)
}

/// H_Ω(t) as the product of the per-row factors, left to right.
pub fn product_transition(basis: &Basis, time: Time) -> Result<ComplexMatrix, SpectralError> {
    let mut rows = basis.iter();
    let first = rows.next().expect("basis is nonempty");
    let mut h = factor_transition(first, time)?;
    for beta in rows {
        h = &h * factor_transition(beta, time)?;
    }
    Ok(h)
}

// columns are the P3 eigenvectors for −√2, 0, √2
fn p3_eigenvectors() -> [[f64; 3]; 3] {
    [
        [0.5, FRAC_1_SQRT_2, 0.5],
        [-FRAC_1_SQRT_2, 0.0, FRAC_1_SQRT_2],
        [0.5, -FRAC_1_SQRT_2, 0.5],
    ]
}

fn apply_on_coordinate(state: &mut [Complex64], n: usize, j: usize, m: &[[f64; 3]; 3]) {
    let s = stride(n, j);
    for base in (0..state.len()).step_by(3 * s) {
        for i in base..base + s {
            let x = [state[i], state[i + s], state[i + 2 * s]];
            for (r, row) in m.iter().enumerate() {
                state[i + r * s] = x[0] * row[0] + x[1] * row[1] + x[2] * row[2];
            }
        }
    }
}

/// Applies H_β(t) to a state vector in place without forming the matrix.
///
/// A_β is diagonal in the tensor basis of P3 eigenvectors on the support of
/// β, with eigenvalue Π μ over that support; any factor with μ = 0 kills the
/// product, otherwise it is ±(√2)^s(β).
pub fn apply_factor_transition(
    beta: &BitVector,
    time: Time,
    state: &mut [Complex64],
) -> Result<(), SpectralError> {
    if beta.is_zero() {
        return Err(SpectralError::ZeroRow);
    }
    let n = beta.len();
    let expected = order_for(n)?;
    if state.len() != expected {
        return Err(SpectralError::VectorLength {
            expected,
            found: state.len(),
        });
    }
    let q = p3_eigenvectors();
    let qt = [0, 1, 2].map(|r| [0, 1, 2].map(|c| q[c][r]));
    let support = beta.support();
    for &j in &support {
        apply_on_coordinate(state, n, j, &qt);
    }
    let plus = time.times_sqrt2_pow(support.len()).phase();
    let minus = plus.conj();
    let strides: Vec<usize> = support.iter().map(|&j| stride(n, j)).collect();
    for (idx, z) in state.iter_mut().enumerate() {
        let mut negatives = 0;
        let mut null = false;
        for &s in &strides {
            match (idx / s) % 3 {
                0 => negatives += 1,
                1 => {
                    null = true;
                    break;
                }
                _ => {}
            }
        }
        if !null {
            *z *= if negatives % 2 == 0 { plus } else { minus };
        }
    }
    for &j in &support {
        apply_on_coordinate(state, n, j, &q);
    }
    Ok(())
}

/// Applies H_Ω(t) = Π H_β(t) to a state vector in place.
pub fn apply_product_transition(
    basis: &Basis,
    time: Time,
    state: &mut [Complex64],
) -> Result<(), SpectralError> {
    for beta in basis.iter().rev() {
        apply_factor_transition(beta, time, state)?;
    }
    Ok(())
}

/// Column `u` of H_Ω(t), which is also row `u` since H_Ω(t) is symmetric.
pub fn transition_column(
    basis: &Basis,
    time: Time,
    u: usize,
) -> Result<Vec<Complex64>, SpectralError> {
    let order = order_for(basis.n())?;
    if u >= order {
        return Err(GraphError::IndexOutOfRange {
            index: u,
            n: basis.n(),
            order,
        }
        .into());
    }
    let mut state = vec![Complex64::new(0.0, 0.0); order];
    state[u] = Complex64::new(1.0, 0.0);
    apply_product_transition(basis, time, &mut state)?;
    Ok(state)
}

/// Largest ‖tA‖ the oracle will scale down before giving up.
const SERIES_SCALING_BUDGET: f64 = 1e12;

/// exp(−itA) by scaling and squaring on the truncated Taylor series.
///
/// Shares nothing with the eigen-based routes, which is the point: it is
/// only used to check them.
pub fn expm_oracle(a: &RealMatrix, t: f64) -> Result<ComplexMatrix, SpectralError> {
    check_symmetric(a)?;
    let n = a.nrows();
    let norm = a
        .row_iter()
        .map(|r| r.iter().map(|x| x.abs()).sum::<f64>())
        .fold(0.0, f64::max)
        * t.abs();
    if !norm.is_finite() || norm > SERIES_SCALING_BUDGET {
        return Err(SpectralError::ScalingBudget(norm));
    }
    let squarings = if norm > 0.5 {
        (norm / 0.5).log2().ceil() as i32
    } else {
        0
    };
    let scale = Complex64::new(0.0, -t / 2f64.powi(squarings));
    let c = a.map(|x| scale * x);

    let mut sum = ComplexMatrix::identity(n, n);
    let mut term = ComplexMatrix::identity(n, n);
    for k in 1..=40 {
        term = (&term * &c) / Complex64::new(k as f64, 0.0);
        sum += &term;
        if term.iter().all(|z| z.norm() < 1e-18) {
            break;
        }
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    Ok(sum)
}

pub fn max_abs_diff(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    assert_eq!(a.shape(), b.shape(), "shape mismatch");
    a.iter()
        .zip(b.iter())
        .fold(0.0, |acc, (x, y)| acc.max((x - y).norm()))
}

/// ‖H·conj(H)ᵀ − I‖_max.
pub fn unitarity_residual(h: &ComplexMatrix) -> f64 {
    let n = h.nrows();
    max_abs_diff(&(h * h.adjoint()), &ComplexMatrix::identity(n, n))
}

/// ‖H − Hᵀ‖_max.
pub fn symmetry_residual(h: &ComplexMatrix) -> f64 {
    max_abs_diff(h, &h.transpose())
}
