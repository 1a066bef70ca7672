//! Perfect state transfer and periodicity on NEPS(P3, ..., P3; Ω).
//!
//! The structural layer works on the central 3×3 block of a transition
//! matrix. At τ_k every per-row factor of a constant-weight basis has central
//! block −I or −P, so the block of the whole product is (−1)^m·P^r, with
//! m = |Ω| and r the number of rows that are one in the last coordinate.
//! Coordinate j is handled by reading the block at (U_j, center, V_j), which
//! is what the last-coordinate block becomes after swapping coordinates j
//! and n.
//!
//! Every structural claim is paired with a numeric measurement so reports
//! can be checked rather than trusted.

use std::f64::consts::PI;

use nalgebra::{DMatrix, Scalar};
use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::gf2::{
    column_sum, min_weight_subset, parity_class, rank_gf2, Basis, BitVector, ParityClass,
};
use crate::graphs::{
    center_index, connected_components, kron, neps_adjacency, order_for, u_index, v_index,
    vertex_label, GraphError, RealMatrix,
};
use crate::spectral::{
    default_group_tol, eigendecompose, expm_oracle, factor_transition, max_abs_diff,
    product_transition, symmetry_residual, transition_column, transition_matrix,
    unitarity_residual, ComplexMatrix, SpectralError, Time,
};

/// Default tolerance on | |H[u,v]| − 1 |.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Tolerance for "λ/r is an odd integer".
pub const ODDNESS_TOL: f64 = 1e-8;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PstError {
    #[error("matrix order {0} is even; center and M3 need odd order")]
    EvenOrder(usize),
    #[error("matrix order {0} is below 3")]
    TooSmall(usize),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("rows of the basis do not share one weight")]
    NonUniformWeight,
    #[error("row weights mix even and odd values")]
    MixedParity,
    #[error("vertex index {index} out of range for order {order}")]
    IndexOutOfRange { index: usize, order: usize },
    #[error("eigenvalue {eigenvalue} gives lambda/r = {ratio}, which is not an odd integer")]
    EigenvalueNotOdd { eigenvalue: f64, ratio: f64 },
    #[error("scale r must be nonzero")]
    ZeroScale,
    #[error("scan supports n <= {max}, got n = {n}")]
    ScanTooLarge { n: usize, max: usize },
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// The 3×3 anti-diagonal permutation P.
pub fn flip_matrix() -> RealMatrix {
    RealMatrix::from_row_slice(3, 3, &[0., 0., 1., 0., 1., 0., 1., 0., 0.])
}

/// An exact 3×3 matrix of the form ±P^r, r ∈ {0, 1}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SignedFlip {
    pub negative: bool,
    pub flipped: bool,
}

impl SignedFlip {
    pub const IDENTITY: SignedFlip = SignedFlip {
        negative: false,
        flipped: false,
    };

    pub fn compose(self, other: SignedFlip) -> SignedFlip {
        SignedFlip {
            negative: self.negative ^ other.negative,
            flipped: self.flipped ^ other.flipped,
        }
    }

    pub fn sign(self) -> i32 {
        if self.negative {
            -1
        } else {
            1
        }
    }

    pub fn entries(self) -> [[i32; 3]; 3] {
        let s = self.sign();
        if self.flipped {
            [[0, 0, s], [0, s, 0], [s, 0, 0]]
        } else {
            [[s, 0, 0], [0, s, 0], [0, 0, s]]
        }
    }

    pub fn to_matrix(self) -> RealMatrix {
        let e = self.entries();
        RealMatrix::from_fn(3, 3, |i, j| e[i][j] as f64)
    }
}

fn check_odd_square<T: Scalar>(a: &DMatrix<T>) -> Result<usize, PstError> {
    let (rows, cols) = a.shape();
    if rows != cols {
        return Err(PstError::NotSquare { rows, cols });
    }
    if rows % 2 == 0 {
        return Err(PstError::EvenOrder(rows));
    }
    Ok(rows)
}

/// Middle entry of an odd-order square matrix.
pub fn center<T: Scalar + Copy>(a: &DMatrix<T>) -> Result<T, PstError> {
    let n = check_odd_square(a)?;
    Ok(a[(n / 2, n / 2)])
}

/// Central 3×3 principal submatrix of an odd-order matrix.
pub fn m3<T: Scalar + Copy>(a: &DMatrix<T>) -> Result<DMatrix<T>, PstError> {
    let n = check_odd_square(a)?;
    if n < 3 {
        return Err(PstError::TooSmall(n));
    }
    let c = n / 2;
    Ok(a.view((c - 1, c - 1), (3, 3)).into_owned())
}

/// Indices (U_j, center, V_j) in dictionary order.
pub fn coordinate_indices(n: usize, j: usize) -> Result<[usize; 3], PstError> {
    Ok([u_index(n, j)?, center_index(n), v_index(n, j)?])
}

/// The 3×3 principal block of `h` on (U_j, center, V_j). For j = n this is
/// exactly `m3(h)`.
pub fn coordinate_block(h: &ComplexMatrix, n: usize, j: usize) -> Result<ComplexMatrix, PstError> {
    let idx = coordinate_indices(n, j)?;
    let order = order_for(n)?;
    if h.shape() != (order, order) {
        return Err(PstError::NotSquare {
            rows: h.nrows(),
            cols: h.ncols(),
        });
    }
    Ok(ComplexMatrix::from_fn(3, 3, |r, c| h[(idx[r], idx[c])]))
}

/// −I or −P for a single row at τ_{s(β)}, by the row's last bit.
pub fn single_row_block(beta: &BitVector) -> SignedFlip {
    SignedFlip {
        negative: true,
        flipped: beta.last(),
    }
}

/// (−1)^m·P^r for coordinate `j` of a constant-weight basis at τ_k.
pub fn predict_m3(basis: &Basis, j: usize) -> Result<SignedFlip, PstError> {
    basis.uniform_weight().ok_or(PstError::NonUniformWeight)?;
    if j == 0 || j > basis.n() {
        return Err(GraphError::CoordinateOutOfRange { j, n: basis.n() }.into());
    }
    Ok(basis
        .iter()
        .map(|beta| single_row_block(&beta.swapped(j, basis.n())))
        .fold(SignedFlip::IDENTITY, SignedFlip::compose))
}

/// Result of testing one transition amplitude for unit modulus.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AmplitudeCheck {
    pub holds: bool,
    pub magnitude: f64,
    pub phase: f64,
}

/// Argument in (−π, π]; −1 reports as π whatever the sign of its zero
/// imaginary part.
pub fn phase_of(z: Complex64) -> f64 {
    let p = z.arg();
    if p <= -PI + 1e-12 {
        PI
    } else {
        p
    }
}

pub fn check_amplitude(z: Complex64, tol: f64) -> AmplitudeCheck {
    let magnitude = z.norm();
    AmplitudeCheck {
        holds: (magnitude - 1.0).abs() <= tol,
        magnitude,
        phase: phase_of(z),
    }
}

/// PST test between `u` and `v` (periodicity when `u == v`).
pub fn check_pst(
    h: &ComplexMatrix,
    u: usize,
    v: usize,
    tol: f64,
) -> Result<AmplitudeCheck, PstError> {
    let order = h.nrows();
    for index in [u, v] {
        if index >= order || index >= h.ncols() {
            return Err(PstError::IndexOutOfRange { index, order });
        }
    }
    Ok(check_amplitude(h[(u, v)], tol))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClaimKind {
    Pst,
    Periodic,
}

/// A predicted unit-modulus amplitude, with its measurement if one was made.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Claim {
    /// Coordinate, or `None` for the all-2 center vertex.
    pub j: Option<usize>,
    pub kind: ClaimKind,
    pub u: usize,
    pub v: usize,
    pub u_label: String,
    pub v_label: String,
    pub time: Time,
    /// Predicted phase of the amplitude: 0 or π.
    pub expected_phase: f64,
    pub magnitude: Option<f64>,
    pub phase: Option<f64>,
    pub verified: Option<bool>,
}

impl Claim {
    fn record(&mut self, z: Complex64, tol: f64) {
        let check = check_amplitude(z, tol);
        self.magnitude = Some(check.magnitude);
        self.phase = Some(check.phase);
        self.verified = Some(check.holds);
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Premise {
    pub name: &'static str,
    pub holds: bool,
    pub detail: String,
}

/// Predicted central block for one coordinate and its numeric distance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StructuralCheck {
    pub j: usize,
    pub m: usize,
    pub r: usize,
    pub prediction: [[i32; 3]; 3],
    pub numeric_residual: Option<f64>,
}

/// Amplitudes measured at a caller-chosen time.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Probe {
    pub j: Option<usize>,
    pub u: usize,
    pub v: usize,
    pub time: Time,
    pub magnitude: f64,
    pub phase: f64,
    pub unit: bool,
}

/// Extra data for a Kronecker product with a second graph.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KroneckerSection {
    pub g_order: usize,
    pub scale: f64,
    pub g_eigenvalues: Vec<f64>,
    pub g_connected: bool,
    pub g_bipartite: bool,
    pub product_components: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PstReport {
    pub n: usize,
    pub m: usize,
    pub rank: usize,
    pub connected: bool,
    pub parity: ParityClass,
    pub k: usize,
    pub omega_star: Vec<String>,
    pub column_sum: String,
    pub time: Time,
    pub numeric: bool,
    pub premises: Vec<Premise>,
    pub claims: Vec<Claim>,
    pub structural: Vec<StructuralCheck>,
    pub f8_residual: Option<f64>,
    pub probes: Vec<Probe>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kronecker: Option<KroneckerSection>,
}

impl PstReport {
    pub fn premises_hold(&self) -> bool {
        self.premises.iter().all(|p| p.holds)
    }

    pub fn premise(&self, name: &str) -> Option<&Premise> {
        self.premises.iter().find(|p| p.name == name)
    }

    /// False if any numeric measurement contradicts a claim.
    pub fn claims_verified(&self) -> bool {
        self.claims.iter().all(|c| c.verified != Some(false))
            && self
                .structural
                .iter()
                .all(|s| s.numeric_residual.is_none_or(|r| r <= STRUCTURAL_TOL))
            && self.f8_residual.is_none_or(|r| r <= STRUCTURAL_TOL)
    }

    pub fn pst_claims(&self) -> impl Iterator<Item = &Claim> {
        self.claims.iter().filter(|c| c.kind == ClaimKind::Pst)
    }

    pub fn periodic_claims(&self) -> impl Iterator<Item = &Claim> {
        self.claims.iter().filter(|c| c.kind == ClaimKind::Periodic)
    }

    /// Pretty JSON with keys sorted at every level.
    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("report serializes");
        serde_json::to_string_pretty(&value).expect("report serializes")
    }
}

/// Agreement required between predicted and measured blocks.
pub const STRUCTURAL_TOL: f64 = 1e-9;

/// Orders up to 3^5 get a full dense check of H_Ω(τ_k) = H_Ω*(τ_k); larger
/// ones are compared on the measured columns only.
const DENSE_F8_MAX_N: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CheckOptions {
    pub tol: f64,
    /// Measure claims numerically (3^n-long state vectors per column).
    pub numeric: bool,
    pub probe_time: Option<Time>,
}

impl Default for CheckOptions {
    fn default() -> Self {
        Self {
            tol: DEFAULT_TOL,
            numeric: true,
            probe_time: None,
        }
    }
}

fn label(index: usize, n: usize) -> String {
    vertex_label(index, n)
        .map(|l| l.to_string())
        .unwrap_or_default()
}

fn sign_phase(negative: bool) -> f64 {
    if negative {
        PI
    } else {
        0.0
    }
}

/// Claims that follow from the constant-weight rows `star` at τ_k.
fn predicted_claims(
    n: usize,
    star: &Basis,
    time: Time,
) -> Result<(Vec<Claim>, Vec<StructuralCheck>), PstError> {
    let sums = column_sum(star);
    let negative = star.len() % 2 == 1;
    let mut claims = Vec::new();
    let mut structural = Vec::new();
    let claim = |j: Option<usize>, kind, u: usize, v: usize| Claim {
        j,
        kind,
        u,
        v,
        u_label: label(u, n),
        v_label: label(v, n),
        time,
        expected_phase: sign_phase(negative),
        magnitude: None,
        phase: None,
        verified: None,
    };
    for j in 1..=n {
        let [u, _, v] = coordinate_indices(n, j)?;
        if sums.get(j) {
            claims.push(claim(Some(j), ClaimKind::Pst, u, v));
        } else {
            claims.push(claim(Some(j), ClaimKind::Periodic, u, u));
            claims.push(claim(Some(j), ClaimKind::Periodic, v, v));
        }
        let block = predict_m3(star, j)?;
        structural.push(StructuralCheck {
            j,
            m: star.len(),
            r: star.iter().filter(|b| b.get(j)).count(),
            prediction: block.entries(),
            numeric_residual: None,
        });
    }
    let c = center_index(n);
    claims.push(claim(None, ClaimKind::Periodic, c, c));
    Ok((claims, structural))
}

/// Columns of H_Ω(t) needed to measure every claim, keyed by index.
struct Columns {
    entries: Vec<(usize, Vec<Complex64>)>,
}

impl Columns {
    fn compute(basis: &Basis, time: Time) -> Result<Self, PstError> {
        let n = basis.n();
        let mut wanted = vec![center_index(n)];
        for j in 1..=n {
            wanted.push(u_index(n, j)?);
            wanted.push(v_index(n, j)?);
        }
        wanted.sort_unstable();
        let entries = wanted
            .into_iter()
            .map(|u| Ok((u, transition_column(basis, time, u)?)))
            .collect::<Result<_, PstError>>()?;
        Ok(Self { entries })
    }

    fn column(&self, u: usize) -> &[Complex64] {
        &self
            .entries
            .iter()
            .find(|(i, _)| *i == u)
            .expect("column was computed")
            .1
    }

    fn entry(&self, u: usize, v: usize) -> Complex64 {
        self.column(u)[v]
    }

    fn residual(&self, other: &Columns) -> f64 {
        self.entries
            .iter()
            .zip(&other.entries)
            .flat_map(|((_, a), (_, b))| a.iter().zip(b).map(|(x, y)| (x - y).norm()))
            .fold(0.0, f64::max)
    }
}

fn measure(
    basis: &Basis,
    time: Time,
    claims: &mut [Claim],
    structural: &mut [StructuralCheck],
    tol: f64,
) -> Result<Columns, PstError> {
    let n = basis.n();
    let cols = Columns::compute(basis, time)?;
    for claim in claims.iter_mut() {
        claim.record(cols.entry(claim.u, claim.v), tol);
    }
    for check in structural.iter_mut() {
        let idx = coordinate_indices(n, check.j)?;
        let mut worst: f64 = 0.0;
        for (r, &row) in idx.iter().enumerate() {
            for (c, &col) in idx.iter().enumerate() {
                let want = check.prediction[r][c] as f64;
                worst = worst.max((cols.entry(col, row) - want).norm());
            }
        }
        check.numeric_residual = Some(worst);
    }
    Ok(cols)
}

fn probes(basis: &Basis, time: Time, tol: f64) -> Result<Vec<Probe>, PstError> {
    let n = basis.n();
    let cols = Columns::compute(basis, time)?;
    let probe = |j: Option<usize>, u: usize, v: usize| {
        let check = check_amplitude(cols.entry(u, v), tol);
        Probe {
            j,
            u,
            v,
            time,
            magnitude: check.magnitude,
            phase: check.phase,
            unit: check.holds,
        }
    };
    let mut out = Vec::new();
    for j in 1..=n {
        let [u, _, v] = coordinate_indices(n, j)?;
        out.push(probe(Some(j), u, v));
        out.push(probe(Some(j), u, u));
        out.push(probe(Some(j), v, v));
    }
    let c = center_index(n);
    out.push(probe(None, c, c));
    Ok(out)
}

/// Dense ‖H_Ω(τ_k) − H_Ω*(τ_k)‖_max after checking both parity classes agree.
pub fn theorem_f8_reduce(basis: &Basis) -> Result<(Basis, f64), PstError> {
    if parity_class(basis) == ParityClass::Mixed {
        return Err(PstError::MixedParity);
    }
    let (k, star) = min_weight_subset(basis);
    if star == *basis {
        return Ok((star, 0.0));
    }
    let time = Time::tau(k as u32);
    let full = product_transition(basis, time)?;
    let reduced = product_transition(&star, time)?;
    Ok((star, max_abs_diff(&full, &reduced)))
}

/// Checks the connected-PST sufficient condition and, when parity is
/// uniform, the claims that follow at τ_k.
///
/// Never fails on a premise: failed premises are listed in the report.
pub fn sufficient_condition(basis: &Basis, opts: &CheckOptions) -> Result<PstReport, PstError> {
    let n = basis.n();
    let rank = rank_gf2(basis);
    let parity = parity_class(basis);
    let (k, star) = min_weight_subset(basis);
    let star_sum = column_sum(&star);
    let time = Time::tau(k as u32);

    let premises = vec![
        Premise {
            name: "full_rank",
            holds: rank == n,
            detail: format!("rank {rank} over GF(2), n = {n}"),
        },
        Premise {
            name: "uniform_parity",
            holds: parity.is_uniform(),
            detail: format!("row weights are {parity}"),
        },
        Premise {
            name: "star_sum_nonzero",
            holds: !star_sum.is_zero(),
            detail: format!("sum of the {} weight-{k} rows is {star_sum}", star.len()),
        },
    ];

    let mut report = PstReport {
        n,
        m: basis.len(),
        rank,
        connected: rank == n,
        parity,
        k,
        omega_star: star.iter().map(ToString::to_string).collect(),
        column_sum: star_sum.to_string(),
        time,
        numeric: false,
        premises,
        claims: Vec::new(),
        structural: Vec::new(),
        f8_residual: None,
        probes: Vec::new(),
        kronecker: None,
    };

    if parity.is_uniform() {
        let (mut claims, mut structural) = predicted_claims(n, &star, time)?;
        if opts.numeric {
            let cols = measure(basis, time, &mut claims, &mut structural, opts.tol)?;
            if star != *basis {
                report.f8_residual = Some(if n <= DENSE_F8_MAX_N {
                    theorem_f8_reduce(basis)?.1
                } else {
                    cols.residual(&Columns::compute(&star, time)?)
                });
            }
            report.numeric = true;
        }
        report.claims = claims;
        report.structural = structural;
    }
    if let (Some(t), true) = (opts.probe_time, opts.numeric) {
        report.probes = probes(basis, t, opts.tol)?;
        report.numeric = true;
    }
    Ok(report)
}

/// Classifies every coordinate of a constant-weight basis at τ_k: PST between
/// U_j and V_j when column j sums to one, periodic at both otherwise, and
/// periodic at the center vertex always.
pub fn theorem_f7_classify(basis: &Basis, opts: &CheckOptions) -> Result<PstReport, PstError> {
    basis.uniform_weight().ok_or(PstError::NonUniformWeight)?;
    sufficient_condition(basis, opts)
}

/// 2-colouring check by breadth-first search.
fn is_bipartite(adj: &RealMatrix) -> bool {
    let n = adj.nrows();
    let mut colour = vec![u8::MAX; n];
    let mut queue = std::collections::VecDeque::new();
    for s in 0..n {
        if colour[s] != u8::MAX {
            continue;
        }
        colour[s] = 0;
        queue.push_back(s);
        while let Some(x) = queue.pop_front() {
            for y in 0..n {
                if adj[(x, y)] == 0.0 {
                    continue;
                }
                if colour[y] == u8::MAX {
                    colour[y] = 1 - colour[x];
                    queue.push_back(y);
                } else if colour[y] == colour[x] {
                    return false;
                }
            }
        }
    }
    true
}

/// Largest Kronecker product order assembled densely by the f9 checker.
const F9_MAX_ORDER: usize = 2187;

/// PST on NEPS(P3, ..., P3; Ω) × G at τ_k / r, where every eigenvalue of G
/// divided by r must be an odd integer.
///
/// The product's transition matrix is assembled as Σ_s H_Ω(λ_s τ_k / r) ⊗ F_s
/// over G's spectrum and the lifted pairs ((U_j, w), (V_j, w)) are measured
/// for every vertex w of G.
pub fn theorem_f9_check(
    basis: &Basis,
    g: &RealMatrix,
    r: f64,
    opts: &CheckOptions,
) -> Result<PstReport, PstError> {
    if r == 0.0 || !r.is_finite() {
        return Err(PstError::ZeroScale);
    }
    let spec = eigendecompose(g, default_group_tol(g))?;
    for &lambda in spec.eigenvalues() {
        let ratio = lambda / r;
        let nearest = ratio.round();
        if (ratio - nearest).abs() > ODDNESS_TOL || (nearest as i64).rem_euclid(2) != 1 {
            return Err(PstError::EigenvalueNotOdd {
                eigenvalue: lambda,
                ratio,
            });
        }
    }

    let base = sufficient_condition(
        basis,
        &CheckOptions {
            numeric: false,
            ..*opts
        },
    )?;
    let n = basis.n();
    let g_order = g.nrows();
    let k = base.k;
    let lifted_time = Time::tau(k as u32).scale(1.0 / r);
    let mut report = base;
    report.time = lifted_time;
    report.premises.push(Premise {
        name: "odd_eigenvalue_ratios",
        holds: true,
        detail: format!("every eigenvalue of G over r = {r} is an odd integer"),
    });
    let g_components = connected_components(g)?;
    let order = order_for(n)? * g_order;
    let dense_ok = opts.numeric && order <= F9_MAX_ORDER;
    let product_components = if dense_ok {
        let a = neps_adjacency(basis)?;
        Some(connected_components(&kron(&a, g))?.count)
    } else {
        None
    };
    report.kronecker = Some(KroneckerSection {
        g_order,
        scale: r,
        g_eigenvalues: spec.eigenvalues().to_vec(),
        g_connected: g_components.count == 1,
        g_bipartite: is_bipartite(g),
        product_components,
    });

    let lift = |x: usize, w: usize| x * g_order + w;
    let base_pst: Vec<Claim> = report.pst_claims().cloned().collect();
    report.claims.clear();
    report.structural.clear();
    if !report.premises_hold() {
        return Ok(report);
    }

    let h = if dense_ok {
        let mut h = ComplexMatrix::zeros(order, order);
        for (lambda, f) in spec.iter() {
            let hs = product_transition(basis, Time::tau(k as u32).scale(lambda / r))?;
            h += hs.kronecker(&crate::spectral::to_complex(f));
        }
        report.numeric = true;
        Some(h)
    } else {
        None
    };

    for c in base_pst {
        for w in 0..g_order {
            let (u, v) = (lift(c.u, w), lift(c.v, w));
            let mut claim = Claim {
                u,
                v,
                u_label: format!("{}x{}", c.u_label, w + 1),
                v_label: format!("{}x{}", c.v_label, w + 1),
                time: lifted_time,
                ..c.clone()
            };
            if let Some(h) = &h {
                claim.record(h[(u, v)], opts.tol);
            }
            report.claims.push(claim);
        }
    }
    Ok(report)
}

/// One line of the cross-oracle suite.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckLine {
    pub name: String,
    pub residual: f64,
    pub tol: f64,
    pub pass: bool,
}

fn line(name: String, residual: f64, tol: f64) -> CheckLine {
    CheckLine {
        name,
        residual,
        tol,
        pass: residual <= tol,
    }
}

/// Runs every dense cross-check available for one basis: three transition
/// routes against each other, unitarity and symmetry, the single-row
/// central blocks, the (−1)^m P^r prediction and the minimum-weight
/// reduction.
pub fn verify_basis(basis: &Basis, extra_times: &[Time]) -> Result<Vec<CheckLine>, PstError> {
    let n = basis.n();
    let a = neps_adjacency(basis)?;
    let spec = eigendecompose(&a, default_group_tol(&a))?;
    let (k, _) = min_weight_subset(basis);
    let mut out = vec![line(
        "spectral projector algebra".into(),
        spec.projector_residual(),
        1e-10,
    )];

    let mut times = vec![Time::tau(k as u32)];
    times.extend_from_slice(extra_times);
    for &t in &times {
        let product = product_transition(basis, t)?;
        let spectral = transition_matrix(&spec, t);
        let series = expm_oracle(&a, t.value())?;
        out.push(line(
            format!("product vs spectral at {t}"),
            max_abs_diff(&product, &spectral),
            1e-9,
        ));
        out.push(line(
            format!("product vs series at {t}"),
            max_abs_diff(&product, &series),
            1e-9,
        ));
        out.push(line(
            format!("spectral vs series at {t}"),
            max_abs_diff(&spectral, &series),
            1e-9,
        ));
        for (name, h) in [
            ("product", &product),
            ("spectral", &spectral),
            ("series", &series),
        ] {
            out.push(line(
                format!("{name} unitarity at {t}"),
                unitarity_residual(h),
                1e-10,
            ));
            out.push(line(
                format!("{name} symmetry at {t}"),
                symmetry_residual(h),
                1e-10,
            ));
        }
    }

    for beta in basis.iter() {
        let tk = Time::tau(beta.weight() as u32);
        let h = factor_transition(beta, tk)?;
        let want = crate::spectral::to_complex(&single_row_block(beta).to_matrix());
        out.push(line(
            format!("row {beta} central block"),
            max_abs_diff(&m3(&h)?, &want),
            1e-10,
        ));
        let back = factor_transition(beta, tk.scale(-1.0))?;
        out.push(line(
            format!("row {beta} time reversal"),
            max_abs_diff(&h, &back),
            1e-10,
        ));
    }

    if basis.uniform_weight().is_some() {
        let h = product_transition(basis, Time::tau(k as u32))?;
        for j in 1..=n {
            let predicted = crate::spectral::to_complex(&predict_m3(basis, j)?.to_matrix());
            let block = coordinate_block(&h, n, j)?;
            out.push(line(
                format!("coordinate {j} predicted block"),
                max_abs_diff(&block, &predicted),
                STRUCTURAL_TOL,
            ));
        }
    }
    if parity_class(basis).is_uniform() {
        let (_, residual) = theorem_f8_reduce(basis)?;
        out.push(line(
            "minimum-weight reduction".into(),
            residual,
            STRUCTURAL_TOL,
        ));
    }
    Ok(out)
}

pub const SCAN_MAX_N: usize = 3;

/// One basis in the exhaustive small-n scan.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanRow {
    pub rows: Vec<String>,
    pub m: usize,
    pub rank: usize,
    pub connected: bool,
    pub parity: ParityClass,
    pub k: usize,
    pub premises_hold: bool,
    /// Unordered pairs u < v with unit-modulus amplitude at τ_k.
    pub pst_pairs: Vec<(usize, usize)>,
    /// Every predicted (U_j, V_j) pair was found numerically.
    pub predicted_confirmed: bool,
    /// Connected, PST found, yet the sufficient condition does not hold.
    pub missed: bool,
}

/// Enumerates every basis of GF(2)^n (optionally capped at `max_m` rows) and
/// brute-forces PST at τ_k, k the minimum row weight.
pub fn scan(n: usize, max_m: Option<usize>, tol: f64) -> Result<Vec<ScanRow>, PstError> {
    if n == 0 || n > SCAN_MAX_N {
        return Err(PstError::ScanTooLarge { n, max: SCAN_MAX_N });
    }
    let all = crate::gf2::nonzero_vectors(n)
        .map_err(|_| PstError::ScanTooLarge { n, max: SCAN_MAX_N })?;
    let cap = max_m.unwrap_or(all.len());
    let mut out = Vec::new();
    for mask in 1u64..(1 << all.len()) {
        if mask.count_ones() as usize > cap {
            continue;
        }
        let rows: Vec<_> = (0..all.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| all[i])
            .collect();
        let basis = Basis::new(n, rows).expect("distinct nonzero rows");
        let report = sufficient_condition(
            &basis,
            &CheckOptions {
                numeric: false,
                ..Default::default()
            },
        )?;
        let h = product_transition(&basis, Time::tau(report.k as u32))?;
        let order = h.nrows();
        let mut pairs = Vec::new();
        for u in 0..order {
            for v in u + 1..order {
                if ((h[(u, v)].norm()) - 1.0).abs() <= tol {
                    pairs.push((u, v));
                }
            }
        }
        let predicted_confirmed = report
            .pst_claims()
            .all(|c| pairs.contains(&(c.u.min(c.v), c.u.max(c.v))));
        let premises_hold = report.premises_hold();
        out.push(ScanRow {
            rows: basis.iter().map(ToString::to_string).collect(),
            m: basis.len(),
            rank: report.rank,
            connected: report.connected,
            parity: report.parity,
            k: report.k,
            premises_hold,
            missed: report.connected && !pairs.is_empty() && !premises_hold,
            pst_pairs: pairs,
            predicted_confirmed,
        });
    }
    Ok(out)
}
