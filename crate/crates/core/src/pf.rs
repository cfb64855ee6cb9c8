//! Integer matrix engine for Thurston's construction.
//!
//! An [`IntersectionMatrix`] `N` records geometric intersection numbers
//! between the components of two multicurves. The Gram matrix `N Nᵀ` is
//! formed in exact 128-bit arithmetic and its Perron–Frobenius eigenvalue
//! `μ` is bracketed by Collatz–Wielandt quotients of a positive iterate.
//! The image of `T_A T_B⁻¹` in `PSL(2, R)` has trace `2 + μ`, which fixes
//! the spectral radius in closed form.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Default bracket width for [`pf_eigenvalue`].
pub const DEFAULT_TOLERANCE: f64 = 1e-10;

/// Iteration cap shared by both iteration schemes.
pub const MAX_ITERATIONS: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PfError {
    #[error("matrix has no rows or no columns")]
    Empty,
    #[error("expected {expected} entries, found {found}")]
    Shape { expected: usize, found: usize },
    #[error("row {0} of the intersection matrix is zero")]
    ZeroRow(usize),
    #[error("column {0} of the intersection matrix is zero")]
    ZeroColumn(usize),
    #[error(
        "matrix is reducible; a Collatz-Wielandt bracket does not certify its spectral radius"
    )]
    Reducible,
    #[error("tolerance must be positive and finite, got {0}")]
    Tolerance(f64),
    #[error("no convergence after {iterations} iterations; last bracket [{}, {}]", .last.lower, .last.upper)]
    NotConverged { last: PfBracket, iterations: usize },
    #[error("mu must be positive and finite for a hyperbolic representation, got {0}")]
    NonHyperbolic(f64),
    #[error("intersection number must be at least 1")]
    ZeroIntersection,
}

/// Nonnegative integer matrix of intersection numbers `N[i][j] = i(α_i, β_j)`.
///
/// Construction rejects all-zero rows and columns: every curve must meet
/// the opposite multicurve.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<u64>,
}

impl IntersectionMatrix {
    /// Builds a matrix from row-major entries.
    pub fn new(rows: usize, cols: usize, entries: Vec<u64>) -> Result<Self, PfError> {
        if rows == 0 || cols == 0 {
            return Err(PfError::Empty);
        }
        if entries.len() != rows * cols {
            return Err(PfError::Shape {
                expected: rows * cols,
                found: entries.len(),
            });
        }
        for i in 0..rows {
            if entries[i * cols..(i + 1) * cols].iter().all(|&x| x == 0) {
                return Err(PfError::ZeroRow(i));
            }
        }
        for j in 0..cols {
            if (0..rows).all(|i| entries[i * cols + j] == 0) {
                return Err(PfError::ZeroColumn(j));
            }
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    pub fn from_rows(rows: &[Vec<u64>]) -> Result<Self, PfError> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            if row.len() != cols {
                return Err(PfError::Shape {
                    expected: rows.len() * cols,
                    found: rows.iter().map(Vec::len).sum(),
                });
            }
            entries.extend_from_slice(row);
        }
        Self::new(rows.len(), cols, entries)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<u64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// `N Nᵀ`, see [`gram`].
    pub fn gram(&self) -> SquareMatrix {
        gram(self)
    }
}

/// Square nonnegative integer matrix with 128-bit entries.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SquareMatrix {
    dim: usize,
    entries: Vec<u128>,
}

impl SquareMatrix {
    pub fn new(dim: usize, entries: Vec<u128>) -> Result<Self, PfError> {
        if dim == 0 {
            return Err(PfError::Empty);
        }
        if entries.len() != dim * dim {
            return Err(PfError::Shape {
                expected: dim * dim,
                found: entries.len(),
            });
        }
        Ok(Self { dim, entries })
    }

    pub fn from_rows(rows: &[Vec<u128>]) -> Result<Self, PfError> {
        let dim = rows.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(PfError::Shape {
                    expected: dim * dim,
                    found: rows.iter().map(Vec::len).sum(),
                });
            }
            entries.extend_from_slice(row);
        }
        Self::new(dim, entries)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> u128 {
        self.entries[i * self.dim + j]
    }

    pub fn row(&self, i: usize) -> &[u128] {
        &self.entries[i * self.dim..(i + 1) * self.dim]
    }

    pub fn to_rows(&self) -> Vec<Vec<u128>> {
        (0..self.dim).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.dim).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn row_sums(&self) -> Vec<u128> {
        (0..self.dim).map(|i| self.row(i).iter().sum()).collect()
    }

    pub fn max_row_sum(&self) -> u128 {
        self.row_sums().into_iter().max().unwrap_or(0)
    }

    pub fn min_row_sum(&self) -> u128 {
        self.row_sums().into_iter().min().unwrap_or(0)
    }

    /// Strong connectivity of the directed support graph.
    pub fn is_irreducible(&self) -> bool {
        if self.dim == 1 {
            return true;
        }
        let forward = self.reaches_all(|i, j| self.get(i, j) != 0);
        forward && self.reaches_all(|i, j| self.get(j, i) != 0)
    }

    fn reaches_all(&self, edge: impl Fn(usize, usize) -> bool) -> bool {
        let mut seen = vec![false; self.dim];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            for j in 0..self.dim {
                if !seen[j] && edge(i, j) {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    fn to_f64(&self) -> Vec<f64> {
        self.entries.iter().map(|&x| x as f64).collect()
    }
}

/// `N Nᵀ` in exact integer arithmetic.
///
/// Entry `(i, j)` is the sum over blue curves `b` of `N[i][b] · N[j][b]`,
/// the total weight of length-two paths from red vertex `i` to red vertex
/// `j` in the intersection graph.
pub fn gram(n: &IntersectionMatrix) -> SquareMatrix {
    let dim = n.rows();
    let mut entries = vec![0u128; dim * dim];
    for i in 0..dim {
        for j in i..dim {
            let s: u128 = n
                .row(i)
                .iter()
                .zip(n.row(j))
                .map(|(&a, &b)| a as u128 * b as u128)
                .sum();
            entries[i * dim + j] = s;
            entries[j * dim + i] = s;
        }
    }
    SquareMatrix { dim, entries }
}

pub fn max_row_sum(m: &SquareMatrix) -> u128 {
    m.max_row_sum()
}

/// Certified enclosure of a Perron–Frobenius eigenvalue.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PfBracket {
    pub lower: f64,
    pub upper: f64,
    pub iterations: usize,
    /// Width actually enforced; never below the attainable double precision
    /// resolution at the scale of `upper`.
    pub tolerance: f64,
}

impl PfBracket {
    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lower + self.upper)
    }

    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lower <= x && x <= self.upper
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PfMethod {
    /// Shifted inverse iteration with the shift set to the current upper
    /// Collatz–Wielandt quotient (Noda iteration). Falls back to a power
    /// step whenever the solve does not return a positive vector.
    ShiftInvert,
    /// Plain power iteration on `M + I`.
    Power,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PfOptions {
    pub tolerance: f64,
    pub max_iterations: usize,
    pub method: PfMethod,
}

impl Default for PfOptions {
    fn default() -> Self {
        Self {
            tolerance: DEFAULT_TOLERANCE,
            max_iterations: MAX_ITERATIONS,
            method: PfMethod::ShiftInvert,
        }
    }
}

/// Bracket together with the positive iterate that certifies it.
#[derive(Debug, Clone, PartialEq)]
pub struct PfSolution {
    pub bracket: PfBracket,
    pub vector: Vec<f64>,
}

impl PfSolution {
    /// `‖M v − μ̂ v‖∞` at the bracket midpoint.
    pub fn residual(&self, m: &SquareMatrix) -> f64 {
        let mu = self.bracket.midpoint();
        let a = m.to_f64();
        let w = mat_vec(&a, m.dim(), &self.vector);
        w.iter()
            .zip(&self.vector)
            .map(|(wi, vi)| (wi - mu * vi).abs())
            .fold(0.0, f64::max)
    }
}

/// Bracket for the Perron–Frobenius eigenvalue of an irreducible
/// nonnegative matrix, using the default iteration scheme.
pub fn pf_eigenvalue(m: &SquareMatrix, tolerance: f64) -> Result<PfBracket, PfError> {
    pf_solve(
        m,
        &PfOptions {
            tolerance,
            ..PfOptions::default()
        },
    )
    .map(|s| s.bracket)
}

/// Iterates a positive vector `v` and brackets the spectral radius by
/// `min_i (Mv)_i / v_i ≤ ρ ≤ max_i (Mv)_i / v_i`, intersected with the
/// row-sum bounds. Endpoints are widened outward by a rounding margin.
pub fn pf_solve(m: &SquareMatrix, options: &PfOptions) -> Result<PfSolution, PfError> {
    if !(options.tolerance > 0.0 && options.tolerance.is_finite()) {
        return Err(PfError::Tolerance(options.tolerance));
    }
    if !m.is_irreducible() {
        return Err(PfError::Reducible);
    }
    let dim = m.dim();
    let a = m.to_f64();
    let margin_factor = (dim as f64 + 2.0) * f64::EPSILON;
    let floor_factor = 64.0 * margin_factor;

    let mut lower = m.min_row_sum() as f64;
    let mut upper = m.max_row_sum() as f64;
    let mut v = vec![1.0; dim];
    let mut iterations = 0;

    loop {
        let w = mat_vec(&a, dim, &v);
        let (lo, hi) = quotient_range(&w, &v);
        let margin = margin_factor * hi.abs();
        lower = lower.max(lo - margin);
        upper = upper.min(hi + margin);
        let tolerance = options.tolerance.max(floor_factor * upper.abs().max(1.0));
        let bracket = PfBracket {
            lower,
            upper,
            iterations,
            tolerance,
        };
        if upper - lower <= tolerance {
            return Ok(PfSolution { bracket, vector: v });
        }
        if iterations >= options.max_iterations {
            return Err(PfError::NotConverged {
                last: bracket,
                iterations,
            });
        }
        iterations += 1;

        let next = match options.method {
            PfMethod::ShiftInvert => solve_shifted(&a, dim, upper, &v).filter(|y| is_positive(y)),
            PfMethod::Power => None,
        };
        v = match next {
            Some(y) => y,
            None => w.iter().zip(&v).map(|(wi, vi)| wi + vi).collect(),
        };
        normalize_max(&mut v);
    }
}

fn mat_vec(a: &[f64], dim: usize, v: &[f64]) -> Vec<f64> {
    a.chunks_exact(dim)
        .map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum())
        .collect()
}

fn quotient_range(w: &[f64], v: &[f64]) -> (f64, f64) {
    w.iter()
        .zip(v)
        .map(|(wi, vi)| wi / vi)
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), q| {
            (lo.min(q), hi.max(q))
        })
}

fn is_positive(v: &[f64]) -> bool {
    v.iter().all(|&x| x > 0.0 && x.is_finite())
}

fn normalize_max(v: &mut [f64]) {
    let max = v.iter().copied().fold(0.0, f64::max);
    if max > 0.0 {
        v.iter_mut().for_each(|x| *x /= max);
    }
}

/// Solves `(shift·I − A) y = rhs` by Gaussian elimination with partial pivoting.
fn solve_shifted(a: &[f64], dim: usize, shift: f64, rhs: &[f64]) -> Option<Vec<f64>> {
    let mut lu: Vec<f64> = a.iter().map(|x| -x).collect();
    for i in 0..dim {
        lu[i * dim + i] += shift;
    }
    let mut b = rhs.to_vec();
    for k in 0..dim {
        let pivot =
            (k..dim).max_by(|&i, &j| lu[i * dim + k].abs().total_cmp(&lu[j * dim + k].abs()))?;
        if lu[pivot * dim + k] == 0.0 {
            return None;
        }
        if pivot != k {
            for j in 0..dim {
                lu.swap(k * dim + j, pivot * dim + j);
            }
            b.swap(k, pivot);
        }
        let d = lu[k * dim + k];
        for i in k + 1..dim {
            let f = lu[i * dim + k] / d;
            if f != 0.0 {
                for j in k..dim {
                    lu[i * dim + j] -= f * lu[k * dim + j];
                }
                b[i] -= f * b[k];
            }
        }
    }
    let mut y = vec![0.0; dim];
    for k in (0..dim).rev() {
        let s: f64 = (k + 1..dim).map(|j| lu[k * dim + j] * y[j]).sum();
        y[k] = (b[k] - s) / lu[k * dim + k];
    }
    Some(y)
}

/// Spectral data of `ρ(T_A T_B⁻¹)` for a given `μ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DilatationEstimate {
    pub mu: f64,
    /// `2 + μ`
    pub trace: f64,
    /// Spectral radius, the larger root of `x² − (2 + μ)x + 1`.
    pub lambda: f64,
    /// `log λ` in nats.
    pub entropy: f64,
}

/// Closed-form spectral radius of the hyperbolic matrix with trace `2 + μ`.
pub fn dilatation_from_mu(mu: f64) -> Result<DilatationEstimate, PfError> {
    if !(mu > 0.0 && mu.is_finite()) {
        return Err(PfError::NonHyperbolic(mu));
    }
    let trace = 2.0 + mu;
    let root = (trace + (mu * (mu + 4.0)).sqrt()) / 2.0;
    // one fixed-point step of λ = t − 1/λ tightens λ + 1/λ = t
    let lambda = trace - 1.0 / root;
    Ok(DilatationEstimate {
        mu,
        trace,
        lambda,
        entropy: lambda.ln(),
    })
}

/// A single filling pair `{α, β}` has `μ = i(α, β)²`.
pub fn dilatation_of_filling_pair(intersection: u64) -> Result<DilatationEstimate, PfError> {
    if intersection == 0 {
        return Err(PfError::ZeroIntersection);
    }
    dilatation_from_mu((intersection as f64).powi(2))
}
