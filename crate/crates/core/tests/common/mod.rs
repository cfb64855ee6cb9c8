//! Reference computations that share no code with the library.

#![allow(dead_code)]

/// Largest root of `det(xI − A)` for a symmetric 3×3 matrix, by bisection on
/// the characteristic polynomial. A real-rooted cubic is above its largest
/// root exactly where `p`, `p′` and `p″` are all positive.
pub fn charpoly3_largest_root(a: [[f64; 3]; 3]) -> f64 {
    let tr = a[0][0] + a[1][1] + a[2][2];
    let minors = a[0][0] * a[1][1] - a[0][1] * a[1][0] + a[0][0] * a[2][2] - a[0][2] * a[2][0]
        + a[1][1] * a[2][2]
        - a[1][2] * a[2][1];
    let det = a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
        - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
        + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
    let p = |x: f64| ((x - tr) * x + minors) * x - det;
    let dp = |x: f64| (3.0 * x - 2.0 * tr) * x + minors;
    let ddp = |x: f64| 6.0 * x - 2.0 * tr;
    let above = |x: f64| p(x) > 0.0 && dp(x) > 0.0 && ddp(x) > 0.0;
    let bound = a.iter().flatten().map(|v| v.abs()).sum::<f64>() + 1.0;
    let (mut lo, mut hi) = (-bound, bound);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if above(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Number of eigenvalues of the symmetric matrix `a` strictly greater than
/// `x`, from the signs of the LDLᵀ pivots of `xI − a` (Sylvester inertia).
pub fn count_above(a: &[Vec<f64>], x: f64) -> usize {
    let n = a.len();
    let mut m: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { x - a[i][j] } else { -a[i][j] })
                .collect()
        })
        .collect();
    let scale = a.iter().flatten().map(|v| v.abs()).fold(1.0, f64::max);
    let mut negatives = 0;
    for k in 0..n {
        let mut pivot = m[k][k];
        if pivot == 0.0 {
            pivot = -f64::EPSILON * scale;
        }
        if pivot < 0.0 {
            negatives += 1;
        }
        for i in k + 1..n {
            let f = m[i][k] / pivot;
            for j in k + 1..n {
                m[i][j] -= f * m[k][j];
            }
        }
    }
    negatives
}

/// Largest eigenvalue of a symmetric matrix by inertia bisection.
pub fn inertia_largest_eigenvalue(a: &[Vec<f64>]) -> f64 {
    let bound = a
        .iter()
        .map(|row| row.iter().map(|v| v.abs()).sum::<f64>())
        .fold(0.0, f64::max)
        + 1.0;
    let (mut lo, mut hi) = (-bound, bound);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if count_above(a, mid) == 0 {
            hi = mid;
        } else {
            lo = mid;
        }
        if hi - lo <= 4.0 * f64::EPSILON * hi.abs().max(1.0) {
            break;
        }
    }
    0.5 * (lo + hi)
}

/// `N Nᵀ` in floating point.
pub fn gram_f64(n: &[Vec<u64>]) -> Vec<Vec<f64>> {
    n.iter()
        .map(|ri| {
            n.iter()
                .map(|rj| {
                    ri.iter()
                        .zip(rj)
                        .map(|(a, b)| (*a as f64) * (*b as f64))
                        .sum()
                })
                .collect()
        })
        .collect()
}

/// Larger root of `x² − (2 + μ)x + 1` by bisection on `[1, 2 + μ]`.
pub fn lambda_by_bisection(mu: f64) -> f64 {
    let t = 2.0 + mu;
    let q = |x: f64| x * x - t * x + 1.0;
    let (mut lo, mut hi) = (1.0, t);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if q(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Small deterministic generator (SplitMix64).
pub struct SplitMix(pub u64);

impl SplitMix {
    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    pub fn below(&mut self, n: u64) -> u64 {
        self.next_u64() % n
    }
}

/// Random connected bipartite intersection matrix with at most `max_dim`
/// rows and columns and labels in `1..=max_label`: a random spanning tree
/// of the bipartite graph plus random extra edges.
pub fn random_connected_matrix(rng: &mut SplitMix, max_dim: u64, max_label: u64) -> Vec<Vec<u64>> {
    let rows = 1 + rng.below(max_dim) as usize;
    let cols = 1 + rng.below(max_dim) as usize;
    let mut n = vec![vec![0u64; cols]; rows];
    let label = |rng: &mut SplitMix| 1 + rng.below(max_label);
    // vertices 0..rows are red, rows..rows+cols blue; attach each new vertex
    // to an earlier vertex of the other colour
    let mut order: Vec<usize> = (0..rows + cols).collect();
    for i in (1..order.len()).rev() {
        let j = rng.below(i as u64 + 1) as usize;
        order.swap(i, j);
    }
    let mut placed: Vec<usize> = vec![order[0]];
    let mut pending: Vec<usize> = order[1..].to_vec();
    while !pending.is_empty() {
        let pos = pending
            .iter()
            .position(|&v| placed.iter().any(|&u| (u < rows) != (v < rows)))
            .expect("both colours present");
        let v = pending.remove(pos);
        let partners: Vec<usize> = placed
            .iter()
            .copied()
            .filter(|&u| (u < rows) != (v < rows))
            .collect();
        let u = partners[rng.below(partners.len() as u64) as usize];
        let (r, c) = if v < rows {
            (v, u - rows)
        } else {
            (u, v - rows)
        };
        n[r][c] = label(rng);
        placed.push(v);
    }
    let extra = rng.below((rows * cols) as u64 + 1);
    for _ in 0..extra {
        let r = rng.below(rows as u64) as usize;
        let c = rng.below(cols as u64) as usize;
        n[r][c] = label(rng);
    }
    n
}
