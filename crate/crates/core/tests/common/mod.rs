//! Reference implementations used as oracles. None of these call into the
//! library's linear algebra.

#![allow(dead_code, clippy::needless_range_loop)]

use nalgebra::DMatrix;
use qdistill_core::{Complex64, ComplexMatrix, ComplexVector, DensityMatrix, PureState};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Eigenvalues of a Hermitian matrix, descending, by cyclic Jacobi rotations
/// on the real symmetric embedding `[[Re, -Im], [Im, Re]]`. Every eigenvalue of
/// the embedding appears twice; one copy of each pair is returned.
pub fn jacobi_eigenvalues(m: &ComplexMatrix) -> Vec<f64> {
    let n = m.nrows();
    let size = 2 * n;
    let mut a = vec![vec![0.0f64; size]; size];
    for i in 0..n {
        for j in 0..n {
            let z = (m[(i, j)] + m[(j, i)].conj()) * 0.5;
            a[i][j] = z.re;
            a[i + n][j + n] = z.re;
            a[i][j + n] = -z.im;
            a[i + n][j] = z.im;
        }
    }
    for _sweep in 0..100 {
        let off: f64 = (0..size)
            .flat_map(|i| (0..size).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j] * a[i][j])
            .sum();
        if off < 1e-30 {
            break;
        }
        for p in 0..size {
            for q in p + 1..size {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let cs = 1.0 / (t * t + 1.0).sqrt();
                let sn = t * cs;
                for k in 0..size {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = cs * akp - sn * akq;
                    a[k][q] = sn * akp + cs * akq;
                }
                for k in 0..size {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = cs * apk - sn * aqk;
                    a[q][k] = sn * apk + cs * aqk;
                }
            }
        }
    }
    let mut ev: Vec<f64> = (0..size).map(|i| a[i][i]).collect();
    ev.sort_by(|x, y| y.total_cmp(x));
    ev.into_iter().step_by(2).collect()
}

/// Rank by the same relative cutoff rule, applied to oracle eigenvalues.
pub fn oracle_rank(m: &ComplexMatrix, rank_tol: f64) -> usize {
    let ev = jacobi_eigenvalues(m);
    let max = ev.first().copied().unwrap_or(0.0);
    if max <= 0.0 {
        return 0;
    }
    ev.iter().filter(|&&l| l > rank_tol * max).count()
}

/// Schmidt rank by singular values of the reshaped coefficient matrix. The
/// cutoff is the square root of the eigenvalue cutoff since `s_i^2 = lambda_i`.
pub fn svd_schmidt_rank(v: &ComplexVector, d0: usize, d1: usize, rank_tol: f64) -> usize {
    let m = DMatrix::from_fn(d0, d1, |i, j| v[i * d1 + j]);
    let s = m.svd(false, false).singular_values;
    let max = s.max();
    s.iter().filter(|&&x| x > rank_tol.sqrt() * max).count()
}

/// Partial trace by explicit index sums over multi-indices.
pub fn index_sum_partial_trace(m: &ComplexMatrix, dims: &[usize], keep: &[usize]) -> ComplexMatrix {
    let n: usize = dims.iter().product();
    let kept_dim: usize = keep.iter().map(|&k| dims[k]).product();
    let digits = |mut idx: usize| {
        let mut d = vec![0; dims.len()];
        for k in (0..dims.len()).rev() {
            d[k] = idx % dims[k];
            idx /= dims[k];
        }
        d
    };
    let kept_index = |d: &[usize]| keep.iter().fold(0, |acc, &k| acc * dims[k] + d[k]);
    let mut out = ComplexMatrix::zeros(kept_dim, kept_dim);
    for i in 0..n {
        let di = digits(i);
        for j in 0..n {
            let dj = digits(j);
            let traced_equal = (0..dims.len())
                .filter(|k| !keep.contains(k))
                .all(|k| di[k] == dj[k]);
            if traced_equal {
                out[(kept_index(&di), kept_index(&dj))] += m[(i, j)];
            }
        }
    }
    out
}

/// Partial transpose of the second factor of a bipartite matrix, entrywise.
pub fn entrywise_partial_transpose(m: &ComplexMatrix, da: usize, db: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(da * db, da * db, |r, s| {
        let (a, b) = (r / db, r % db);
        let (a2, b2) = (s / db, s % db);
        m[(a * db + b2, a2 * db + b)]
    })
}

/// Swap operator on `C^d ⊗ C^d`.
pub fn swap(d: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(d * d, d * d, |r, s| {
        if r == (s % d) * d + s / d {
            c(1.0)
        } else {
            c(0.0)
        }
    })
}

pub fn bell() -> PureState {
    let h = 0.5f64.sqrt();
    PureState::new(
        vec![2, 2],
        ComplexVector::from_vec(vec![c(h), c(0.0), c(0.0), c(h)]),
    )
    .unwrap()
}

pub fn ghz_amplitudes() -> ComplexVector {
    let h = 0.5f64.sqrt();
    let mut v = ComplexVector::zeros(8);
    v[0] = c(h);
    v[7] = c(h);
    v
}

/// Random full-or-low-rank bipartite state from a seeded generator that is
/// independent of the library's sampler: `G G^dagger / Tr` for a Gaussian-ish
/// `n x k` matrix with uniform entries.
pub fn random_state(da: usize, db: usize, k: usize, seed: u64) -> DensityMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = da * db;
    let g = ComplexMatrix::from_fn(n, k, |_, _| {
        Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
    });
    let m = &g * g.adjoint();
    let tr = m.trace().re;
    DensityMatrix::new(vec![da, db], m / c(tr)).unwrap()
}

pub fn random_unit_vector(d: usize, seed: u64) -> ComplexVector {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let v = ComplexVector::from_fn(d, |_, _| {
        Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
    });
    let n = v.norm();
    v / c(n)
}
