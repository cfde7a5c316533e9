//! Reference computations that share no code path with the library's
//! eigensolver: a cyclic Jacobi eigenvalue iteration and a Gauss-Jordan
//! inverse used to build pseudoinverses component by component.
#![allow(dead_code, clippy::needless_range_loop)]

use kirchhoff_core::er::{sample_er, ErParams};
use kirchhoff_core::graph::{build_laplacian, is_connected, Graph};
use nalgebra::DMatrix;

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, ascending.
pub fn jacobi_eigenvalues(m: &DMatrix<f64>) -> Vec<f64> {
    let n = m.nrows();
    let mut a: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| m[(i, j)]).collect())
        .collect();
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j] * a[i][j])
            .sum();
        if off < 1e-30 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut vals: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    vals.sort_by(f64::total_cmp);
    vals
}

/// Inverse by Gauss-Jordan elimination with partial pivoting.
pub fn gauss_jordan_inverse(m: &DMatrix<f64>) -> DMatrix<f64> {
    let n = m.nrows();
    let mut a: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            let mut row: Vec<f64> = (0..n).map(|j| m[(i, j)]).collect();
            row.extend((0..n).map(|j| if i == j { 1.0 } else { 0.0 }));
            row
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&x, &y| a[x][col].abs().total_cmp(&a[y][col].abs()))
            .unwrap();
        a.swap(col, pivot);
        let d = a[col][col];
        assert!(d.abs() > 1e-12, "singular matrix");
        for v in a[col].iter_mut() {
            *v /= d;
        }
        for r in 0..n {
            if r != col {
                let f = a[r][col];
                if f != 0.0 {
                    for k in 0..2 * n {
                        a[r][k] -= f * a[col][k];
                    }
                }
            }
        }
    }
    DMatrix::from_fn(n, n, |i, j| a[i][n + j])
}

/// Pseudoinverse of a graph Laplacian assembled per component from
/// `(L_c + J/k)^{-1} - J/k`, where `k` is the component size.
pub fn oracle_pinv(g: &Graph) -> DMatrix<f64> {
    let n = g.node_count();
    let mut out = DMatrix::zeros(n, n);
    for comp in g.components() {
        let k = comp.len();
        let kf = k as f64;
        let mut sub = DMatrix::from_element(k, k, 1.0 / kf);
        for (a, &u) in comp.iter().enumerate() {
            for (b, &v) in comp.iter().enumerate() {
                if a == b {
                    sub[(a, a)] += g.degree(u) as f64;
                } else if g.has_edge(u, v) {
                    sub[(a, b)] -= 1.0;
                }
            }
        }
        let inv = gauss_jordan_inverse(&sub);
        for (a, &u) in comp.iter().enumerate() {
            for (b, &v) in comp.iter().enumerate() {
                out[(u, v)] = inv[(a, b)] - 1.0 / kf;
            }
        }
    }
    out
}

/// `trace(L^+)` from Jacobi eigenvalues, dropping those below `1e-9`.
pub fn oracle_trace_pinv(g: &Graph) -> f64 {
    jacobi_eigenvalues(&build_laplacian(g))
        .into_iter()
        .filter(|v| v.abs() > 1e-9)
        .map(|v| 1.0 / v)
        .sum()
}

/// Deterministic stream of ER graphs with `n` in `n_range` and `p` in
/// `p_range`, seeded from `master`.
pub fn random_graphs(
    master: u64,
    count: usize,
    n_range: (usize, usize),
    p_range: (f64, f64),
    connected_only: bool,
) -> Vec<Graph> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(master);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let n = rng.random_range(n_range.0..=n_range.1);
        let p = rng.random_range(p_range.0..p_range.1);
        let g = sample_er(&ErParams::new(n, p, rng.random()).unwrap());
        if !connected_only || is_connected(&g) {
            out.push(g);
        }
    }
    out
}

/// Every labelled graph on `n` nodes, one per subset of the `n(n-1)/2`
/// possible edges.
pub fn all_labelled_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    (0u64..1 << pairs.len()).map(move |mask| {
        Graph::from_edges(
            n,
            pairs
                .iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .map(|(_, e)| *e),
        )
        .unwrap()
    })
}

pub fn mean_and_sd(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

/// Arbitrary graph on `2..=max_n` nodes with edge density drawn per case.
pub fn arb_graph(max_n: usize) -> impl proptest::strategy::Strategy<Value = Graph> {
    use proptest::prelude::*;
    (2..=max_n, 0.0..1.0f64).prop_flat_map(|(n, density)| {
        let m = n * (n - 1) / 2;
        proptest::collection::vec(proptest::bool::weighted(density.clamp(0.01, 0.99)), m).prop_map(
            move |mask| {
                let pairs = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
                Graph::from_edges(n, pairs.zip(mask).filter(|(_, keep)| *keep).map(|(e, _)| e))
                    .unwrap()
            },
        )
    })
}
