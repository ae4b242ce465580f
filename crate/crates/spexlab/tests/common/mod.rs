//! Helpers shared by the integration suites: seeded random graphs and an
//! independent dense eigensolver used as an oracle against the library's
//! power iteration.
//!
//! Each integration binary compiles this module separately and uses its own
//! subset of the helpers.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spexlab::spectra::MatrixKind;
use spexlab::Graph;

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Erdos-Renyi graph with edge probability `p`.
pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).expect("generated edges are in range")
}

/// Random connected graph: a random recursive tree plus `p`-density extras.
pub fn random_connected_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut edges = std::collections::BTreeSet::new();
    for v in 1..n {
        edges.insert((rng.random_range(0..v), v));
    }
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.random_bool(p) {
                edges.insert((u, v));
            }
        }
    }
    let edges: Vec<(usize, usize)> = edges.into_iter().collect();
    Graph::from_edges(n, &edges).expect("generated edges are in range")
}

/// Largest eigenvalue of the chosen matrix by cyclic Jacobi rotations on a
/// dense copy — an implementation with nothing in common with the library's
/// solver, so agreement is meaningful.
pub fn jacobi_spectral_radius(g: &Graph, kind: MatrixKind) -> f64 {
    let n = g.n();
    let (diag_coeff, off_coeff) = match kind {
        MatrixKind::Adjacency => (0.0, 1.0),
        MatrixKind::SignlessLaplacian => (1.0, 1.0),
        MatrixKind::Alpha(alpha) => (alpha, 1.0 - alpha),
    };
    let mut a = vec![vec![0.0f64; n]; n];
    for (v, &d) in g.degrees().iter().enumerate() {
        a[v][v] = diag_coeff * d as f64;
    }
    for (u, v) in g.edges() {
        a[u][v] = off_coeff;
        a[v][u] = off_coeff;
    }

    let scale: f64 = a
        .iter()
        .flatten()
        .map(|x| x * x)
        .sum::<f64>()
        .sqrt()
        .max(1.0);
    for _sweep in 0..200 {
        let mut off = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                off += a[p][q] * a[p][q];
            }
        }
        if off.sqrt() <= 1e-14 * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                if a[p][q] == 0.0 {
                    continue;
                }
                let tau = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
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
    (0..n).map(|v| a[v][v]).fold(0.0f64, f64::max)
}
