//! Numeric eigenvalues: the Perron root by power iteration, the full
//! spectrum by cyclic Jacobi rotations, and the graph-level quantities
//! built on them.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exmatrix::FloatSymMatrix;
use crate::graph::Graph;

pub const DEFAULT_TOL: f64 = 1e-12;
pub const DEFAULT_MAX_ITER: usize = 100_000;
const JACOBI_MAX_SWEEPS: usize = 100;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpectralOptions {
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for SpectralOptions {
    fn default() -> Self {
        SpectralOptions {
            tol: DEFAULT_TOL,
            max_iter: DEFAULT_MAX_ITER,
        }
    }
}

/// Largest eigenvalue with its unit Perron vector.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectralResult {
    pub value: f64,
    pub vector: Vec<f64>,
    pub iterations: usize,
    /// `max_i |(M x - value x)_i|`.
    pub residual: f64,
}

/// All eigenvalues, in descending order.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
}

impl Spectrum {
    pub fn largest(&self) -> f64 {
        self.eigenvalues.first().copied().unwrap_or(0.0)
    }

    pub fn energy(&self) -> f64 {
        self.eigenvalues.iter().map(|l| l.abs()).sum()
    }
}

fn normalize(v: &mut [f64]) -> f64 {
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm > 0.0 {
        v.iter_mut().for_each(|x| *x /= norm);
    }
    norm
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Spectral radius of a symmetric nonnegative matrix.
///
/// Plain power iteration stalls on bipartite graphs, whose spectrum
/// contains `-value` as well as `value`, so the iteration runs on `M^2`
/// from the all-ones vector. With `y` the current iterate and `z = M y`,
/// the combination `y + z / sqrt(y' M^2 y)` cancels the `-value`
/// component and gives the Perron vector. Converged once the residual is
/// at most `tol * max(1, value)`.
pub fn spectral_radius(m: &FloatSymMatrix, tol: f64, max_iter: usize) -> Result<SpectralResult> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidArgument(format!("tolerance must be positive, got {tol}")));
    }
    let n = m.order();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let mut y = vec![1.0 / (n as f64).sqrt(); n];
    let mut z = vec![0.0; n];
    let mut w = vec![0.0; n];
    let mut x = vec![0.0; n];
    let mut mx = vec![0.0; n];
    let mut best = (0.0, y.clone(), f64::INFINITY);

    for iteration in 1..=max_iter {
        m.mul_vec(&y, &mut z);
        let root = dot(&z, &z).sqrt();
        if root == 0.0 {
            return Ok(SpectralResult {
                value: 0.0,
                vector: y,
                iterations: iteration,
                residual: 0.0,
            });
        }
        for i in 0..n {
            x[i] = y[i] + z[i] / root;
        }
        normalize(&mut x);
        m.mul_vec(&x, &mut mx);
        let value = dot(&x, &mx);
        let residual = mx
            .iter()
            .zip(&x)
            .map(|(a, b)| (a - value * b).abs())
            .fold(0.0, f64::max);
        if residual < best.2 {
            best = (value, x.clone(), residual);
        }
        if residual <= tol * value.abs().max(1.0) {
            return Ok(SpectralResult {
                value,
                vector: x,
                iterations: iteration,
                residual,
            });
        }
        m.mul_vec(&z, &mut w);
        normalize(&mut w);
        std::mem::swap(&mut y, &mut w);
    }
    Err(Error::NonConvergence {
        value: best.0,
        vector: best.1,
        iterations: max_iter,
        residual: best.2,
    })
}

/// All eigenvalues by cyclic Jacobi sweeps, run until the off-diagonal
/// Frobenius norm drops below `tol`.
pub fn full_spectrum(m: &FloatSymMatrix, tol: f64) -> Result<Spectrum> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidArgument(format!("tolerance must be positive, got {tol}")));
    }
    let n = m.order();
    let mut a: Vec<f64> = m.entries().to_vec();
    let at = |i: usize, j: usize| i * n + j;

    for _ in 0..JACOBI_MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[at(i, j)] * a[at(i, j)])
            .sum::<f64>()
            .sqrt();
        if off < tol {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[at(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[at(q, q)] - a[at(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[at(k, p)];
                    let akq = a[at(k, q)];
                    a[at(k, p)] = c * akp - s * akq;
                    a[at(k, q)] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[at(p, k)];
                    let aqk = a[at(q, k)];
                    a[at(p, k)] = c * apk - s * aqk;
                    a[at(q, k)] = s * apk + c * aqk;
                }
                a[at(p, q)] = 0.0;
                a[at(q, p)] = 0.0;
            }
        }
    }
    let mut eigenvalues: Vec<f64> = (0..n).map(|i| a[at(i, i)]).collect();
    eigenvalues.sort_by(|x, y| y.total_cmp(x));
    Ok(Spectrum { eigenvalues })
}

pub fn eta1_with(g: &Graph, opts: &SpectralOptions) -> Result<SpectralResult> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let m = FloatSymMatrix::extended_adjacency(g)?;
    spectral_radius(&m, opts.tol, opts.max_iter)
}

pub fn lambda1_with(g: &Graph, opts: &SpectralOptions) -> Result<SpectralResult> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    spectral_radius(&FloatSymMatrix::adjacency(g), opts.tol, opts.max_iter)
}

/// Extended spectral radius of a connected graph.
pub fn eta1(g: &Graph) -> Result<f64> {
    eta1_with(g, &SpectralOptions::default()).map(|r| r.value)
}

/// Ordinary spectral radius of a connected graph.
pub fn lambda1(g: &Graph) -> Result<f64> {
    lambda1_with(g, &SpectralOptions::default()).map(|r| r.value)
}

/// Sum of absolute eigenvalues of the extended adjacency matrix.
pub fn extended_energy_with(g: &Graph, tol: f64) -> Result<f64> {
    let m = FloatSymMatrix::extended_adjacency(g)?;
    Ok(full_spectrum(&m, tol)?.energy())
}

pub fn extended_energy(g: &Graph) -> Result<f64> {
    extended_energy_with(g, DEFAULT_TOL)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exmatrix;
    use crate::family::Family;

    fn fam(s: &str) -> Graph {
        s.parse::<Family>().unwrap().build().unwrap()
    }

    fn close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b}");
    }

    #[test]
    fn perron_roots() {
        let c9 = FloatSymMatrix::extended_adjacency(&fam("C:9")).unwrap();
        close(spectral_radius(&c9, 1e-12, 100_000).unwrap().value, 2.0, 1e-10);
        let s10 = FloatSymMatrix::adjacency(&fam("S:10"));
        close(spectral_radius(&s10, 1e-12, 100_000).unwrap().value, 3.0, 1e-10);
        let p3 = FloatSymMatrix::extended_adjacency(&fam("P:3")).unwrap();
        close(spectral_radius(&p3, 1e-12, 100_000).unwrap().value, (25.0f64 / 8.0).sqrt(), 1e-10);
    }

    #[test]
    fn bipartite_start_vector_does_not_stall() {
        // plain power iteration from all-ones has a nonzero component along
        // the -sqrt(3) eigenvector of the star S_4
        let s4 = FloatSymMatrix::adjacency(&fam("S:4"));
        let r = spectral_radius(&s4, 1e-12, 1000).unwrap();
        close(r.value, 3f64.sqrt(), 1e-12);
        assert!(r.vector.iter().all(|&v| v > 0.0));
    }

    #[test]
    fn result_invariants() {
        let g = fam("T3:12");
        let r = eta1_with(&g, &SpectralOptions::default()).unwrap();
        assert!(r.residual <= 1e-12 * r.value);
        close(r.vector.iter().map(|v| v * v).sum::<f64>(), 1.0, 1e-12);
        assert!(r.vector.iter().all(|&v| v > 0.0));
    }

    #[test]
    fn non_convergence_reports_best_iterate() {
        let m = FloatSymMatrix::adjacency(&fam("P:30"));
        match spectral_radius(&m, 1e-14, 3) {
            Err(Error::NonConvergence { iterations, vector, residual, .. }) => {
                assert_eq!(iterations, 3);
                assert_eq!(vector.len(), 30);
                assert!(residual > 0.0);
            }
            other => panic!("expected non-convergence, got {other:?}"),
        }
        assert!(spectral_radius(&m, 0.0, 3).is_err());
    }

    #[test]
    fn jacobi_spectra() {
        let p2 = full_spectrum(&FloatSymMatrix::adjacency(&fam("P:2")), 1e-12).unwrap();
        close(p2.eigenvalues[0], 1.0, 1e-12);
        close(p2.eigenvalues[1], -1.0, 1e-12);
        let c4 = full_spectrum(&FloatSymMatrix::adjacency(&fam("C:4")), 1e-12).unwrap();
        for (got, want) in c4.eigenvalues.iter().zip([2.0, 0.0, 0.0, -2.0]) {
            close(*got, want, 1e-12);
        }
        let s4 = full_spectrum(&FloatSymMatrix::extended_adjacency(&fam("S:4")).unwrap(), 1e-12)
            .unwrap();
        let top = 5.0 / 3.0 * 3f64.sqrt();
        for (got, want) in s4.eigenvalues.iter().zip([top, 0.0, 0.0, -top]) {
            close(*got, want, 1e-12);
        }
        assert!(full_spectrum(&FloatSymMatrix::adjacency(&fam("P:2")), -1.0).is_err());
    }

    #[test]
    fn graph_level_radii() {
        close(lambda1(&fam("P:4")).unwrap(), 2.0 * (std::f64::consts::PI / 5.0).cos(), 1e-10);
        close(eta1(&fam("S:5")).unwrap(), 4.25, 1e-10);
        close(eta1(&fam("K_ab:2,3")).unwrap(), 13.0 / (2.0 * 6f64.sqrt()), 1e-10);
        let disconnected = Graph::from_edge_list(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(eta1(&disconnected), Err(Error::Disconnected));
        assert_eq!(lambda1(&fam("P:1")).unwrap(), 0.0);
        assert_eq!(eta1(&fam("P:1")), Err(Error::IsolatedVertex(0)));
    }

    #[test]
    fn t5_matches_closed_form() {
        let n = 12.0f64;
        let expected = (0.5 * (n - 1.0 + (n * n - 14.0 * n + 61.0).sqrt())).sqrt();
        close(lambda1(&fam("T5:12")).unwrap(), expected, 1e-10);
        close(expected, ((11.0 + 37f64.sqrt()) / 2.0).sqrt(), 1e-14);
    }

    #[test]
    fn energies() {
        close(extended_energy(&fam("C:6")).unwrap(), 8.0, 1e-10);
        close(extended_energy(&fam("S:4")).unwrap(), 2.0 * 5.0 / 3.0 * 3f64.sqrt(), 1e-10);
        close(extended_energy(&fam("P:2")).unwrap(), 2.0, 1e-12);
        let isolated = Graph::from_edge_list(3, [(0, 1)]).unwrap();
        assert_eq!(extended_energy(&isolated), Err(Error::IsolatedVertex(2)));
    }

    #[test]
    fn spectrum_moment_identities() {
        for s in ["T2:11", "H4", "K_ab:3,4", "W:9"] {
            let g = fam(s);
            let m = exmatrix::extended_adjacency(&g).unwrap().to_float();
            let spec = full_spectrum(&m, 1e-12).unwrap();
            let sum: f64 = spec.eigenvalues.iter().sum();
            let squares: f64 = spec.eigenvalues.iter().map(|l| l * l).sum();
            assert!(sum.abs() < 1e-8);
            assert!((squares - m.trace_of_square()).abs() < 1e-6 * m.trace_of_square());
        }
    }
}
