//! Dense symmetric eigensolver and spectral certificates.
//!
//! Adjacency spectra are computed by cyclic Jacobi rotations; tensor-power
//! spectra are formed exactly as products of base eigenvalues (never by
//! diagonalizing the product, whose dimension is squared).  The ratio bound
//! `α ≤ |V|·(−λ_min)/(d − λ_min)` and its tightness test are evaluated in
//! exact integer arithmetic after snapping the least eigenvalue to the
//! nearest integer, so that "the bound holds with equality" is a discrete
//! fact rather than a floating-point comparison.

use thiserror::Error;

use crate::graph::ExplicitGraph;

/// Default convergence threshold: off-diagonal Frobenius norm.
pub const DEFAULT_JACOBI_TOL: f64 = 1e-10;
/// Eigenvalues within this distance of an integer are snapped for exact
/// certificate arithmetic.
pub const INTEGER_SNAP_TOL: f64 = 1e-6;
/// Hard cap on Jacobi sweeps before reporting non-convergence.
const MAX_SWEEPS: usize = 100;

#[derive(Debug, Error, PartialEq)]
pub enum SpectralError {
    #[error("matrix of dimension {0} exceeds the dense eigensolver cap {1}")]
    TooLarge(usize, usize),
    #[error("Jacobi iteration did not reach off-norm {0} after {MAX_SWEEPS} sweeps (got {1})")]
    NonConvergence(f64, f64),
    #[error("least eigenvalue {0} is not negative")]
    NonNegativeLeast(f64),
    #[error("degenerate ratio bound: degree {0} equals least eigenvalue")]
    DegenerateDegree(f64),
    #[error("eigenvalue {0} is not within {1} of an integer; no exact certificate")]
    NoIntegerCertificate(f64, f64),
    #[error("spectrum has no basis attached")]
    MissingBasis,
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
}

/// Dense symmetric matrix cap: 4,096² doubles is 128 MiB of working state.
pub const DENSE_MAX_DIM: usize = 4_096;

/// A symmetric matrix stored dense row-major.
#[derive(Clone)]
pub struct DenseSymMatrix {
    n: usize,
    data: Vec<f64>,
}

impl DenseSymMatrix {
    pub fn zeros(n: usize) -> Result<Self, SpectralError> {
        if n > DENSE_MAX_DIM {
            return Err(SpectralError::TooLarge(n, DENSE_MAX_DIM));
        }
        Ok(DenseSymMatrix {
            n,
            data: vec![0.0; n * n],
        })
    }

    pub fn adjacency(graph: &ExplicitGraph) -> Result<Self, SpectralError> {
        let mut m = DenseSymMatrix::zeros(graph.vertex_count())?;
        for (u, v) in graph.edges() {
            m.set_sym(u as usize, v as usize, 1.0);
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn set_sym(&mut self, i: usize, j: usize, value: f64) {
        self.data[i * self.n + j] = value;
        self.data[j * self.n + i] = value;
    }

    /// Returns (Frobenius norm of the off-diagonal part, sum of |a_pq|).
    fn off_diagonal_norms(&self) -> (f64, f64) {
        let mut sum_sq = 0.0;
        let mut sum_abs = 0.0;
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                let a = self.get(i, j);
                sum_sq += 2.0 * a * a;
                sum_abs += a.abs();
            }
        }
        (sum_sq.sqrt(), sum_abs)
    }
}

/// Eigenvalues (descending) with an optional orthonormal eigenbasis;
/// `basis[k]` is the eigenvector for `values[k]`.
#[derive(Clone)]
pub struct Spectrum {
    values: Vec<f64>,
    basis: Option<Vec<Vec<f64>>>,
}

impl Spectrum {
    /// Assembles a spectrum from precomputed eigenvalues (no basis); values
    /// are re-sorted descending.
    pub fn from_values(mut values: Vec<f64>) -> Spectrum {
        values.sort_by(|a, b| b.partial_cmp(a).expect("finite eigenvalues"));
        Spectrum {
            values,
            basis: None,
        }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn largest(&self) -> f64 {
        self.values[0]
    }

    pub fn least(&self) -> f64 {
        *self.values.last().expect("non-empty spectrum")
    }

    pub fn basis(&self) -> Option<&[Vec<f64>]> {
        self.basis.as_deref()
    }

    pub fn trace(&self) -> f64 {
        self.values.iter().sum()
    }

    /// Sum of squared eigenvalues; equals `2·|E|` for an adjacency matrix.
    pub fn energy(&self) -> f64 {
        self.values.iter().map(|v| v * v).sum()
    }

    /// Groups near-equal eigenvalues into `(value, multiplicity)` pairs,
    /// descending.  The representative is the group mean.
    pub fn grouped(&self, tol: f64) -> Vec<(f64, usize)> {
        group_values(&self.values, tol)
    }

    /// Snaps every eigenvalue to the nearest integer; errors if any is
    /// farther than `tol` from one.
    pub fn integer_grouped(&self, tol: f64) -> Result<Vec<(i64, usize)>, SpectralError> {
        let mut out: Vec<(i64, usize)> = Vec::new();
        for &v in &self.values {
            let snapped = v.round();
            if (v - snapped).abs() > tol {
                return Err(SpectralError::NoIntegerCertificate(v, tol));
            }
            let snapped = snapped as i64;
            match out.last_mut() {
                Some((last, count)) if *last == snapped => *count += 1,
                _ => out.push((snapped, 1)),
            }
        }
        Ok(out)
    }

    /// Multiplicity of the least eigenvalue under `tol`-grouping.
    pub fn least_multiplicity(&self, tol: f64) -> usize {
        let least = self.least();
        self.values.iter().filter(|&&v| (v - least).abs() <= tol).count()
    }

    /// CSV rendering: `eigenvalue,multiplicity` per line, descending,
    /// LF-terminated.  Near-integer eigenvalues are printed as integers.
    pub fn csv_string(&self, group_tol: f64) -> String {
        let mut out = String::from("eigenvalue,multiplicity\n");
        for (value, mult) in self.grouped(group_tol) {
            if (value - value.round()).abs() <= INTEGER_SNAP_TOL {
                out.push_str(&format!("{},{}\n", value.round() as i64, mult));
            } else {
                out.push_str(&format!("{value},{mult}\n"));
            }
        }
        out
    }
}

fn group_values(sorted_desc: &[f64], tol: f64) -> Vec<(f64, usize)> {
    let mut out: Vec<(f64, usize)> = Vec::new();
    let mut i = 0;
    while i < sorted_desc.len() {
        let mut j = i + 1;
        // Chain-group: extend while consecutive values stay within tol.
        while j < sorted_desc.len() && (sorted_desc[j - 1] - sorted_desc[j]).abs() <= tol {
            j += 1;
        }
        let mean = sorted_desc[i..j].iter().sum::<f64>() / (j - i) as f64;
        out.push((mean, j - i));
        i = j;
    }
    out
}

/// Cyclic Jacobi diagonalization of a symmetric matrix.
///
/// Sweeps rotate out every off-diagonal entry in turn until the off-diagonal
/// Frobenius norm drops below `tol`.  With `want_vectors`, the accumulated
/// rotations give an orthonormal eigenbasis.
pub fn jacobi_eigenvalues(
    matrix: &DenseSymMatrix,
    tol: f64,
    want_vectors: bool,
) -> Result<Spectrum, SpectralError> {
    let n = matrix.n;
    let mut a = matrix.clone();
    let mut v: Option<Vec<f64>> = want_vectors.then(|| {
        let mut ident = vec![0.0; n * n];
        for i in 0..n {
            ident[i * n + i] = 1.0;
        }
        ident
    });

    let mut converged = false;
    for sweep in 0..MAX_SWEEPS {
        let (off, off_abs) = a.off_diagonal_norms();
        if off < tol {
            converged = true;
            break;
        }
        // Threshold strategy: early sweeps skip entries below a fraction of
        // the mean off-diagonal magnitude; later sweeps hard-zero entries
        // that are negligible against both diagonal entries, so roundoff
        // cannot keep the off-norm pinned above tol.
        let thresh = if sweep < 3 {
            0.2 * off_abs / (n * n) as f64
        } else {
            0.0
        };
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a.get(p, q);
                if apq == 0.0 {
                    continue;
                }
                let g = 100.0 * apq.abs();
                let app = a.get(p, p);
                let aqq = a.get(q, q);
                if sweep > 3 && app.abs() + g == app.abs() && aqq.abs() + g == aqq.abs() {
                    a.set_sym(p, q, 0.0);
                    continue;
                }
                if apq.abs() <= thresh {
                    continue;
                }
                let h = aqq - app;
                let t = if h.abs() + g == h.abs() {
                    // theta would overflow; its large-|theta| limit.
                    apq / h
                } else {
                    let theta = 0.5 * h / apq;
                    let t = 1.0 / (theta.abs() + (1.0 + theta * theta).sqrt());
                    if theta < 0.0 {
                        -t
                    } else {
                        t
                    }
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;

                // Rotate rows/columns p and q of A.
                a.set_sym(p, p, app - t * apq);
                a.set_sym(q, q, aqq + t * apq);
                a.set_sym(p, q, 0.0);
                for k in 0..n {
                    if k == p || k == q {
                        continue;
                    }
                    let akp = a.get(k, p);
                    let akq = a.get(k, q);
                    a.set_sym(k, p, c * akp - s * akq);
                    a.set_sym(k, q, s * akp + c * akq);
                }
                if let Some(vm) = v.as_mut() {
                    for k in 0..n {
                        let vkp = vm[k * n + p];
                        let vkq = vm[k * n + q];
                        vm[k * n + p] = c * vkp - s * vkq;
                        vm[k * n + q] = s * vkp + c * vkq;
                    }
                }
            }
        }
    }
    if !converged {
        let (off, _) = a.off_diagonal_norms();
        if off >= tol {
            return Err(SpectralError::NonConvergence(tol, off));
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| a.get(i, i)).collect();
    order.sort_by(|&i, &j| diag[j].partial_cmp(&diag[i]).expect("finite eigenvalues"));
    let values: Vec<f64> = order.iter().map(|&i| diag[i]).collect();
    let basis = v.map(|vm| {
        order
            .iter()
            .map(|&col| (0..n).map(|row| vm[row * n + col]).collect())
            .collect()
    });
    Ok(Spectrum { values, basis })
}

/// Convenience: adjacency spectrum of a graph.
pub fn adjacency_spectrum(
    graph: &ExplicitGraph,
    tol: f64,
    want_vectors: bool,
) -> Result<Spectrum, SpectralError> {
    jacobi_eigenvalues(&DenseSymMatrix::adjacency(graph)?, tol, want_vectors)
}

/// The ratio bound `|V|·(−λ_min)/(d − λ_min)` as a float.
pub fn ratio_bound(vertices: usize, degree: f64, least: f64) -> Result<f64, SpectralError> {
    if least >= 0.0 {
        return Err(SpectralError::NonNegativeLeast(least));
    }
    if (degree - least).abs() < f64::EPSILON {
        return Err(SpectralError::DegenerateDegree(degree));
    }
    Ok(vertices as f64 * (-least) / (degree - least))
}

/// Exact ratio bound after snapping the least eigenvalue to an integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExactRatioBound {
    pub least: i64,
    /// `|V|·(−λ_min)` and `d − λ_min`; the bound is their quotient.
    pub numerator: u128,
    pub denominator: u128,
    /// The bound when it is an exact integer.
    pub integer_value: Option<u64>,
}

pub fn ratio_bound_exact(
    vertices: u64,
    degree: u64,
    least: f64,
    snap_tol: f64,
) -> Result<ExactRatioBound, SpectralError> {
    let snapped = least.round();
    if (least - snapped).abs() > snap_tol {
        return Err(SpectralError::NoIntegerCertificate(least, snap_tol));
    }
    let least_int = snapped as i64;
    if least_int >= 0 {
        return Err(SpectralError::NonNegativeLeast(least));
    }
    let numerator = vertices as u128 * least_int.unsigned_abs() as u128;
    let denominator = degree as u128 + least_int.unsigned_abs() as u128;
    let integer_value = numerator
        .is_multiple_of(denominator)
        .then(|| (numerator / denominator) as u64);
    Ok(ExactRatioBound {
        least: least_int,
        numerator,
        denominator,
        integer_value,
    })
}

/// Whether `claimed·(d − λ_min) = |V|·(−λ_min)` holds exactly, i.e. the ratio
/// bound is attained with equality at `claimed`.
pub fn ratio_tightness_certificate(
    claimed: u64,
    vertices: u64,
    degree: u64,
    least: f64,
    snap_tol: f64,
) -> Result<bool, SpectralError> {
    let exact = ratio_bound_exact(vertices, degree, least, snap_tol)?;
    Ok(claimed as u128 * exact.denominator == exact.numerator)
}

/// Spectrum of the `q`-th tensor power from a grouped base spectrum: all
/// `q`-fold products of eigenvalues, multiplicities multiplied, merged within
/// `merge_tol`.
pub fn tensor_spectrum(
    base: &[(f64, usize)],
    q: usize,
    merge_tol: f64,
) -> Vec<(f64, usize)> {
    let mut acc: Vec<(f64, usize)> = vec![(1.0, 1)];
    for _ in 0..q {
        let mut next: Vec<(f64, usize)> = Vec::with_capacity(acc.len() * base.len());
        for &(av, am) in &acc {
            for &(bv, bm) in base {
                next.push((av * bv, am * bm));
            }
        }
        next.sort_by(|x, y| y.0.partial_cmp(&x.0).expect("finite eigenvalues"));
        let mut merged: Vec<(f64, usize)> = Vec::new();
        for (value, mult) in next {
            match merged.last_mut() {
                Some((last, count)) if (*last - value).abs() <= merge_tol => *count += mult,
                _ => merged.push((value, mult)),
            }
        }
        acc = merged;
    }
    acc
}

/// `xᵀAx / xᵀx` evaluated through adjacency lists.
pub fn rayleigh_quotient(graph: &ExplicitGraph, x: &[f64]) -> Result<f64, SpectralError> {
    if x.len() != graph.vertex_count() {
        return Err(SpectralError::DimensionMismatch(
            x.len(),
            graph.vertex_count(),
        ));
    }
    let mut quad = 0.0;
    for (u, xu) in x.iter().enumerate() {
        let mut row = 0.0;
        for &v in graph.neighbors(u) {
            row += x[v as usize];
        }
        quad += xu * row;
    }
    let norm2: f64 = x.iter().map(|v| v * v).sum();
    if norm2 == 0.0 {
        return Err(SpectralError::DimensionMismatch(0, graph.vertex_count()));
    }
    Ok(quad / norm2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{
        complete_bipartite, complete_graph, cycle_graph, even_derangement_graph,
    };
    use crate::group::PointPerm;

    fn spectrum_of(graph: &ExplicitGraph) -> Spectrum {
        adjacency_spectrum(graph, DEFAULT_JACOBI_TOL, false).unwrap()
    }

    #[test]
    fn known_small_spectra() {
        let k4 = spectrum_of(&complete_graph(4));
        assert_eq!(k4.integer_grouped(1e-8).unwrap(), vec![(3, 1), (-1, 3)]);

        let c4 = spectrum_of(&cycle_graph(4));
        assert_eq!(c4.integer_grouped(1e-8).unwrap(), vec![(2, 1), (0, 2), (-2, 1)]);

        let k33 = spectrum_of(&complete_bipartite(3, 3));
        assert_eq!(k33.integer_grouped(1e-8).unwrap(), vec![(3, 1), (0, 4), (-3, 1)]);

        // C_5 has irrational eigenvalues 2cos(2πk/5).
        let c5 = spectrum_of(&cycle_graph(5));
        assert!(c5.integer_grouped(1e-8).is_err());
        let grouped = c5.grouped(1e-8);
        assert_eq!(grouped.len(), 3);
        assert!((grouped[0].0 - 2.0).abs() < 1e-9);
        assert!((grouped[1].0 - 2.0 * (2.0 * std::f64::consts::PI / 5.0).cos()).abs() < 1e-9);
        assert_eq!((grouped[1].1, grouped[2].1), (2, 2));
    }

    #[test]
    fn triangle_spectrum_of_smallest_graph() {
        let g = even_derangement_graph(3).unwrap();
        let s = spectrum_of(&g);
        assert_eq!(s.integer_grouped(1e-8).unwrap(), vec![(2, 1), (-1, 2)]);
    }

    #[test]
    fn eigenvectors_satisfy_the_eigen_equation() {
        let g = even_derangement_graph(5).unwrap();
        let m = DenseSymMatrix::adjacency(&g).unwrap();
        let s = jacobi_eigenvalues(&m, DEFAULT_JACOBI_TOL, true).unwrap();
        let basis = s.basis().unwrap();
        let n = g.vertex_count();
        for (k, vec) in basis.iter().enumerate().step_by(7) {
            let lambda = s.values()[k];
            for i in 0..n {
                let av: f64 = vec.iter().enumerate().map(|(j, x)| m.get(i, j) * x).sum();
                assert!((av - lambda * vec[i]).abs() < 1e-8, "residual too large");
            }
        }
        // Orthonormality of a sample of pairs.
        for a in (0..n).step_by(11) {
            for b in (a..n).step_by(13) {
                let dot: f64 = basis[a].iter().zip(&basis[b]).map(|(x, y)| x * y).sum();
                let expected = if a == b { 1.0 } else { 0.0 };
                assert!((dot - expected).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn base_graph_spectra_are_integral_with_known_extremes() {
        let s5 = spectrum_of(&even_derangement_graph(5).unwrap());
        assert!((s5.largest() - 24.0).abs() < 1e-6);
        assert!((s5.least() + 6.0).abs() < 1e-6);
        // Full spectrum, exact: one Perron value, then 4, 0, -6.
        assert_eq!(
            s5.integer_grouped(1e-6).unwrap(),
            vec![(24, 1), (4, 18), (0, 25), (-6, 16)]
        );
        assert!(s5.trace().abs() < 1e-6 * 60.0);
        assert!((s5.energy() - 2.0 * 720.0).abs() < 1e-6 * 60.0);

        let s6 = spectrum_of(&even_derangement_graph(6).unwrap());
        assert!((s6.largest() - 130.0).abs() < 1e-6);
        assert!((s6.least() + 26.0).abs() < 1e-6);
        assert!(s6.trace().abs() < 1e-6 * 360.0);
        assert!((s6.energy() - 2.0 * 23_400.0).abs() < 1e-6 * 360.0);
        // Full integral spectrum; multiplicities are sums of squares of
        // irreducible degrees (81 = 9², 100 = 10², 128 = 8²+8², 25 = 5²).
        assert_eq!(
            s6.integer_grouped(1e-6).unwrap(),
            vec![(130, 1), (10, 81), (4, 100), (-2, 25), (-5, 128), (-26, 25)]
        );
    }

    #[test]
    fn spectrum_is_invariant_under_relabeling() {
        use rand::{seq::SliceRandom, SeedableRng};
        let g = even_derangement_graph(4).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        let mut images: Vec<u32> = (0..12).collect();
        images.shuffle(&mut rng);
        let relabeled = g.relabeled(&PointPerm::new(images).unwrap());
        let a = spectrum_of(&g);
        let b = spectrum_of(&relabeled);
        for (x, y) in a.values().iter().zip(b.values()) {
            assert!((x - y).abs() < 10.0 * DEFAULT_JACOBI_TOL);
        }
    }

    #[test]
    fn ratio_bound_values() {
        assert!((ratio_bound(60, 24.0, -6.0).unwrap() - 12.0).abs() < 1e-12);
        assert!((ratio_bound(360, 130.0, -26.0).unwrap() - 60.0).abs() < 1e-12);
        assert!((ratio_bound(3600, 576.0, -144.0).unwrap() - 720.0).abs() < 1e-12);
        assert!(matches!(
            ratio_bound(10, 3.0, 0.5),
            Err(SpectralError::NonNegativeLeast(_))
        ));
    }

    #[test]
    fn exact_ratio_bound_and_tightness() {
        let b = ratio_bound_exact(60, 24, -6.0 + 1e-9, INTEGER_SNAP_TOL).unwrap();
        assert_eq!(b.least, -6);
        assert_eq!(b.integer_value, Some(12));
        assert!(ratio_tightness_certificate(12, 60, 24, -6.0, INTEGER_SNAP_TOL).unwrap());
        assert!(!ratio_tightness_certificate(13, 60, 24, -6.0, INTEGER_SNAP_TOL).unwrap());
        assert!(ratio_tightness_certificate(60, 360, 130, -26.0, INTEGER_SNAP_TOL).unwrap());
        assert!(ratio_tightness_certificate(720, 3600, 576, -144.0, INTEGER_SNAP_TOL).unwrap());
        // Far from an integer: no certificate.
        assert!(matches!(
            ratio_bound_exact(60, 24, -6.01, INTEGER_SNAP_TOL),
            Err(SpectralError::NoIntegerCertificate(..))
        ));
    }

    #[test]
    fn tensor_spectrum_products() {
        let base = vec![(24.0, 1usize), (4.0, 18), (0.0, 25), (-6.0, 16)];
        assert_eq!(tensor_spectrum(&base, 1, 1e-9), base);
        let square = tensor_spectrum(&base, 2, 1e-9);
        assert_eq!(square.iter().map(|&(_, m)| m).sum::<usize>(), 3_600);
        assert_eq!(square.first().copied(), Some((576.0, 1)));
        assert_eq!(square.last().copied(), Some((-144.0, 32)));
        // -144 arises as 24·(-6) in both orders: 2·1·16 = 32 tuples.
        let zero_mult: usize = square
            .iter()
            .filter(|&&(v, _)| v == 0.0)
            .map(|&(_, m)| m)
            .sum();
        // Anything times 0: 25·60·2 - 25·25 = 2375.
        assert_eq!(zero_mult, 2_375);
    }

    #[test]
    fn rayleigh_quotient_bounds() {
        let g = even_derangement_graph(5).unwrap();
        let ones = vec![1.0; 60];
        assert!((rayleigh_quotient(&g, &ones).unwrap() - 24.0).abs() < 1e-12);
        assert!(rayleigh_quotient(&g, &[1.0; 3]).is_err());
    }

    #[test]
    fn csv_rendering() {
        let g = even_derangement_graph(3).unwrap();
        let s = spectrum_of(&g);
        assert_eq!(s.csv_string(1e-8), "eigenvalue,multiplicity\n2,1\n-1,2\n");
    }

    #[test]
    fn dense_matrix_guard() {
        assert!(matches!(
            DenseSymMatrix::zeros(5_000),
            Err(SpectralError::TooLarge(5_000, DENSE_MAX_DIM))
        ));
    }
}
