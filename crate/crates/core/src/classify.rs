//! Rank analysis of the h-tensor and the pointwise canonical basis.
//!
//! Rank work is exact: generic rank over the fraction field by fraction-free
//! elimination, strata described by minor ideals, ranks at rational points by
//! exact evaluation. The canonical basis is the one floating-point path in
//! the crate, since the square-root normalisations force irrational scalars;
//! it runs against a configurable tolerance, 1e-9 by default.
//!
//! Canonical-basis algorithm at a point p of a (-1, mu)-space (h^2 = 0):
//! restrict to `D = ker eta`; form the symmetric form `b(U, V) = g(U, hV)`,
//! whose radical is `ker h` inside `D`; diagonalise `b` on a complement of
//! the radical, normalise to `b(X_i, X_i) = +-1` and set `Y_i = h X_i`;
//! correct `X_i` by multiples of the `Y_j` to clear `g(X_i, X_j)`; then
//! extract hyperbolic pairs of the residual neutral metric on the radical.

use num_rational::BigRational;
use num_traits::Zero;

use crate::linalg::PolyMatrix;
use crate::structure::{compute_h, ParacontactData};
use crate::{AxiomReport, CanonicalError, ExactError, Poly};

/// Default numeric tolerance for the canonical-form path.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Locus where the rank drops to `rank`: the common zeros of `generators`
/// (all minors of the next size up). `empty` marks strata that contain no
/// points because some generator is a nonzero constant.
#[derive(Clone, Debug, PartialEq)]
pub struct Stratum {
    pub rank: usize,
    pub generators: Vec<Poly>,
    pub empty: bool,
}

/// Generic rank, rank strata, and optional sampled points.
#[derive(Clone, Debug, PartialEq)]
pub struct RankReport {
    pub generic_rank: usize,
    pub strata: Vec<Stratum>,
    pub samples: Vec<(Vec<BigRational>, usize)>,
}

/// Exact rank of `h` at a rational point.
pub fn rank_at_point(h: &PolyMatrix, point: &[BigRational]) -> Result<usize, ExactError> {
    Ok(h.eval(point)?.rank())
}

/// Generic rank plus, for each `k` below it, the ideal of `(k+1) x (k+1)`
/// minors whose common zeros are exactly the points of rank `<= k`.
pub fn rank_stratification(h: &PolyMatrix) -> RankReport {
    let generic_rank = h.rank();
    let mut strata = Vec::new();
    for k in 0..generic_rank {
        let mut generators: Vec<Poly> = Vec::new();
        for minor in h.minors(k + 1) {
            if minor.is_zero() || generators.contains(&minor) {
                continue;
            }
            generators.push(minor);
        }
        let empty = generators
            .iter()
            .any(|p| p.constant_value().is_some_and(|c| !c.is_zero()));
        strata.push(Stratum {
            rank: k,
            generators,
            empty,
        });
    }
    RankReport {
        generic_rank,
        strata,
        samples: Vec::new(),
    }
}

/// Stratification plus exact ranks at the supplied points.
pub fn rank_stratification_with_points(
    h: &PolyMatrix,
    points: &[Vec<BigRational>],
) -> Result<RankReport, ExactError> {
    let mut report = rank_stratification(h);
    for p in points {
        report.samples.push((p.clone(), rank_at_point(h, p)?));
    }
    Ok(report)
}

/// One `(X_i, Y_i)` pair of the canonical basis, in frame components.
#[derive(Clone, Debug)]
pub struct CanonicalPair {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    /// `g(X_i, Y_i)`, `+1` or `-1`.
    pub epsilon: i8,
    /// True for the pairs carrying an `h` block (`h X_i = Y_i`); the pairs
    /// are ordered with these first.
    pub h_block: bool,
}

/// Pointwise canonical basis `{xi, X_1, Y_1, ..., X_n, Y_n}` with its
/// verification residual.
#[derive(Clone, Debug)]
pub struct CanonicalBasis {
    pub point: Vec<BigRational>,
    pub xi: Vec<f64>,
    pub pairs: Vec<CanonicalPair>,
    /// Maximum defect over every theorem condition, recomputed independently.
    pub residual: f64,
}

impl CanonicalBasis {
    pub fn h_block_count(&self) -> usize {
        self.pairs.iter().filter(|p| p.h_block).count()
    }
}

// ---- f64 helpers ----

fn mat_apply(m: &[Vec<f64>], v: &[f64]) -> Vec<f64> {
    (0..m.len())
        .map(|i| m[i].iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

fn bilinear(gram: &[Vec<f64>], u: &[f64], v: &[f64]) -> f64 {
    let mut acc = 0.0;
    for (i, gi) in gram.iter().enumerate() {
        if u[i] == 0.0 {
            continue;
        }
        for (j, gij) in gi.iter().enumerate() {
            acc += u[i] * gij * v[j];
        }
    }
    acc
}

fn axpy(y: &mut [f64], a: f64, x: &[f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += a * xi;
    }
}

fn scaled(v: &[f64], a: f64) -> Vec<f64> {
    v.iter().map(|x| x * a).collect()
}

fn max_abs(v: &[f64]) -> f64 {
    v.iter().fold(0.0f64, |m, x| m.max(x.abs()))
}

fn det_f64(m: &mut [Vec<f64>]) -> f64 {
    let n = m.len();
    let mut det = 1.0;
    for c in 0..n {
        let (pivot, _) = (c..n)
            .map(|r| (r, m[r][c].abs()))
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap();
        if m[pivot][c] == 0.0 {
            return 0.0;
        }
        if pivot != c {
            m.swap(pivot, c);
            det = -det;
        }
        det *= m[c][c];
        for r in (c + 1)..n {
            let f = m[r][c] / m[c][c];
            for k in c..n {
                m[r][k] -= f * m[c][k];
            }
        }
    }
    det
}

/// Symmetric congruence diagonalisation of `b` with pivot threshold `tol`.
/// Returns the congruence rows `p` (so that `p b p^T` is diagonal), the
/// diagonal values, and the number of pivots above the threshold; rows past
/// that count span the radical.
fn lagrange_diagonalize(
    mut b: Vec<Vec<f64>>,
    tol: f64,
) -> (Vec<Vec<f64>>, Vec<f64>, usize) {
    let n = b.len();
    let mut p: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();
    let mut step = 0;
    while step < n {
        // best diagonal pivot
        let (t, best) = (step..n)
            .map(|t| (t, b[t][t].abs()))
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap();
        let t = if best > tol {
            t
        } else {
            // all diagonals vanish; make one from the largest off-diagonal
            let mut best_pair = (step, step, 0.0f64);
            for s in step..n {
                for u in (s + 1)..n {
                    if b[s][u].abs() > best_pair.2 {
                        best_pair = (s, u, b[s][u].abs());
                    }
                }
            }
            let (s, u, mag) = best_pair;
            if mag <= tol {
                break;
            }
            for j in 0..n {
                let v = b[u][j];
                b[s][j] += v;
            }
            for i in 0..n {
                let v = b[i][u];
                b[i][s] += v;
            }
            let (left, right) = p.split_at_mut(u);
            axpy(&mut left[s], 1.0, &right[0]);
            s
        };
        b.swap(step, t);
        for row in b.iter_mut() {
            row.swap(step, t);
        }
        p.swap(step, t);
        let pivot = b[step][step];
        for v in (step + 1)..n {
            let f = b[v][step] / pivot;
            if f == 0.0 {
                continue;
            }
            for j in 0..n {
                let x = b[step][j];
                b[v][j] -= f * x;
            }
            for i in 0..n {
                let x = b[i][step];
                b[i][v] -= f * x;
            }
            let (head, tail) = p.split_at_mut(v);
            let src = head[step].clone();
            axpy(&mut tail[0], -f, &src);
        }
        step += 1;
    }
    let diag = (0..step).map(|i| b[i][i]).collect();
    (p, diag, step)
}

/// Numeric Sylvester inertia `(positive, negative, null)` of a symmetric
/// matrix, with pivots below `tol` counted as null.
pub fn inertia_f64(matrix: &[Vec<f64>], tol: f64) -> (usize, usize, usize) {
    let n = matrix.len();
    let (_, diag, rank) = lagrange_diagonalize(matrix.to_vec(), tol);
    let pos = diag.iter().filter(|&&v| v > 0.0).count();
    (pos, rank - pos, n - rank)
}

/// Everything about the structure evaluated at one rational point.
struct PointData {
    h: Vec<Vec<f64>>,
    phi: Vec<Vec<f64>>,
    eta: Vec<f64>,
    xi: Vec<f64>,
    g: Vec<Vec<f64>>,
}

fn evaluate_at(s: &ParacontactData, point: &[BigRational]) -> Result<PointData, ExactError> {
    let h = compute_h(s).eval(point)?.to_f64();
    let phi = s.phi.eval(point)?.to_f64();
    let mut eta = Vec::with_capacity(s.dim());
    for p in &s.eta {
        eta.push(p.eval(point)?.to_f64());
    }
    let mut xi = Vec::with_capacity(s.dim());
    for p in &s.xi.components {
        xi.push(p.eval(point)?.to_f64());
    }
    Ok(PointData {
        h,
        phi,
        eta,
        xi,
        g: s.g.to_f64(),
    })
}

/// Constructs the canonical basis of the tangent space at `p`.
///
/// For Lie-frame structures the point is the group identity; pass the empty
/// point. Fails with `NotApplicable` when `h^2` does not vanish at `p`
/// within `tol`, and with `Degenerate` when an intermediate form loses the
/// rank the theorem guarantees.
pub fn canonical_basis_at_point(
    s: &ParacontactData,
    point: &[BigRational],
    tol: f64,
) -> Result<CanonicalBasis, CanonicalError> {
    let dim = s.dim();
    let n = s.n();
    let data = evaluate_at(s, point)?;

    // nilpotency gate
    let mut h2_max = 0.0f64;
    for i in 0..dim {
        for j in 0..dim {
            let entry: f64 = (0..dim).map(|k| data.h[i][k] * data.h[k][j]).sum();
            h2_max = h2_max.max(entry.abs());
        }
    }
    if h2_max > tol {
        return Err(CanonicalError::NotApplicable(format!(
            "max |h^2| = {h2_max:.3e} exceeds tolerance {tol:.3e}"
        )));
    }

    // basis of D = ker eta by eliminating against the largest eta value
    let (pivot, eta_max) = data
        .eta
        .iter()
        .enumerate()
        .map(|(k, v)| (k, v.abs()))
        .max_by(|a, b| a.1.total_cmp(&b.1))
        .unwrap();
    if eta_max <= tol {
        return Err(CanonicalError::Degenerate(
            "eta vanishes at the point".into(),
        ));
    }
    let mut d_basis: Vec<Vec<f64>> = Vec::with_capacity(2 * n);
    for j in 0..dim {
        if j == pivot {
            continue;
        }
        let mut v = vec![0.0; dim];
        v[j] = 1.0;
        v[pivot] = -data.eta[j] / data.eta[pivot];
        d_basis.push(v);
    }

    // b(U, V) = g(U, hV) on D
    let b_form: Vec<Vec<f64>> = d_basis
        .iter()
        .map(|u| {
            d_basis
                .iter()
                .map(|v| {
                    let hv = mat_apply(&data.h, v);
                    let hu = mat_apply(&data.h, u);
                    // symmetrised: h is g-symmetric up to roundoff
                    0.5 * (bilinear(&data.g, u, &hv) + bilinear(&data.g, v, &hu))
                })
                .collect()
        })
        .collect();

    let (p_rows, diag, m) = lagrange_diagonalize(b_form, tol);
    if m > n {
        return Err(CanonicalError::Degenerate(format!(
            "b-form rank {m} exceeds n = {n}"
        )));
    }

    let combine = |row: &[f64]| -> Vec<f64> {
        let mut v = vec![0.0; dim];
        for (c, d) in row.iter().zip(&d_basis) {
            if *c != 0.0 {
                axpy(&mut v, *c, d);
            }
        }
        v
    };

    // h-blocks: X_i with b(X_i, X_i) = +-1, Y_i = h X_i
    let mut xs: Vec<Vec<f64>> = Vec::with_capacity(m);
    let mut epsilons: Vec<i8> = Vec::with_capacity(m);
    for i in 0..m {
        let raw = combine(&p_rows[i]);
        let scale = 1.0 / diag[i].abs().sqrt();
        xs.push(scaled(&raw, scale));
        epsilons.push(if diag[i] > 0.0 { 1 } else { -1 });
    }
    let mut ys: Vec<Vec<f64>> = xs.iter().map(|x| mat_apply(&data.h, x)).collect();

    // clear g(X_i, X_j) by shifting along the isotropic Y_j directions
    let gram_xx: Vec<Vec<f64>> = xs
        .iter()
        .map(|a| xs.iter().map(|b| bilinear(&data.g, a, b)).collect())
        .collect();
    for i in 0..m {
        let mut shifted = xs[i].clone();
        for j in 0..m {
            let a = -gram_xx[i][j] / (2.0 * epsilons[j] as f64);
            if a != 0.0 {
                axpy(&mut shifted, a, &ys[j]);
            }
        }
        xs[i] = shifted;
    }
    // Y_i = h X_i is unchanged by the shift since h Y_j = 0
    ys = xs.iter().map(|x| mat_apply(&data.h, x)).collect();

    // residual space: radical of b, g-orthogonalised against the h-blocks
    let mut w_basis: Vec<Vec<f64>> = Vec::with_capacity(2 * (n - m));
    for row in p_rows.iter().skip(m) {
        let mut w = combine(row);
        for i in 0..m {
            let e = epsilons[i] as f64;
            let a = -e * bilinear(&data.g, &w, &ys[i]);
            let b = -e * bilinear(&data.g, &w, &xs[i]);
            if a != 0.0 {
                axpy(&mut w, a, &xs[i]);
            }
            if b != 0.0 {
                axpy(&mut w, b, &ys[i]);
            }
        }
        w_basis.push(w);
    }

    // hyperbolic pairs from the neutral metric on the residual space
    let g_form: Vec<Vec<f64>> = w_basis
        .iter()
        .map(|u| w_basis.iter().map(|v| bilinear(&data.g, u, v)).collect())
        .collect();
    let (q_rows, g_diag, g_rank) = lagrange_diagonalize(g_form, tol);
    if g_rank != 2 * (n - m) {
        return Err(CanonicalError::Degenerate(format!(
            "residual metric has rank {g_rank}, expected {}",
            2 * (n - m)
        )));
    }
    let mut plus: Vec<Vec<f64>> = Vec::new();
    let mut minus: Vec<Vec<f64>> = Vec::new();
    for i in 0..g_rank {
        let mut v = vec![0.0; dim];
        for (c, w) in q_rows[i].iter().zip(&w_basis) {
            if *c != 0.0 {
                axpy(&mut v, *c, w);
            }
        }
        let v = scaled(&v, 1.0 / g_diag[i].abs().sqrt());
        if g_diag[i] > 0.0 {
            plus.push(v);
        } else {
            minus.push(v);
        }
    }
    if plus.len() != n - m {
        return Err(CanonicalError::Degenerate(format!(
            "residual metric signature ({}, {}), expected ({}, {})",
            plus.len(),
            minus.len(),
            n - m,
            n - m
        )));
    }

    let mut pairs: Vec<CanonicalPair> = xs
        .into_iter()
        .zip(ys)
        .zip(epsilons)
        .map(|((x, y), epsilon)| CanonicalPair {
            x,
            y,
            epsilon,
            h_block: true,
        })
        .collect();
    let inv_sqrt2 = 0.5f64.sqrt();
    for (u, v) in plus.into_iter().zip(minus) {
        let mut x = u.clone();
        axpy(&mut x, 1.0, &v);
        let mut y = u;
        axpy(&mut y, -1.0, &v);
        pairs.push(CanonicalPair {
            x: scaled(&x, inv_sqrt2),
            y: scaled(&y, inv_sqrt2),
            epsilon: 1,
            h_block: false,
        });
    }

    let mut basis = CanonicalBasis {
        point: point.to_vec(),
        xi: data.xi.clone(),
        pairs,
        residual: 0.0,
    };
    basis.residual = canonical_residual(s, &basis)?;
    Ok(basis)
}

/// Maximum numeric defect of the basis against every theorem condition,
/// recomputed from the structure independently of how the basis was built.
pub fn canonical_residual(
    s: &ParacontactData,
    cb: &CanonicalBasis,
) -> Result<f64, CanonicalError> {
    let data = evaluate_at(s, &cb.point)?;
    let dim = s.dim();
    let n = s.n();
    let mut worst = 0.0f64;
    let mut track = |v: f64| worst = worst.max(v.abs());

    // linear independence
    let mut columns: Vec<Vec<f64>> = vec![cb.xi.clone()];
    for p in &cb.pairs {
        columns.push(p.x.clone());
        columns.push(p.y.clone());
    }
    if columns.len() != dim {
        return Ok(f64::INFINITY);
    }
    let mut matrix: Vec<Vec<f64>> = (0..dim)
        .map(|i| columns.iter().map(|c| c[i]).collect())
        .collect();
    if det_f64(&mut matrix).abs() < 1e-12 {
        return Ok(f64::INFINITY);
    }

    // eta values: 1 on xi, 0 on the pairs
    let eta_of = |v: &[f64]| -> f64 { v.iter().zip(&data.eta).map(|(a, b)| a * b).sum() };
    track(eta_of(&cb.xi) - 1.0);
    for p in &cb.pairs {
        track(eta_of(&p.x));
        track(eta_of(&p.y));
    }

    // Gram matrix: only g(xi, xi) = 1 and g(X_i, Y_i) = epsilon_i survive
    track(bilinear(&data.g, &cb.xi, &cb.xi) - 1.0);
    for (i, p) in cb.pairs.iter().enumerate() {
        track(bilinear(&data.g, &cb.xi, &p.x));
        track(bilinear(&data.g, &cb.xi, &p.y));
        track(bilinear(&data.g, &p.x, &p.y) - p.epsilon as f64);
        for (j, q) in cb.pairs.iter().enumerate() {
            track(bilinear(&data.g, &p.x, &q.x));
            track(bilinear(&data.g, &p.y, &q.y));
            if i != j {
                track(bilinear(&data.g, &p.x, &q.y));
            }
        }
    }

    // h blocks: h X_i = Y_i on h-blocks, h = 0 elsewhere, h Y_i = 0 always
    for p in &cb.pairs {
        let hx = mat_apply(&data.h, &p.x);
        if p.h_block {
            for (a, b) in hx.iter().zip(&p.y) {
                track(a - b);
            }
        } else {
            track(max_abs(&hx));
        }
        track(max_abs(&mat_apply(&data.h, &p.y)));
    }

    // n = 1 refinement: phi X_1 = +-X_1, phi Y_1 = -+Y_1
    if n == 1 {
        let p = &cb.pairs[0];
        let phix = mat_apply(&data.phi, &p.x);
        let phiy = mat_apply(&data.phi, &p.y);
        let defect = |sigma: f64| -> f64 {
            let mut worst = 0.0f64;
            for (a, b) in phix.iter().zip(&p.x) {
                worst = worst.max((a - sigma * b).abs());
            }
            for (a, b) in phiy.iter().zip(&p.y) {
                worst = worst.max((a + sigma * b).abs());
            }
            worst
        };
        track(defect(1.0).min(defect(-1.0)));
    }

    Ok(worst)
}

/// Re-checks every theorem condition numerically against `tol`.
pub fn verify_canonical(
    s: &ParacontactData,
    cb: &CanonicalBasis,
    tol: f64,
) -> Result<AxiomReport, CanonicalError> {
    let mut report = AxiomReport::new("canonical basis");
    let residual = canonical_residual(s, cb)?;
    report.record(
        "theorem_conditions",
        (residual > tol || residual.is_nan())
            .then(|| format!("max residual {residual:.3e} > {tol:.1e}")),
    );
    for p in &cb.pairs {
        if p.epsilon != 1 && p.epsilon != -1 {
            report.fail("epsilon_signs", format!("epsilon = {}", p.epsilon));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::scalar::Scalar;
    use num_bigint::BigInt;

    fn rat(p: i64, q: i64) -> BigRational {
        BigRational::new(BigInt::from(p), BigInt::from(q))
    }

    use crate::frame::FrameContext;

    #[test]
    fn r3_rank_stratification() {
        let s = catalog::example_r3();
        let h = compute_h(&s);
        let report = rank_stratification(&h);
        assert_eq!(report.generic_rank, 1);
        assert_eq!(report.strata.len(), 1);
        let stratum = &report.strata[0];
        assert_eq!(stratum.rank, 0);
        let coords = s.frame.chart().clone();
        let x = Poly::var(&coords, 0);
        assert_eq!(stratum.generators, vec![x]);
        assert!(!stratum.empty);
    }

    #[test]
    fn lie_rank_is_constant() {
        let s = catalog::example_lie(2, 1).unwrap();
        let h = compute_h(&s);
        let report = rank_stratification(&h);
        assert_eq!(report.generic_rank, 1);
        // constant-entry matrix: the stratum below m contains a nonzero
        // constant minor, so it is empty
        assert!(report.strata[0].empty);
    }

    #[test]
    fn zero_matrix_has_no_strata() {
        let h: PolyMatrix = crate::linalg::Matrix::zeroes(3, 3);
        let report = rank_stratification(&h);
        assert_eq!(report.generic_rank, 0);
        assert!(report.strata.is_empty());
    }

    #[test]
    fn r3_rank_at_points() {
        let s = catalog::example_r3();
        let h = compute_h(&s);
        assert_eq!(rank_at_point(&h, &[rat(0, 1), rat(5, 1), rat(7, 1)]).unwrap(), 0);
        assert_eq!(rank_at_point(&h, &[rat(1, 1), rat(0, 1), rat(0, 1)]).unwrap(), 1);
        assert_eq!(rank_at_point(&h, &[rat(-3, 2), rat(1, 1), rat(4, 1)]).unwrap(), 1);
    }

    #[test]
    fn canonical_r3_generic_point() {
        let s = catalog::example_r3();
        let p = [rat(1, 1), rat(0, 1), rat(0, 1)];
        let cb = canonical_basis_at_point(&s, &p, DEFAULT_TOL).unwrap();
        assert_eq!(cb.h_block_count(), 1);
        assert!(cb.residual < DEFAULT_TOL, "residual {}", cb.residual);
        let pair = &cb.pairs[0];
        assert_eq!(pair.epsilon, 1);
        // X_1 is proportional to e1 and Y_1 = h X_1 to e2; at x = 1 the
        // b-value of e1 is exactly 1 so no rescaling happens
        assert!((pair.x[0] - 1.0).abs() < 1e-12);
        assert!(pair.x[1].abs() < 1e-12 && pair.x[2].abs() < 1e-12);
        assert!((pair.y[1] - 1.0).abs() < 1e-12);
        assert!(verify_canonical(&s, &cb, DEFAULT_TOL).unwrap().all_passed());
    }

    /// Independent oracle: brute-force search over small rational candidate
    /// vectors for a basis satisfying every theorem condition exactly at
    /// p = (1, 0, 0), then compare its block data with the numeric output.
    #[test]
    fn canonical_r3_brute_force_oracle() {
        let s = catalog::example_r3();
        let p = [rat(1, 1), rat(0, 1), rat(0, 1)];
        let h = compute_h(&s).eval(&p).unwrap();
        let mut eta = Vec::new();
        for e in &s.eta {
            eta.push(e.eval(&p).unwrap());
        }
        let g = &s.g;
        let pool: Vec<BigRational> = vec![
            rat(-2, 1), rat(-1, 1), rat(-1, 2), rat(0, 1), rat(1, 2), rat(1, 1), rat(2, 1),
        ];
        let mut found = None;
        'search: for a in &pool {
            for b in &pool {
                for c in &pool {
                    let x = [a.clone(), b.clone(), c.clone()];
                    let xs: Vec<Scalar> =
                        x.iter().map(|r| Scalar::from_rational(r.clone())).collect();
                    // Y = hX
                    let ys: Vec<Scalar> = (0..3)
                        .map(|i| {
                            let mut acc = Scalar::zero();
                            for (j, xj) in xs.iter().enumerate() {
                                acc = &acc + &(h.get(i, j) * xj);
                            }
                            acc
                        })
                        .collect();
                    let pair = |u: &[Scalar], v: &[Scalar]| {
                        let mut acc = Scalar::zero();
                        for i in 0..3 {
                            for j in 0..3 {
                                acc = &acc + &(&(&u[i] * &v[j]) * g.get(i, j));
                            }
                        }
                        acc
                    };
                    let eta_of = |u: &[Scalar]| {
                        let mut acc = Scalar::zero();
                        for i in 0..3 {
                            acc = &acc + &(&eta[i] * &u[i]);
                        }
                        acc
                    };
                    use num_traits::Zero;
                    let eps = pair(&xs, &ys);
                    if ys.iter().all(Scalar::is_zero)
                        || !eta_of(&xs).is_zero()
                        || !eta_of(&ys).is_zero()
                        || !pair(&xs, &xs).is_zero()
                        || !pair(&ys, &ys).is_zero()
                        || (eps != Scalar::from_int(1) && eps != Scalar::from_int(-1))
                    {
                        continue;
                    }
                    found = Some(eps);
                    break 'search;
                }
            }
        }
        let eps = found.expect("oracle found no canonical pair");
        assert_eq!(eps, Scalar::from_int(1));

        let cb = canonical_basis_at_point(&s, &p, DEFAULT_TOL).unwrap();
        assert_eq!(cb.h_block_count(), 1);
        assert_eq!(cb.pairs[0].epsilon, 1);
    }

    #[test]
    fn canonical_r3_origin_has_zero_block() {
        let s = catalog::example_r3();
        let p = [rat(0, 1), rat(0, 1), rat(0, 1)];
        let cb = canonical_basis_at_point(&s, &p, DEFAULT_TOL).unwrap();
        assert_eq!(cb.h_block_count(), 0);
        assert_eq!(cb.pairs.len(), 1);
        assert!(cb.residual < DEFAULT_TOL);
    }

    #[test]
    fn canonical_lie11_is_already_canonical() {
        let s = catalog::example_lie(1, 1).unwrap();
        let cb = canonical_basis_at_point(&s, &[], DEFAULT_TOL).unwrap();
        assert_eq!(cb.h_block_count(), 1);
        assert!(cb.residual < DEFAULT_TOL);
        // X_1 = X1, Y_1 = Y1 up to sign conventions: b(X1, X1) = 1 exactly
        let pair = &cb.pairs[0];
        assert!((pair.x[1] - 1.0).abs() < 1e-12);
        assert!((pair.y[2] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn tampered_bases_fail_verification() {
        let s = catalog::example_r3();
        let p = [rat(1, 1), rat(0, 1), rat(0, 1)];
        let cb = canonical_basis_at_point(&s, &p, DEFAULT_TOL).unwrap();

        // swapping X and Y breaks the h-block condition (h Y = 0 != X)
        let mut swapped = cb.clone();
        let pair = &mut swapped.pairs[0];
        std::mem::swap(&mut pair.x, &mut pair.y);
        assert!(canonical_residual(&s, &swapped).unwrap() > 0.5);

        // scaling X alone breaks g(X, Y) = +-1
        let mut scaled_basis = cb.clone();
        scaled_basis.pairs[0].x = scaled(&scaled_basis.pairs[0].x, 2.0);
        let r = canonical_residual(&s, &scaled_basis).unwrap();
        assert!(r > 0.5, "residual {r}");
    }

    #[test]
    fn not_applicable_off_the_nullity_class() {
        // [xi, X] = Y and [xi, Y] = X give hX = Y, hY = -X, so h^2 = -I on
        // the contact distribution: no canonical form applies.
        use crate::frame::{FieldVec, Frame, LieFrame};
        use crate::linalg::{ConstMatrix, Matrix};
        let si = Scalar::from_int;
        let frame = LieFrame::new(
            vec!["xi".into(), "X".into(), "Y".into()],
            &[
                (0, 1, vec![si(0), si(0), si(1)]),
                (0, 2, vec![si(0), si(1), si(0)]),
            ],
        )
        .unwrap();
        let mut phi: PolyMatrix = Matrix::zeroes(3, 3);
        phi.set(1, 1, Poly::one());
        phi.set(2, 2, Poly::constant(si(-1)));
        let mut g = ConstMatrix::zeroes(3, 3);
        g.set(0, 0, si(1));
        g.set(1, 2, si(1));
        g.set(2, 1, si(1));
        let s = ParacontactData::new(
            Frame::Lie(frame),
            phi,
            FieldVec::unit(3, 0),
            vec![Poly::one(), Poly::zero(), Poly::zero()],
            g,
        )
        .unwrap();
        match canonical_basis_at_point(&s, &[], DEFAULT_TOL) {
            Err(CanonicalError::NotApplicable(_)) => {}
            other => panic!("expected NotApplicable, got {other:?}"),
        }
    }
}
