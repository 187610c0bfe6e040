//! Dense complex linear algebra with an explicit tolerance policy.
//!
//! Everything above this module is tolerance-free by delegation: rank
//! decisions, hermitian eigendecompositions, singular value decompositions
//! and eigenvalue clustering all live here.

use nalgebra::Complex;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::{error::Error, tol::unit_scale, Tolerance, C, CMat, CVec};

/// `0 + 0i`.
pub fn czero() -> C {
    Complex::new(0.0, 0.0)
}

/// `1 + 0i`.
pub fn cone() -> C {
    Complex::new(1.0, 0.0)
}

/// Real scalar as a complex number.
pub fn cr(x: f64) -> C {
    Complex::new(x, 0.0)
}

/// Frobenius norm of a matrix.
pub fn fro_norm(m: &CMat) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Euclidean norm of a vector.
pub fn vec_norm(v: &CVec) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Operator (spectral) norm: largest singular value.
pub fn op_norm(m: &CMat) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    singular_values(m).first().copied().unwrap_or(0.0)
}

/// Conjugate transpose.
pub fn adjoint(m: &CMat) -> CMat {
    m.adjoint()
}

/// Entrywise complex conjugate.
pub fn conj_mat(m: &CMat) -> CMat {
    m.map(|z| z.conj())
}

/// Entrywise complex conjugate of a vector.
pub fn conj_vec(v: &CVec) -> CVec {
    v.map(|z| z.conj())
}

/// Residual `‖a − b‖ / max(1, ‖a‖, ‖b‖)` between two vectors.
pub fn rel_vec_resid(a: &CVec, b: &CVec) -> f64 {
    vec_norm(&(a - b)) / unit_scale(vec_norm(a), vec_norm(b))
}

/// Residual `‖a − b‖_F / max(1, ‖a‖_F, ‖b‖_F)` between two matrices.
pub fn rel_mat_resid(a: &CMat, b: &CMat) -> f64 {
    fro_norm(&(a - b)) / unit_scale(fro_norm(a), fro_norm(b))
}

/// All finite entries?
pub fn all_finite(m: &CMat) -> bool {
    m.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

/// Identity matrix.
pub fn eye(n: usize) -> CMat {
    CMat::identity(n, n)
}

/// Hermitian eigendecomposition `M = V diag(λ) V*` with eigenvalues in
/// ascending order and unitary `V`.
///
/// Fails with [`Error::NotHermitian`] when the symmetry residual
/// `‖M − M*‖ / max(1, ‖M‖)` exceeds `tol.eq_tol`.
pub fn hermitian_eig(m: &CMat, tol: &Tolerance) -> Result<(Vec<f64>, CMat), Error> {
    if m.nrows() != m.ncols() {
        return Err(Error::NotSquare {
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    let sym_resid = fro_norm(&(m - m.adjoint())) / unit_scale(fro_norm(m), 0.0);
    if sym_resid > tol.eq_tol {
        return Err(Error::NotHermitian { residual: sym_resid });
    }
    // Work on the exactly hermitian average so roundoff in the input cannot
    // leak into complex eigenvalue parts.
    let h = (m + m.adjoint()).scale(0.5);
    let se = nalgebra::SymmetricEigen::new(h);
    let mut order: Vec<usize> = (0..se.eigenvalues.len()).collect();
    order.sort_by(|&i, &j| se.eigenvalues[i].partial_cmp(&se.eigenvalues[j]).unwrap());
    let vals: Vec<f64> = order.iter().map(|&i| se.eigenvalues[i]).collect();
    let n = m.nrows();
    let mut vecs = CMat::zeros(n, n);
    for (col, &i) in order.iter().enumerate() {
        vecs.set_column(col, &se.eigenvectors.column(i));
    }
    Ok((vals, vecs))
}

/// Thin singular value decomposition `M ≈ U diag(σ) V*` with σ descending.
pub fn svd(m: &CMat) -> (CMat, Vec<f64>, CMat) {
    if m.is_empty() {
        return (
            CMat::zeros(m.nrows(), 0),
            Vec::new(),
            CMat::zeros(m.ncols(), 0),
        );
    }
    let svd = m.clone().svd(true, true);
    let u = svd.u.expect("svd with u");
    let vt = svd.v_t.expect("svd with v_t");
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&i, &j| {
        svd.singular_values[j]
            .partial_cmp(&svd.singular_values[i])
            .unwrap()
    });
    let sigma: Vec<f64> = order.iter().map(|&i| svd.singular_values[i]).collect();
    let mut u_s = CMat::zeros(u.nrows(), order.len());
    let mut v_s = CMat::zeros(vt.ncols(), order.len());
    for (col, &i) in order.iter().enumerate() {
        u_s.set_column(col, &u.column(i));
        v_s.set_column(col, &vt.row(i).adjoint());
    }
    (u_s, sigma, v_s)
}

/// Singular values only, descending.
pub fn singular_values(m: &CMat) -> Vec<f64> {
    if m.is_empty() {
        return Vec::new();
    }
    let mut sv: Vec<f64> = m.clone().singular_values().iter().copied().collect();
    sv.sort_by(|a, b| b.partial_cmp(a).unwrap());
    sv
}

/// Rank = number of singular values above `tol.rank_tol`.
pub fn rank(m: &CMat, tol: &Tolerance) -> usize {
    singular_values(m).iter().filter(|&&s| s > tol.rank_tol).count()
}

/// Orthonormal basis of the column space of `m` (rank by `rank_tol`).
pub fn range_basis(m: &CMat, tol: &Tolerance) -> CMat {
    let (u, sigma, _) = svd(m);
    let r = sigma.iter().filter(|&&s| s > tol.rank_tol).count();
    u.columns(0, r).into_owned()
}

/// Orthonormal basis of the null space of `m` (singular values ≤ `rank_tol`).
pub fn null_basis(m: &CMat, tol: &Tolerance) -> CMat {
    let (_, sigma, v) = svd(m);
    let keep: Vec<usize> = (0..v.ncols()).filter(|&i| sigma[i] <= tol.rank_tol).collect();
    let mut out = CMat::zeros(v.nrows(), keep.len());
    for (col, &i) in keep.iter().enumerate() {
        out.set_column(col, &v.column(i));
    }
    out
}

/// Eigenvalues of a general complex square matrix, via Householder
/// reduction to Hessenberg form followed by the shifted QR iteration with
/// deflation (Wilkinson shifts, occasional exceptional shifts).
pub fn eigenvalues_general(m: &CMat) -> Result<Vec<C>, Error> {
    if m.nrows() != m.ncols() {
        return Err(Error::NotSquare {
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    let n = m.nrows();
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut h = hessenberg(m);
    // Deflation threshold: relative to the neighbors with an absolute floor
    // at the global scale. The floor is set for the accuracy this crate
    // actually consumes (rank and cluster tolerances are at least 1e-8), so
    // eigenvalue clusters perturbed at the noise level deflate instead of
    // stagnating.
    let hnorm = fro_norm(&h).max(f64::MIN_POSITIVE);
    let floor = 1e-12 * hnorm;
    let negligible = |sub: f64, neighbors: f64| -> bool {
        sub <= (f64::EPSILON * neighbors).max(floor)
    };
    let mut eigs = Vec::with_capacity(n);
    let mut hi = n; // active block is 0..hi
    let mut stuck = 0usize;
    let max_total = 60 * n + 200;
    let mut total = 0usize;
    while hi > 0 {
        if hi == 1 {
            eigs.push(h[(0, 0)]);
            hi = 0;
            continue;
        }
        // negligible-subdiagonal deflation at the bottom of the block
        let sub = h[(hi - 1, hi - 2)].norm();
        let scale = h[(hi - 1, hi - 1)].norm() + h[(hi - 2, hi - 2)].norm();
        if negligible(sub, scale) {
            eigs.push(h[(hi - 1, hi - 1)]);
            hi -= 1;
            stuck = 0;
            continue;
        }
        // start of the active (unreduced) block
        let mut lo = hi - 1;
        while lo > 0 {
            let s = h[(lo, lo - 1)].norm();
            let sc = h[(lo, lo)].norm() + h[(lo - 1, lo - 1)].norm();
            if negligible(s, sc) {
                break;
            }
            lo -= 1;
        }
        total += 1;
        stuck += 1;
        if total > max_total {
            return Err(Error::NoConvergence {
                iters: total,
                residual: sub,
            });
        }
        if stuck >= 40 {
            // Stagnation inside a cluster: force a split at the smallest
            // subdiagonal of the active block. The perturbation is at the
            // stagnation level, far below the consumers' tolerances.
            let mut best = (hi - 1, f64::INFINITY);
            for k in (lo + 1)..hi {
                let s = h[(k, k - 1)].norm();
                if s < best.1 {
                    best = (k, s);
                }
            }
            h[(best.0, best.0 - 1)] = czero();
            stuck = 0;
            continue;
        }
        let mu = if stuck % 12 == 0 {
            // exceptional shift to break symmetric stalls
            Complex::new(
                h[(hi - 1, hi - 2)].norm() + h[(hi - 2, hi - 2)].norm(),
                0.37 * sub,
            )
        } else {
            wilkinson_shift(&h, hi)
        };
        qr_step(&mut h, lo, hi, mu);
    }
    Ok(eigs)
}

fn hessenberg(m: &CMat) -> CMat {
    let n = m.nrows();
    let mut h = m.clone();
    for k in 0..n.saturating_sub(2) {
        let len = n - k - 1;
        let mut v: Vec<C> = (0..len).map(|i| h[(k + 1 + i, k)]).collect();
        let norm_x: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm_x <= f64::MIN_POSITIVE {
            continue;
        }
        let phase = if v[0].norm() > 0.0 {
            v[0] / cr(v[0].norm())
        } else {
            cone()
        };
        // reflect x onto -phase·‖x‖·e1
        v[0] += phase * cr(norm_x);
        let vn: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if vn <= f64::MIN_POSITIVE {
            continue;
        }
        for z in v.iter_mut() {
            *z /= cr(vn);
        }
        // H = I − 2 v v^H applied on rows k+1.. and columns k+1..
        for col in k..n {
            let mut dot = czero();
            for i in 0..len {
                dot += v[i].conj() * h[(k + 1 + i, col)];
            }
            for i in 0..len {
                let upd = v[i] * dot;
                h[(k + 1 + i, col)] -= upd + upd;
            }
        }
        for row in 0..n {
            let mut dot = czero();
            for i in 0..len {
                dot += h[(row, k + 1 + i)] * v[i];
            }
            for i in 0..len {
                let upd = dot * v[i].conj();
                h[(row, k + 1 + i)] -= upd + upd;
            }
        }
        for i in 1..len {
            h[(k + 1 + i, k)] = czero();
        }
    }
    h
}

fn wilkinson_shift(h: &CMat, hi: usize) -> C {
    let a = h[(hi - 2, hi - 2)];
    let b = h[(hi - 2, hi - 1)];
    let c = h[(hi - 1, hi - 2)];
    let d = h[(hi - 1, hi - 1)];
    let tr_half = (a + d) * cr(0.5);
    let det = a * d - b * c;
    let disc = (tr_half * tr_half - det).sqrt();
    let l1 = tr_half + disc;
    let l2 = tr_half - disc;
    if (l1 - d).norm() < (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

/// One explicit shifted QR sweep on the Hessenberg block `lo..hi`.
fn qr_step(h: &mut CMat, lo: usize, hi: usize, mu: C) {
    let n = hi - lo;
    if n < 2 {
        return;
    }
    for k in lo..hi {
        h[(k, k)] -= mu;
    }
    // Left Givens sweep clearing the subdiagonal.
    let mut rot: Vec<(f64, C)> = Vec::with_capacity(n - 1);
    let cols = h.ncols();
    for k in lo..hi - 1 {
        let a = h[(k, k)];
        let b = h[(k + 1, k)];
        let r = (a.norm_sqr() + b.norm_sqr()).sqrt();
        let (c, s) = if r <= f64::MIN_POSITIVE {
            (1.0, czero())
        } else if a.norm() <= f64::MIN_POSITIVE {
            (0.0, cone())
        } else {
            ((a.norm()) / r, (a / cr(a.norm())) * b.conj() / cr(r))
        };
        rot.push((c, s));
        for col in k..cols {
            let x = h[(k, col)];
            let y = h[(k + 1, col)];
            h[(k, col)] = x * cr(c) + y * s;
            h[(k + 1, col)] = -x * s.conj() + y * cr(c);
        }
    }
    // Right sweep: multiply by the adjoints, restoring Hessenberg form.
    for (idx, &(c, s)) in rot.iter().enumerate() {
        let k = lo + idx;
        let top = (k + 2).min(hi);
        for row in 0..top {
            let x = h[(row, k)];
            let y = h[(row, k + 1)];
            h[(row, k)] = x * cr(c) + y * s.conj();
            h[(row, k + 1)] = -x * s + y * cr(c);
        }
    }
    for k in lo..hi {
        h[(k, k)] += mu;
    }
}

/// Largest real part among the eigenvalues of a general complex matrix.
pub fn max_real_eigenvalue(m: &CMat) -> Result<f64, Error> {
    let ev = eigenvalues_general(m)?;
    Ok(ev.iter().map(|z| z.re).fold(f64::NEG_INFINITY, f64::max))
}

/// Distance of each eigenvalue of `m` to the nearest point of `targets`,
/// together with the worst offender.
pub fn eigenvalue_cluster_residual(m: &CMat, targets: &[f64]) -> Result<f64, Error> {
    let ev = eigenvalues_general(m)?;
    let mut worst = 0.0_f64;
    for z in ev {
        let d = targets
            .iter()
            .map(|&t| (z - cr(t)).norm())
            .fold(f64::INFINITY, f64::min);
        worst = worst.max(d);
    }
    Ok(worst)
}

/// Random complex matrix with independent standard-normal real and
/// imaginary parts.
pub fn random_cmat(rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> CMat {
    CMat::from_fn(rows, cols, |_, _| random_complex(rng))
}

/// Random complex vector (standard normal parts).
pub fn random_cvec(n: usize, rng: &mut ChaCha8Rng) -> CVec {
    CVec::from_fn(n, |_, _| random_complex(rng))
}

/// Single standard-normal complex scalar.
pub fn random_complex(rng: &mut ChaCha8Rng) -> C {
    Complex::new(gauss(rng), gauss(rng))
}

/// Uniform unit-modulus complex number.
pub fn random_phase(rng: &mut ChaCha8Rng) -> C {
    let t: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
    Complex::new(t.cos(), t.sin())
}

fn gauss(rng: &mut ChaCha8Rng) -> f64 {
    // Box-Muller; cheap and has no rejection loop, so the stream of draws
    // per call is fixed and campaigns stay reproducible.
    let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
    let u2: f64 = rng.gen_range(0.0..1.0);
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}

/// Random n×n unitary matrix (QR of a Ginibre sample with phase fix).
pub fn random_unitary(n: usize, rng: &mut ChaCha8Rng) -> CMat {
    let g = random_cmat(n, n, rng);
    let qr = g.qr();
    let q = qr.q();
    let r = qr.r();
    // Normalize column phases so the distribution is Haar-like and the
    // result does not depend on QR sign conventions.
    let mut q = q;
    for j in 0..n {
        let d = r[(j, j)];
        if d.norm() > 0.0 {
            let phase = d / cr(d.norm());
            for i in 0..n {
                q[(i, j)] *= phase.conj();
            }
        }
    }
    q
}

/// Random rank-`r` orthogonal projection in dimension `n`.
pub fn random_projection(n: usize, r: usize, rng: &mut ChaCha8Rng) -> CMat {
    assert!(r <= n);
    let u = random_unitary(n, rng);
    let b = u.columns(0, r).into_owned();
    &b * b.adjoint()
}

/// Hermitian idempotent check, returning the residual
/// `max(‖p² − p‖, ‖p − p*‖)` at unit scale.
pub fn projection_residual(p: &CMat) -> f64 {
    let idem = rel_mat_resid(&(p * p), p);
    let herm = fro_norm(&(p - p.adjoint())) / unit_scale(fro_norm(p), 0.0);
    idem.max(herm)
}
