//! Dense nonsymmetric complex eigenvalues.
//!
//! Householder reduction to upper Hessenberg form followed by single-shift
//! complex QR sweeps (Wilkinson shift, Givens rotations) with deflation.
//! Only eigenvalues are produced; rotations are therefore applied to the
//! active window only.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::operator::{smallest_singular_value_complex, CMatrix};

/// Iterations allowed per eigenvalue before giving up.
const MAX_ITER_PER_EIGENVALUE: usize = 60;

/// Eigenvalues of `m`, each satisfying
/// `smin(lambda I - m) <= tol * max(||m||_F, tiny)`.
pub fn eigenvalues(m: &CMatrix, tol: f64) -> Result<Vec<Complex64>> {
    let n = m.nrows();
    if n != m.ncols() {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: m.ncols(),
        });
    }
    if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::NoConvergence("matrix has non-finite entries".into()));
    }
    let values = schur_eigenvalues(m.clone())?;

    let scale = m.norm();
    for &lambda in &values {
        let shifted = CMatrix::from_diagonal_element(n, n, lambda) - m;
        let smin = smallest_singular_value_complex(&shifted);
        if smin > tol * scale.max(f64::MIN_POSITIVE) {
            return Err(Error::NoConvergence(format!(
                "eigenvalue {lambda} fails the residual check (smin {smin:e})"
            )));
        }
    }
    Ok(values)
}

/// Eigenvalues without the residual check.
pub fn schur_eigenvalues(mut h: CMatrix) -> Result<Vec<Complex64>> {
    let n = h.nrows();
    if n == 0 {
        return Ok(Vec::new());
    }
    hessenberg(&mut h);

    let mut out = vec![Complex64::new(0.0, 0.0); n];
    let mut hi = n - 1;
    let mut iter = 0usize;
    let mut total = 0usize;
    loop {
        if hi == 0 {
            out[0] = h[(0, 0)];
            break;
        }
        // locate the start of the unreduced block ending at hi
        let mut lo = hi;
        while lo > 0 {
            let sub = h[(lo, lo - 1)].norm();
            let diag = h[(lo, lo)].norm() + h[(lo - 1, lo - 1)].norm();
            let reference = if diag == 0.0 { frob_window(&h, 0, hi) } else { diag };
            if sub <= f64::EPSILON * reference {
                h[(lo, lo - 1)] = Complex64::new(0.0, 0.0);
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            out[hi] = h[(hi, hi)];
            hi -= 1;
            iter = 0;
            continue;
        }

        iter += 1;
        total += 1;
        if total > MAX_ITER_PER_EIGENVALUE * n {
            return Err(Error::NoConvergence(format!(
                "QR iteration exceeded {} sweeps",
                MAX_ITER_PER_EIGENVALUE * n
            )));
        }

        let shift = if iter % 11 == 10 {
            // exceptional shift to break cycles
            h[(hi, hi)] + Complex64::new(h[(hi, hi - 1)].norm(), 0.0) * 0.75
        } else {
            wilkinson_shift(
                h[(hi - 1, hi - 1)],
                h[(hi - 1, hi)],
                h[(hi, hi - 1)],
                h[(hi, hi)],
            )
        };
        qr_sweep(&mut h, lo, hi, shift);
    }
    Ok(out)
}

fn frob_window(h: &CMatrix, lo: usize, hi: usize) -> f64 {
    let mut s = 0.0;
    for r in lo..=hi {
        for c in lo..=hi {
            s += h[(r, c)].norm_sqr();
        }
    }
    s.sqrt().max(f64::MIN_POSITIVE)
}

/// Eigenvalue of the trailing 2x2 block closest to `d`.
fn wilkinson_shift(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Complex64 {
    let half_tr = (a + d) * 0.5;
    let disc = ((a - d) * 0.5).powi(2) + b * c;
    let root = disc.sqrt();
    let l1 = half_tr + root;
    let l2 = half_tr - root;
    if (l1 - d).norm() <= (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

/// Householder reduction to upper Hessenberg form (similarity).
fn hessenberg(h: &mut CMatrix) {
    let n = h.nrows();
    if n < 3 {
        return;
    }
    for k in 0..n - 2 {
        let mut x: Vec<Complex64> = (k + 1..n).map(|r| h[(r, k)]).collect();
        let alpha = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if alpha == 0.0 {
            continue;
        }
        let phase = if x[0].norm() == 0.0 {
            Complex64::new(1.0, 0.0)
        } else {
            x[0] / x[0].norm()
        };
        x[0] += phase * alpha;
        let vnorm = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if vnorm == 0.0 {
            continue;
        }
        for z in &mut x {
            *z /= vnorm;
        }
        // H <- (I - 2 v v*) H
        for c in 0..n {
            let dot: Complex64 = x
                .iter()
                .enumerate()
                .map(|(i, v)| v.conj() * h[(k + 1 + i, c)])
                .sum();
            for (i, v) in x.iter().enumerate() {
                h[(k + 1 + i, c)] -= *v * dot * 2.0;
            }
        }
        // H <- H (I - 2 v v*)
        for r in 0..n {
            let dot: Complex64 = x
                .iter()
                .enumerate()
                .map(|(i, v)| h[(r, k + 1 + i)] * *v)
                .sum();
            for (i, v) in x.iter().enumerate() {
                h[(r, k + 1 + i)] -= dot * v.conj() * 2.0;
            }
        }
        for r in k + 2..n {
            h[(r, k)] = Complex64::new(0.0, 0.0);
        }
    }
}

/// Givens rotation `G` with `G^* [a; b] = [r; 0]`, stored as `(c, s)` where
/// `G^* = [[c, s], [-conj(s), c]]` and `c` is real.
fn givens(a: Complex64, b: Complex64) -> (f64, Complex64) {
    let an = a.norm();
    let bn = b.norm();
    if bn == 0.0 {
        return (1.0, Complex64::new(0.0, 0.0));
    }
    if an == 0.0 {
        return (0.0, b.conj() / bn);
    }
    let r = an.hypot(bn);
    let c = an / r;
    let s = (a / an) * b.conj() / r;
    (c, s)
}

/// One explicit single-shift QR step on the window `lo..=hi`.
fn qr_sweep(h: &mut CMatrix, lo: usize, hi: usize, shift: Complex64) {
    let m = hi - lo + 1;
    for k in lo..=hi {
        h[(k, k)] -= shift;
    }
    let mut rots = Vec::with_capacity(m - 1);
    // H - sI = QR
    for k in lo..hi {
        let (c, s) = givens(h[(k, k)], h[(k + 1, k)]);
        for col in k..=hi {
            let x = h[(k, col)];
            let y = h[(k + 1, col)];
            h[(k, col)] = x * c + s * y;
            h[(k + 1, col)] = -s.conj() * x + y * c;
        }
        rots.push((c, s));
    }
    // RQ
    for (idx, &(c, s)) in rots.iter().enumerate() {
        let k = lo + idx;
        let top = (k + 2).min(hi);
        for row in lo..=top {
            let x = h[(row, k)];
            let y = h[(row, k + 1)];
            h[(row, k)] = x * c + y * s.conj();
            h[(row, k + 1)] = -x * s + y * c;
        }
    }
    for k in lo..=hi {
        h[(k, k)] += shift;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sorted(mut v: Vec<Complex64>) -> Vec<Complex64> {
        v.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap().then(a.im.partial_cmp(&b.im).unwrap()));
        v
    }

    fn assert_set(got: Vec<Complex64>, want: &[Complex64], tol: f64) {
        let got = sorted(got);
        let want = sorted(want.to_vec());
        assert_eq!(got.len(), want.len());
        for (g, w) in got.iter().zip(&want) {
            assert!((g - w).norm() <= tol, "{g} vs {w}");
        }
    }

    #[test]
    fn rotation_matrix() {
        let m = CMatrix::from_row_slice(2, 2, &[c(0., 0.), c(-1., 0.), c(1., 0.), c(0., 0.)]);
        assert_set(eigenvalues(&m, 1e-10).unwrap(), &[c(0., 1.), c(0., -1.)], 1e-14);
    }

    #[test]
    fn diagonal() {
        let m = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![c(1., 0.), c(2., 0.), c(3., 0.)]));
        assert_set(eigenvalues(&m, 1e-10).unwrap(), &[c(1., 0.), c(2., 0.), c(3., 0.)], 1e-14);
    }

    #[test]
    fn companion_quadratic() {
        // z^2 - 2z + 5: roots 1 +- 2i by the quadratic formula
        let m = CMatrix::from_row_slice(2, 2, &[c(2., 0.), c(-5., 0.), c(1., 0.), c(0., 0.)]);
        assert_set(eigenvalues(&m, 1e-10).unwrap(), &[c(1., 2.), c(1., -2.)], 1e-13);
    }

    #[test]
    fn triangular_and_zero() {
        let m = CMatrix::from_row_slice(
            3,
            3,
            &[c(1., 1.), c(5., 0.), c(2., -1.), c(0., 0.), c(-2., 0.), c(3., 3.), c(0., 0.), c(0., 0.), c(0., 4.)],
        );
        assert_set(eigenvalues(&m, 1e-10).unwrap(), &[c(1., 1.), c(-2., 0.), c(0., 4.)], 1e-12);
        assert_set(eigenvalues(&CMatrix::zeros(3, 3), 1e-10).unwrap(), &[c(0., 0.); 3], 0.0);
        assert!(eigenvalues(&CMatrix::zeros(0, 0), 1e-10).unwrap().is_empty());
    }

    #[test]
    fn permutation_cycle() {
        // cyclic shift: cube roots of unity, a classic stall case for
        // unshifted QR
        let m = CMatrix::from_row_slice(
            3,
            3,
            &[c(0., 0.), c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.), c(0., 0.), c(0., 0.), c(1., 0.), c(0., 0.)],
        );
        let s = 3f64.sqrt() / 2.0;
        assert_set(eigenvalues(&m, 1e-10).unwrap(), &[c(1., 0.), c(-0.5, s), c(-0.5, -s)], 1e-12);
    }

    #[test]
    fn trace_and_residuals_on_dense_matrix() {
        let n = 8;
        let m = CMatrix::from_fn(n, n, |r, k| {
            let x = (r * 7 + k * 3) as f64;
            c((x * 0.37).sin(), (x * 0.91).cos())
        });
        let eig = eigenvalues(&m, 1e-10).unwrap();
        let trace: Complex64 = (0..n).map(|k| m[(k, k)]).sum();
        let sum: Complex64 = eig.iter().sum();
        assert!((trace - sum).norm() < 1e-12 * (1.0 + m.norm()));
    }

    #[test]
    fn non_finite_rejected() {
        let m = CMatrix::from_row_slice(1, 1, &[c(f64::NAN, 0.)]);
        assert!(matches!(eigenvalues(&m, 1e-10), Err(Error::NoConvergence(_))));
    }
}
