//! The S-functional calculus.
//!
//! Intrinsic functions are applied by two independent routes: the complex
//! Riesz-Dunford integral of the complex adjoint, pulled back to a
//! quaternionic matrix, and quadrature of the left S-resolvent along a
//! contour in `C_i`. Left and right functions go through their four
//! intrinsic components.

use std::str::FromStr;

use crate::catalog;
use crate::contour::{adaptive_trapezoid, auto_contour, SliceContour, DEFAULT_NODES};
use crate::error::{Error, Result};
use crate::operator::{invert_complex, CMatrix, QMatrix};
use crate::quaternion::{Quaternion, SliceComplex};
use crate::slice::{Kind, StemFunction};
use crate::spectrum::{s_resolvent_formula, s_spectrum, slice_spectrum, Side};

/// Structure tolerance when pulling a calculus result back from `C^2n`.
pub const STRUCTURE_TOL: f64 = 1e-9;
/// Eigenvalues closer than this to `(-inf, 0]` are rejected by [`op_log`].
pub const CUT_CLEARANCE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CalculusMethod {
    ComplexPath,
    SContour,
}

impl FromStr for CalculusMethod {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "complex_path" | "complex-path" => Ok(Self::ComplexPath),
            "s_contour" | "s-contour" => Ok(Self::SContour),
            other => Err(Error::InvalidFunction(format!("unknown calculus method '{other}'"))),
        }
    }
}

/// `(1/2 pi i) int h(z) (z I - M)^-1 dz` over `contour`.
pub fn riesz_dunford(
    m: &CMatrix,
    h: impl Fn(SliceComplex) -> SliceComplex,
    contour: &SliceContour,
    nodes: usize,
) -> Result<CMatrix> {
    let n = m.nrows();
    if n != m.ncols() {
        return Err(Error::DimensionMismatch { expected: n, got: m.ncols() });
    }
    let q = adaptive_trapezoid(contour, nodes, |z, radial| {
        let shifted = CMatrix::from_diagonal_element(n, n, z) - m;
        let inv = invert_complex(&shifted).ok_or_else(|| Error::SingularNode(format!("zI - M singular at z = {z}")))?;
        // dz / (2 pi i) = radial dtheta / (2 pi)
        Ok(inv * (h(z) * radial))
    })?;
    Ok(q.value)
}

/// The contour used for `f(A)`: around `sigma_S(A)`, inside `f`'s domain.
pub fn contour_for(a: &QMatrix, f: &StemFunction) -> Result<SliceContour> {
    auto_contour(&s_spectrum(a)?, &f.domain)
}

/// `f(A)` for an intrinsic `f`.
pub fn calculus_intrinsic(a: &QMatrix, f: &StemFunction, method: CalculusMethod) -> Result<QMatrix> {
    if !f.is_intrinsic() {
        return Err(Error::NotIntrinsic(format!("{} is {:?}", f.name, f.kind)));
    }
    let contour = contour_for(a, f)?;
    calculus_intrinsic_on(a, f, method, &contour)
}

pub fn calculus_intrinsic_on(
    a: &QMatrix,
    f: &StemFunction,
    method: CalculusMethod,
    contour: &SliceContour,
) -> Result<QMatrix> {
    let h = f.restrict_to_slice()?;
    match method {
        CalculusMethod::ComplexPath => pull_back_holomorphic(a, |z| h(z), contour),
        CalculusMethod::SContour => {
            // (1/2pi) int S_L^-1(s, A) ds_i f(s) with ds_i = -i ds = radial dtheta
            let q = adaptive_trapezoid(contour, DEFAULT_NODES, |s, radial| {
                let resolvent = s_resolvent_formula(a, Quaternion::from_slice(s), Side::Left)
                    .map_err(|e| Error::SingularNode(e.to_string()))?;
                Ok(resolvent
                    .scalar_right(Quaternion::from_slice(radial))
                    .scalar_right(Quaternion::from_slice(h(s))))
            })?;
            Ok(q.value)
        }
    }
}

/// `h(chi(A))` by Riesz-Dunford, read back as a quaternionic matrix.
///
/// Fails with `StructureViolation` unless `h(conj z) = conj h(z)` on the
/// spectrum, which is exactly when `h(chi(A))` is again a complex adjoint.
pub fn pull_back_holomorphic(
    a: &QMatrix,
    h: impl Fn(SliceComplex) -> SliceComplex,
    contour: &SliceContour,
) -> Result<QMatrix> {
    let m = riesz_dunford(&a.complex_adjoint().0, h, contour, DEFAULT_NODES)?;
    QMatrix::from_complex_adjoint(&m, STRUCTURE_TOL)
}

/// `f(A)` for a left or right `f` through its intrinsic components:
/// `sum e_m f_m(A)` for right functions, `sum f_m(A) e_m` for left ones.
pub fn calculus_sided(a: &QMatrix, f: &StemFunction, kind: Kind) -> Result<QMatrix> {
    calculus_sided_with(a, f, kind, CalculusMethod::ComplexPath)
}

pub fn calculus_sided_with(a: &QMatrix, f: &StemFunction, kind: Kind, method: CalculusMethod) -> Result<QMatrix> {
    if f.is_intrinsic() {
        return calculus_intrinsic(a, f, method);
    }
    if f.kind != kind {
        return Err(Error::KindMismatch(format!("{} is {:?}, asked for {kind:?}", f.name, f.kind)));
    }
    let contour = contour_for(a, f)?;
    let mut out = QMatrix::zeros(a.dim());
    for (part, e) in f.decompose().iter().zip(Quaternion::BASIS) {
        let v = calculus_intrinsic_on(a, part, method, &contour)?;
        let term = match kind {
            Kind::Right => v.scalar_left(e),
            _ => v.scalar_right(e),
        };
        out = &out + &term;
    }
    Ok(out)
}

/// `f(A)` for any kind of `f`.
pub fn apply(a: &QMatrix, f: &StemFunction) -> Result<QMatrix> {
    calculus_sided(a, f, f.kind)
}

/// `exp(A)` by scaling and squaring of the Taylor series.
pub fn op_exp(a: &QMatrix) -> QMatrix {
    let n = a.dim();
    let norm = a.norm();
    let squarings = if norm > 0.5 { (norm / 0.5).log2().ceil() as u32 } else { 0 };
    let b = a.scale(0.5f64.powi(squarings as i32));
    let mut sum = QMatrix::identity(n);
    let mut term = QMatrix::identity(n);
    for k in 1..200 {
        term = (&term * &b).scale(1.0 / k as f64);
        sum = &sum + &term;
        if term.norm() <= 1e-16 * sum.norm() {
            break;
        }
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    sum
}

/// Principal logarithm, for spectra off `(-inf, 0]`.
pub fn op_log(a: &QMatrix) -> Result<QMatrix> {
    for z in slice_spectrum(a)? {
        let dist = if z.re <= 0.0 { z.im.abs() } else { z.norm() };
        if dist <= CUT_CLEARANCE {
            return Err(Error::BranchCut(format!("eigenvalue {z} on (-inf, 0]")));
        }
    }
    calculus_intrinsic(a, &catalog::lookup("log")?, CalculusMethod::ComplexPath)
}

/// Principal `m`-th root `exp(log(A)/m)`.
pub fn op_nth_root(a: &QMatrix, m: u32) -> Result<QMatrix> {
    if m == 0 {
        return Err(Error::InvalidFunction("root of order 0".into()));
    }
    Ok(op_exp(&op_log(a)?.scale(1.0 / m as f64)))
}
