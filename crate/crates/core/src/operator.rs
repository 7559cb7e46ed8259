//! Quaternionic matrices as right-linear operators on `H^n`.
//!
//! Vectors of `H^n` are columns; scalars act on the right, so a matrix acts
//! by left multiplication of its entries. With the splitting
//! `x = x1 + j x2` and `A = A1 + j A2` (`x1, x2, A1, A2` with entries in
//! `C_i`), right multiplication by `C_i` is complex-linear and the matrix of
//! `x -> Ax` in the coordinates `(x1, x2)` is
//!
//! ```text
//! chi(A) = [[A1, -conj(A2)],
//!           [A2,  conj(A1)]]
//! ```
//!
//! which is the complex operator `T_i` of the slice `C_i`.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quaternion::{Quaternion, SliceComplex};

/// Dense complex matrix.
pub type CMatrix = DMatrix<Complex64>;

/// Dense real matrix.
pub type RMatrix = DMatrix<f64>;

/// `n x n` quaternion matrix, row-major.
#[derive(Clone, PartialEq)]
pub struct QMatrix {
    n: usize,
    data: Vec<Quaternion>,
}

/// Complex adjoint `chi(A)` of a quaternionic matrix.
///
/// Kept as a thin wrapper so the block structure is never confused with an
/// arbitrary `2n x 2n` complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexAdjoint(pub CMatrix);

/// `4n x 4n` real matrix acting on the real coordinates of `H^n`, ordered
/// `(a, b, c, d)` per component.
#[derive(Debug, Clone, PartialEq)]
pub struct RealRep(pub RMatrix);

/// Real-linear operators on `H^n` built from a matrix, right scalar
/// multiplications and the algebra operations.
#[derive(Debug, Clone)]
pub enum OpExpr {
    Matrix(QMatrix),
    /// `R_q : x -> x q`.
    RightMul(Quaternion),
    Identity,
    /// `(q T) x = q (T x)`.
    ScalarLeft(Quaternion, Box<OpExpr>),
    /// `(T q) x = T (q x)`.
    ScalarRight(Box<OpExpr>, Quaternion),
    Sum(Box<OpExpr>, Box<OpExpr>),
    Difference(Box<OpExpr>, Box<OpExpr>),
    /// `Compose(S, T) = S T`, i.e. `T` first.
    Compose(Box<OpExpr>, Box<OpExpr>),
}

impl QMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![Quaternion::ZERO; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, Quaternion::ONE)
    }

    /// `q I`, acting as `x -> q x`.
    pub fn scalar(n: usize, q: Quaternion) -> Self {
        let mut m = Self::zeros(n);
        for r in 0..n {
            m[(r, r)] = q;
        }
        m
    }

    pub fn diag(entries: &[Quaternion]) -> Self {
        let mut m = Self::zeros(entries.len());
        for (r, &q) in entries.iter().enumerate() {
            m[(r, r)] = q;
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Quaternion>>) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(Self { n, data })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Quaternion) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for r in 0..n {
            for c in 0..n {
                data.push(f(r, c));
            }
        }
        Self { n, data }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[Quaternion] {
        &self.data
    }

    pub fn rows(&self) -> Vec<Vec<Quaternion>> {
        self.data.chunks(self.n.max(1)).map(<[_]>::to_vec).collect()
    }

    /// Frobenius norm; an upper bound for the induced norm on `H^n`.
    pub fn norm(&self) -> f64 {
        self.data.iter().map(|q| q.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|q| q.is_finite())
    }

    /// `(Ax)_r = sum_c A_rc x_c`.
    pub fn apply(&self, x: &[Quaternion]) -> Result<Vec<Quaternion>> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: x.len(),
            });
        }
        Ok((0..self.n)
            .map(|r| (0..self.n).map(|c| self[(r, c)] * x[c]).sum())
            .collect())
    }

    /// Entrywise `q A_rc`: the operator `q T`.
    pub fn scalar_left(&self, q: Quaternion) -> Self {
        self.map(|e| q * e)
    }

    /// Entrywise `A_rc q`: the operator `T q`, `(T q) x = T (q x)`.
    pub fn scalar_right(&self, q: Quaternion) -> Self {
        self.map(|e| e * q)
    }

    pub fn scale(&self, s: f64) -> Self {
        self.map(|e| e * s)
    }

    pub fn map(&self, f: impl Fn(Quaternion) -> Quaternion) -> Self {
        Self {
            n: self.n,
            data: self.data.iter().map(|&e| f(e)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut result = Self::identity(self.n);
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Real polynomial `sum_k coeffs[k] A^k`, by Horner's rule.
    pub fn real_polynomial(&self, coeffs: &[f64]) -> Self {
        let mut acc = Self::zeros(self.n);
        for &c in coeffs.iter().rev() {
            acc = &(&acc * self) + &Self::scalar(self.n, Quaternion::real(c));
        }
        acc
    }

    /// The block matrix `chi(A)`.
    pub fn complex_adjoint(&self) -> ComplexAdjoint {
        let n = self.n;
        let mut m = CMatrix::zeros(2 * n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                let (z1, z2) = split(self[(r, c)]);
                m[(r, c)] = z1;
                m[(r, c + n)] = -z2.conj();
                m[(r + n, c)] = z2;
                m[(r + n, c + n)] = z1.conj();
            }
        }
        ComplexAdjoint(m)
    }

    /// Inverse of [`QMatrix::complex_adjoint`].
    ///
    /// The blocks are averaged with their structural partners and the
    /// residual `||M - chi(A)||_F` must not exceed `tol (1 + ||M||_F)`.
    pub fn from_complex_adjoint(m: &CMatrix, tol: f64) -> Result<Self> {
        if m.nrows() != m.ncols() || !m.nrows().is_multiple_of(2) {
            return Err(Error::DimensionMismatch {
                expected: 2 * (m.nrows() / 2),
                got: m.ncols(),
            });
        }
        let n = m.nrows() / 2;
        let a = Self::from_fn(n, |r, c| {
            let z1 = (m[(r, c)] + m[(r + n, c + n)].conj()) * 0.5;
            let z2 = (m[(r + n, c)] - m[(r, c + n)].conj()) * 0.5;
            join(z1, z2)
        });
        let residual = (m - &a.complex_adjoint().0).norm();
        let allowed = tol * (1.0 + m.norm());
        if residual > allowed {
            return Err(Error::StructureViolation { residual, allowed });
        }
        Ok(a)
    }

    /// `Q_q(A) = A^2 - 2 Re(q) A + |q|^2 I`.
    pub fn q_pencil(&self, q: Quaternion) -> Self {
        self.q_pencil_parts(q.re(), q.norm_sqr())
    }

    pub(crate) fn q_pencil_parts(&self, re: f64, norm_sqr: f64) -> Self {
        let sq = self * self;
        let n = self.n;
        Self::from_fn(n, |r, c| {
            let mut e = sq[(r, c)] - self[(r, c)] * (2.0 * re);
            if r == c {
                e.a += norm_sqr;
            }
            e
        })
    }

    /// `Delta_q = q I - chi(A)` for `q` in the distinguished slice.
    pub fn delta(&self, q: SliceComplex) -> CMatrix {
        let chi = self.complex_adjoint().0;
        CMatrix::from_diagonal_element(chi.nrows(), chi.nrows(), q) - chi
    }

    /// Inverse through the complex adjoint.
    pub fn inverse(&self) -> Result<Self> {
        let chi = self.complex_adjoint().0;
        let inv = invert_complex(&chi)
            .ok_or_else(|| Error::Singular("quaternionic matrix is not invertible".into()))?;
        Self::from_complex_adjoint(&inv, 1e-8)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(p, q)| (*p - *q).norm())
            .fold(0.0, f64::max)
    }
}

/// `q = z1 + j z2` with `z1 = a + b i`, `z2 = c - d i`.
#[inline]
pub fn split(q: Quaternion) -> (Complex64, Complex64) {
    (Complex64::new(q.a, q.b), Complex64::new(q.c, -q.d))
}

/// Inverse of [`split`].
#[inline]
pub fn join(z1: Complex64, z2: Complex64) -> Quaternion {
    Quaternion::new(z1.re, z1.im, z2.re, -z2.im)
}

/// Coordinates `(x1, x2)` of `x = x1 + j x2` in `C^{2n}`.
pub fn complex_coords(x: &[Quaternion]) -> Vec<Complex64> {
    let n = x.len();
    let mut v = vec![Complex64::new(0.0, 0.0); 2 * n];
    for (r, &q) in x.iter().enumerate() {
        let (z1, z2) = split(q);
        v[r] = z1;
        v[r + n] = z2;
    }
    v
}

/// Real coordinates of `H^n`, `(a, b, c, d)` per component.
pub fn real_coords(x: &[Quaternion]) -> Vec<f64> {
    x.iter().flat_map(|q| q.to_array()).collect()
}

/// Matrix inverse via LU; `None` when the factorization is singular.
pub fn invert_complex(m: &CMatrix) -> Option<CMatrix> {
    m.clone().lu().try_inverse()
}

/// Smallest singular value.
pub fn smallest_singular_value_complex(m: &CMatrix) -> f64 {
    if m.nrows() == 0 {
        return 0.0;
    }
    m.clone().singular_values().min()
}

pub fn smallest_singular_value_real(m: &RMatrix) -> f64 {
    if m.nrows() == 0 {
        return 0.0;
    }
    m.clone().singular_values().min()
}

/// 4x4 matrix of `x -> p x` on `(a, b, c, d)` coordinates.
pub fn left_mul_matrix(p: Quaternion) -> RMatrix {
    RMatrix::from_fn(4, 4, |r, c| (p * Quaternion::BASIS[c]).component(r))
}

/// 4x4 matrix of `x -> x p`.
pub fn right_mul_matrix(p: Quaternion) -> RMatrix {
    RMatrix::from_fn(4, 4, |r, c| (Quaternion::BASIS[c] * p).component(r))
}

fn block_diag(n: usize, block: &RMatrix) -> RMatrix {
    let mut m = RMatrix::zeros(4 * n, 4 * n);
    for k in 0..n {
        m.view_mut((4 * k, 4 * k), (4, 4)).copy_from(block);
    }
    m
}

impl OpExpr {
    pub fn matrix(a: QMatrix) -> Self {
        Self::Matrix(a)
    }

    /// `Delta_q(A) = R_q - A`.
    pub fn delta(a: &QMatrix, q: Quaternion) -> Self {
        Self::Difference(Box::new(Self::RightMul(q)), Box::new(Self::Matrix(a.clone())))
    }

    pub fn compose(self, other: OpExpr) -> Self {
        Self::Compose(Box::new(self), Box::new(other))
    }

    /// Matrix dimension the expression constrains, if any.
    fn dim(&self) -> Result<Option<usize>> {
        use OpExpr::*;
        Ok(match self {
            Matrix(a) => Some(a.dim()),
            RightMul(_) | Identity => None,
            ScalarLeft(_, t) | ScalarRight(t, _) => t.dim()?,
            Sum(s, t) | Difference(s, t) | Compose(s, t) => match (s.dim()?, t.dim()?) {
                (Some(x), Some(y)) if x != y => {
                    return Err(Error::DimensionMismatch {
                        expected: x,
                        got: y,
                    })
                }
                (x, y) => x.or(y),
            },
        })
    }

    /// Real representation on `H^n`; `n` is taken from the expression
    /// itself, or 1 if it contains no matrix.
    pub fn real_representation(&self) -> Result<RealRep> {
        let n = self.dim()?.unwrap_or(1);
        Ok(RealRep(self.rep(n)))
    }

    /// Real representation on `H^n` for an explicit `n`.
    pub fn real_representation_n(&self, n: usize) -> Result<RealRep> {
        if let Some(d) = self.dim()? {
            if d != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: d,
                });
            }
        }
        Ok(RealRep(self.rep(n)))
    }

    fn rep(&self, n: usize) -> RMatrix {
        use OpExpr::*;
        match self {
            Matrix(a) => {
                let mut m = RMatrix::zeros(4 * n, 4 * n);
                for r in 0..n {
                    for c in 0..n {
                        m.view_mut((4 * r, 4 * c), (4, 4))
                            .copy_from(&left_mul_matrix(a[(r, c)]));
                    }
                }
                m
            }
            RightMul(q) => block_diag(n, &right_mul_matrix(*q)),
            Identity => RMatrix::identity(4 * n, 4 * n),
            ScalarLeft(q, t) => block_diag(n, &left_mul_matrix(*q)) * t.rep(n),
            ScalarRight(t, q) => t.rep(n) * block_diag(n, &left_mul_matrix(*q)),
            Sum(s, t) => s.rep(n) + t.rep(n),
            Difference(s, t) => s.rep(n) - t.rep(n),
            Compose(s, t) => s.rep(n) * t.rep(n),
        }
    }
}

impl QMatrix {
    pub fn real_representation(&self) -> RealRep {
        RealRep(OpExpr::Matrix(self.clone()).rep(self.n))
    }
}

impl Index<(usize, usize)> for QMatrix {
    type Output = Quaternion;
    #[inline]
    fn index(&self, (r, c): (usize, usize)) -> &Quaternion {
        &self.data[r * self.n + c]
    }
}

impl IndexMut<(usize, usize)> for QMatrix {
    #[inline]
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Quaternion {
        &mut self.data[r * self.n + c]
    }
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows()).finish()
    }
}

impl<'a> Add<&'a QMatrix> for &'a QMatrix {
    type Output = QMatrix;
    fn add(self, o: &QMatrix) -> QMatrix {
        assert_eq!(self.n, o.n, "dimension mismatch");
        QMatrix {
            n: self.n,
            data: self.data.iter().zip(&o.data).map(|(p, q)| *p + *q).collect(),
        }
    }
}

impl<'a> Sub<&'a QMatrix> for &'a QMatrix {
    type Output = QMatrix;
    fn sub(self, o: &QMatrix) -> QMatrix {
        assert_eq!(self.n, o.n, "dimension mismatch");
        QMatrix {
            n: self.n,
            data: self.data.iter().zip(&o.data).map(|(p, q)| *p - *q).collect(),
        }
    }
}

impl Neg for &QMatrix {
    type Output = QMatrix;
    fn neg(self) -> QMatrix {
        self.map(|q| -q)
    }
}

/// Operator composition. Summation order is fixed, so results are
/// reproducible bit for bit.
impl<'a> Mul<&'a QMatrix> for &'a QMatrix {
    type Output = QMatrix;
    fn mul(self, o: &QMatrix) -> QMatrix {
        assert_eq!(self.n, o.n, "dimension mismatch");
        let n = self.n;
        QMatrix::from_fn(n, |r, c| (0..n).map(|k| self[(r, k)] * o[(k, c)]).sum())
    }
}

impl Add for QMatrix {
    type Output = QMatrix;
    fn add(self, o: QMatrix) -> QMatrix {
        &self + &o
    }
}

impl Sub for QMatrix {
    type Output = QMatrix;
    fn sub(self, o: QMatrix) -> QMatrix {
        &self - &o
    }
}

impl Mul for QMatrix {
    type Output = QMatrix;
    fn mul(self, o: QMatrix) -> QMatrix {
        &self * &o
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: f64, b: f64, c: f64, d: f64) -> Quaternion {
        Quaternion::new(a, b, c, d)
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn apply_examples() {
        let x = vec![q(1.0, 2.0, 3.0, 4.0), q(-1.0, 0.5, 0.0, 2.0)];
        assert_eq!(QMatrix::identity(2).apply(&x).unwrap(), x);

        let a = QMatrix::diag(&[Quaternion::I]);
        assert_eq!(a.apply(&[Quaternion::J]).unwrap(), vec![Quaternion::K]);

        // right-linearity: A(x j) = (A x) j
        let xj = vec![Quaternion::ONE * Quaternion::J];
        let lhs = a.apply(&xj).unwrap();
        let rhs = a.apply(&[Quaternion::ONE]).unwrap()[0] * Quaternion::J;
        assert_eq!(lhs, vec![rhs]);
        assert_eq!(rhs, Quaternion::K);

        assert!(matches!(
            a.apply(&x),
            Err(Error::DimensionMismatch { expected: 1, got: 2 })
        ));
    }

    #[test]
    fn complex_adjoint_examples() {
        let chi = QMatrix::diag(&[Quaternion::I]).complex_adjoint().0;
        assert_eq!(chi, CMatrix::from_row_slice(2, 2, &[c(0., 1.), c(0., 0.), c(0., 0.), c(0., -1.)]));
        let chi = QMatrix::diag(&[Quaternion::J]).complex_adjoint().0;
        assert_eq!(chi, CMatrix::from_row_slice(2, 2, &[c(0., 0.), c(-1., 0.), c(1., 0.), c(0., 0.)]));
        // k = j (-i) with our splitting: z1 = 0, z2 = -i
        let chi = QMatrix::diag(&[Quaternion::K]).complex_adjoint().0;
        assert_eq!(chi, CMatrix::from_row_slice(2, 2, &[c(0., 0.), c(0., -1.), c(0., -1.), c(0., 0.)]));
    }

    #[test]
    fn split_join_roundtrip() {
        let p = q(0.25, -1.5, 3.0, 7.0);
        let (z1, z2) = split(p);
        assert_eq!(join(z1, z2), p);
        // p = z1 + j z2 as quaternions
        let rebuilt = Quaternion::from_slice(z1) + Quaternion::J * Quaternion::from_slice(z2);
        assert_eq!(rebuilt, p);
    }

    #[test]
    fn from_complex_adjoint_examples() {
        let a = QMatrix::from_rows(vec![
            vec![q(1.0, 2.0, -3.0, 0.5), q(0.0, 0.0, 1.0, -1.0)],
            vec![q(-2.0, 0.1, 0.2, 0.3), q(4.0, -4.0, 0.0, 9.0)],
        ])
        .unwrap();
        let back = QMatrix::from_complex_adjoint(&a.complex_adjoint().0, 1e-12).unwrap();
        assert_eq!(back, a);

        let m = CMatrix::from_row_slice(2, 2, &[c(0., 0.), c(-1., 0.), c(1., 0.), c(0., 0.)]);
        assert_eq!(QMatrix::from_complex_adjoint(&m, 1e-12).unwrap(), QMatrix::diag(&[Quaternion::J]));

        let d = CMatrix::from_row_slice(2, 2, &[c(1., 0.), c(0., 0.), c(0., 0.), c(2., 0.)]);
        assert!(matches!(
            QMatrix::from_complex_adjoint(&d, 1e-12),
            Err(Error::StructureViolation { .. })
        ));
        let odd = CMatrix::zeros(3, 3);
        assert!(matches!(
            QMatrix::from_complex_adjoint(&odd, 1e-12),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn real_representation_examples() {
        let r_i = OpExpr::RightMul(Quaternion::I).real_representation().unwrap().0;
        #[rustfmt::skip]
        let expected = RMatrix::from_row_slice(4, 4, &[
            0., -1., 0., 0.,
            1., 0., 0., 0.,
            0., 0., 0., 1.,
            0., 0., -1., 0.,
        ]);
        assert_eq!(r_i, expected);

        let l_i = QMatrix::diag(&[Quaternion::I]).real_representation().0;
        // i x = -b + a i - d j + c k
        #[rustfmt::skip]
        let expected_left = RMatrix::from_row_slice(4, 4, &[
            0., -1., 0., 0.,
            1., 0., 0., 0.,
            0., 0., 0., -1.,
            0., 0., 1., 0.,
        ]);
        assert_eq!(l_i, expected_left);
        assert_ne!(l_i, r_i);

        let qj = QMatrix::diag(&[Quaternion::J]).q_pencil(Quaternion::I);
        assert_eq!(qj.real_representation().0, RMatrix::zeros(4, 4));
    }

    #[test]
    fn real_representation_dimension_checks() {
        let e = OpExpr::Sum(
            Box::new(OpExpr::Matrix(QMatrix::identity(2))),
            Box::new(OpExpr::Matrix(QMatrix::identity(3))),
        );
        assert!(matches!(e.real_representation(), Err(Error::DimensionMismatch { .. })));
        let r = OpExpr::RightMul(Quaternion::J).real_representation_n(3).unwrap();
        assert_eq!(r.0.nrows(), 12);
        assert!(OpExpr::Matrix(QMatrix::identity(2)).real_representation_n(3).is_err());
    }

    #[test]
    fn scalar_products_match_operator_definitions() {
        let a = QMatrix::from_rows(vec![
            vec![q(1.0, 2.0, -3.0, 0.5), q(0.0, 0.0, 1.0, -1.0)],
            vec![q(-2.0, 0.1, 0.2, 0.3), q(4.0, -4.0, 0.0, 9.0)],
        ])
        .unwrap();
        let s = q(0.3, -0.2, 0.9, 0.4);
        let x = vec![q(1.0, -1.0, 0.5, 2.0), q(0.0, 3.0, -1.0, 1.0)];
        // (sA) x = s (A x)
        let lhs = a.scalar_left(s).apply(&x).unwrap();
        let rhs: Vec<_> = a.apply(&x).unwrap().into_iter().map(|v| s * v).collect();
        for (l, r) in lhs.iter().zip(&rhs) {
            assert!((*l - *r).norm() < 1e-12);
        }
        // (As) x = A (s x)
        let lhs = a.scalar_right(s).apply(&x).unwrap();
        let sx: Vec<_> = x.iter().map(|v| s * *v).collect();
        let rhs = a.apply(&sx).unwrap();
        for (l, r) in lhs.iter().zip(&rhs) {
            assert!((*l - *r).norm() < 1e-12);
        }
    }

    #[test]
    fn q_pencil_examples() {
        let a = QMatrix::diag(&[Quaternion::J]);
        assert_eq!(a.q_pencil(Quaternion::I), QMatrix::zeros(1));
        let s = q(1.0, 2.0, -1.0, 0.5);
        assert_eq!(QMatrix::zeros(2).q_pencil(s), QMatrix::scalar(2, Quaternion::real(s.norm_sqr())));
        let b = QMatrix::from_rows(vec![
            vec![q(1.0, 2.0, 0.0, 0.0), q(0.0, 1.0, 1.0, 0.0)],
            vec![q(0.5, 0.0, 0.0, -1.0), q(2.0, 0.0, 3.0, 0.0)],
        ])
        .unwrap();
        let shifted = &b - &QMatrix::identity(2).scale(1.5);
        let sq = &shifted * &shifted;
        assert!(b.q_pencil(Quaternion::real(1.5)).max_abs_diff(&sq) < 1e-14);
    }

    #[test]
    fn delta_examples() {
        let i = c(0.0, 1.0);
        assert_eq!(QMatrix::zeros(1).delta(i), CMatrix::from_diagonal_element(2, 2, i));
        let a = QMatrix::diag(&[Quaternion::I]);
        assert_eq!(
            a.delta(c(0.0, 2.0)),
            CMatrix::from_row_slice(2, 2, &[c(0., 1.), c(0., 0.), c(0., 0.), c(0., 3.)])
        );
        let d = a.delta(i);
        assert_eq!(d, CMatrix::from_row_slice(2, 2, &[c(0., 0.), c(0., 0.), c(0., 0.), c(0., 2.)]));
        assert!(smallest_singular_value_complex(&d) < 1e-15);
    }

    #[test]
    fn pow_and_polynomial() {
        let a = QMatrix::from_rows(vec![
            vec![q(0.0, 1.0, 0.0, 0.0), q(1.0, 0.0, 0.0, 0.0)],
            vec![q(0.0, 0.0, 0.0, 0.0), q(0.0, 0.0, 1.0, 0.0)],
        ])
        .unwrap();
        let a3 = &(&a * &a) * &a;
        assert!(a.pow(3).max_abs_diff(&a3) < 1e-15);
        assert_eq!(a.pow(0), QMatrix::identity(2));
        let p = a.real_polynomial(&[1.0, -2.0, 0.5]);
        let expected = &(&QMatrix::identity(2) - &a.scale(2.0)) + &(&a * &a).scale(0.5);
        assert!(p.max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn inverse_via_adjoint() {
        let a = QMatrix::from_rows(vec![
            vec![q(2.0, 1.0, 0.0, 0.0), q(0.0, 0.0, 1.0, 0.0)],
            vec![q(0.0, 0.0, 0.0, 1.0), q(3.0, 0.0, 0.0, -1.0)],
        ])
        .unwrap();
        let inv = a.inverse().unwrap();
        assert!((&a * &inv).max_abs_diff(&QMatrix::identity(2)) < 1e-14);
        assert!((&inv * &a).max_abs_diff(&QMatrix::identity(2)) < 1e-14);
        assert!(matches!(QMatrix::zeros(2).inverse(), Err(Error::Singular(_))));
    }
}
