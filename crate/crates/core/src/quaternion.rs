//! Real quaternions, conjugation spheres and the distinguished slice `C_i`.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// An element `alpha + beta i` of the distinguished slice `C_i`.
///
/// The slice is fixed once for the whole crate as the `(a, b)`-plane of
/// `H`, so a plain complex number is the natural representation.
pub type SliceComplex = Complex64;

/// Below this norm a quaternion is treated as zero by [`Quaternion::inv`].
pub const INV_EPSILON: f64 = 1e-300;

/// `q = a + b i + c j + d k`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Quaternion {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

/// The conjugation class `[q] = Re(q) + |Im(q)| S`.
///
/// `im_norm == 0` encodes a real point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sphere {
    pub re: f64,
    pub im_norm: f64,
}

/// Decomposition returned by [`Quaternion::parts`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Parts {
    pub conj: Quaternion,
    pub norm: f64,
    pub re: f64,
    pub im: Quaternion,
}

impl Quaternion {
    pub const ZERO: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Quaternion = Quaternion::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Quaternion = Quaternion::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Quaternion = Quaternion::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 1.0);

    /// The basis `{1, i, j, k}` in component order.
    pub const BASIS: [Quaternion; 4] = [Self::ONE, Self::I, Self::J, Self::K];

    #[inline]
    pub const fn new(a: f64, b: f64, c: f64, d: f64) -> Self {
        Self { a, b, c, d }
    }

    #[inline]
    pub const fn real(a: f64) -> Self {
        Self::new(a, 0.0, 0.0, 0.0)
    }

    /// Embeds `alpha + beta i` of the distinguished slice.
    #[inline]
    pub fn from_slice(z: SliceComplex) -> Self {
        Self::new(z.re, z.im, 0.0, 0.0)
    }

    #[inline]
    pub fn from_array(v: [f64; 4]) -> Self {
        Self::new(v[0], v[1], v[2], v[3])
    }

    #[inline]
    pub fn to_array(self) -> [f64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    /// Component along the basis element with the given index (0 = real).
    #[inline]
    pub fn component(self, m: usize) -> f64 {
        self.to_array()[m]
    }

    #[inline]
    pub fn conj(self) -> Self {
        Self::new(self.a, -self.b, -self.c, -self.d)
    }

    #[inline]
    pub fn norm_sqr(self) -> f64 {
        self.a * self.a + self.b * self.b + self.c * self.c + self.d * self.d
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.norm_sqr().sqrt()
    }

    #[inline]
    pub fn re(self) -> f64 {
        self.a
    }

    #[inline]
    pub fn im(self) -> Self {
        Self::new(0.0, self.b, self.c, self.d)
    }

    #[inline]
    pub fn im_norm(self) -> f64 {
        (self.b * self.b + self.c * self.c + self.d * self.d).sqrt()
    }

    pub fn parts(self) -> Parts {
        Parts {
            conj: self.conj(),
            norm: self.norm(),
            re: self.re(),
            im: self.im(),
        }
    }

    /// Projection onto the distinguished slice, discarding `j` and `k`.
    #[inline]
    pub fn slice_part(self) -> SliceComplex {
        SliceComplex::new(self.a, self.b)
    }

    pub fn is_finite(self) -> bool {
        self.a.is_finite() && self.b.is_finite() && self.c.is_finite() && self.d.is_finite()
    }

    pub fn inv(self) -> Result<Self> {
        let n2 = self.norm_sqr();
        if self.norm() < INV_EPSILON || n2 == 0.0 {
            return Err(Error::ZeroDivisor(self.norm()));
        }
        Ok(self.conj() * (1.0 / n2))
    }

    /// Non-negative integer power by repeated squaring.
    pub fn powi(self, n: u32) -> Self {
        let mut result = Self::ONE;
        let mut base = self;
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                result *= base;
            }
            base = base * base;
            e >>= 1;
        }
        result
    }

    pub fn sphere(self) -> Sphere {
        Sphere {
            re: self.a,
            im_norm: self.im_norm(),
        }
    }

    /// Finds a unit `s` with `s q s^-1 = Re(q) + |Im(q)| i`.
    ///
    /// For `u = Im(q)/|Im(q)|` the conjugator is the half-turn about the
    /// bisector of `u` and `i`, i.e. `s = (i + u)/|i + u|`. Directions close
    /// to `-i` are first moved by `j` (which sends `-i` to `i`) so the
    /// bisector never degenerates.
    pub fn rotate_to_slice(self) -> (Quaternion, SliceComplex) {
        let im_norm = self.im_norm();
        let z = SliceComplex::new(self.a, im_norm);
        if im_norm == 0.0 {
            return (Self::ONE, z);
        }
        let u = self.im() * (1.0 / im_norm);
        let w = Self::I + u;
        let s = if (u - Self::I).norm() <= f64::EPSILON {
            Self::ONE
        } else if w.norm() >= 0.5 {
            w * (1.0 / w.norm())
        } else {
            // u is near -i; j u j^-1 is near +i.
            let u2 = Self::J * u * Self::J.conj();
            let w2 = Self::I + u2;
            let s2 = if (u2 - Self::I).norm() <= f64::EPSILON {
                Self::ONE
            } else {
                w2 * (1.0 / w2.norm())
            };
            s2 * Self::J
        };
        (s, z)
    }

    /// `max(|a|,|b|,|c|,|d|)`.
    pub fn max_abs(self) -> f64 {
        self.a.abs().max(self.b.abs()).max(self.c.abs()).max(self.d.abs())
    }
}

impl Sphere {
    pub fn new(re: f64, im_norm: f64) -> Self {
        Self {
            re,
            im_norm: im_norm.abs(),
        }
    }

    /// Upper representative `re + im_norm i` in the distinguished slice.
    pub fn representative(self) -> SliceComplex {
        SliceComplex::new(self.re, self.im_norm)
    }

    /// Largest modulus of a point on the sphere (all points share it).
    pub fn radius(self) -> f64 {
        self.re.hypot(self.im_norm)
    }

    pub fn is_real(self, tol: f64) -> bool {
        self.im_norm <= tol
    }

    /// Distance between sphere parameters in the `(re, im_norm)` half-plane.
    pub fn param_distance(self, other: Sphere) -> f64 {
        (self.re - other.re).hypot(self.im_norm - other.im_norm)
    }

    /// Euclidean distance in `H` from a real number to the nearest point of
    /// the sphere. Every point of the sphere is equidistant from the real
    /// axis point, so this is exact.
    pub fn distance_to_real(self, alpha: f64) -> f64 {
        (self.re - alpha).hypot(self.im_norm)
    }

    pub fn contains(self, q: Quaternion, tol: f64) -> bool {
        self.param_distance(q.sphere()) <= tol
    }
}

impl From<f64> for Quaternion {
    fn from(a: f64) -> Self {
        Self::real(a)
    }
}

impl From<SliceComplex> for Quaternion {
    fn from(z: SliceComplex) -> Self {
        Self::from_slice(z)
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}i + {}j + {}k", self.a, self.b, self.c, self.d)
    }
}

impl Add for Quaternion {
    type Output = Self;
    #[inline]
    fn add(self, o: Self) -> Self {
        Self::new(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)
    }
}

impl Sub for Quaternion {
    type Output = Self;
    #[inline]
    fn sub(self, o: Self) -> Self {
        Self::new(self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d)
    }
}

impl Neg for Quaternion {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Self::new(-self.a, -self.b, -self.c, -self.d)
    }
}

/// Hamilton product.
impl Mul for Quaternion {
    type Output = Self;
    #[inline]
    fn mul(self, o: Self) -> Self {
        let (a1, b1, c1, d1) = (self.a, self.b, self.c, self.d);
        let (a2, b2, c2, d2) = (o.a, o.b, o.c, o.d);
        Self::new(
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        )
    }
}

impl Mul<f64> for Quaternion {
    type Output = Self;
    #[inline]
    fn mul(self, s: f64) -> Self {
        Self::new(self.a * s, self.b * s, self.c * s, self.d * s)
    }
}

impl Mul<Quaternion> for f64 {
    type Output = Quaternion;
    #[inline]
    fn mul(self, q: Quaternion) -> Quaternion {
        q * self
    }
}

impl Div<f64> for Quaternion {
    type Output = Self;
    #[inline]
    fn div(self, s: f64) -> Self {
        Self::new(self.a / s, self.b / s, self.c / s, self.d / s)
    }
}

impl AddAssign for Quaternion {
    #[inline]
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl SubAssign for Quaternion {
    #[inline]
    fn sub_assign(&mut self, o: Self) {
        *self = *self - o;
    }
}

impl MulAssign for Quaternion {
    #[inline]
    fn mul_assign(&mut self, o: Self) {
        *self = *self * o;
    }
}

impl std::iter::Sum for Quaternion {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::ZERO, |acc, q| acc + q)
    }
}
