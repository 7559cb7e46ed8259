//! Slice functions on axially symmetric domains, represented by their stem
//! functions.
//!
//! A slice function is determined by two maps `f0, f1` on the parameter set
//! `{(alpha, beta) : alpha + beta S in U}`. Left functions evaluate as
//! `f(alpha + beta J) = f0 + J f1`, right functions as `f0 + f1 J`, and
//! intrinsic functions have real-valued stems so both agree. Stems are only
//! ever sampled at `beta >= 0`; negative `beta` is reached through the
//! parity extension `f0` even, `f1` odd.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::quaternion::{Quaternion, SliceComplex};

pub type StemFn = Arc<dyn Fn(f64, f64) -> Quaternion + Send + Sync>;
pub type HoloFn = Arc<dyn Fn(SliceComplex) -> SliceComplex + Send + Sync>;
type Predicate = Arc<dyn Fn(f64, f64) -> bool + Send + Sync>;

/// Tolerance of the conjugate-symmetry check in
/// [`StemFunction::from_holomorphic_intrinsic`].
pub const SYMMETRY_TOL: f64 = 1e-10;

/// Sampling box of the parameter half-plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundingBox {
    pub alpha_min: f64,
    pub alpha_max: f64,
    pub beta_max: f64,
}

impl BoundingBox {
    pub fn new(alpha_min: f64, alpha_max: f64, beta_max: f64) -> Self {
        Self {
            alpha_min,
            alpha_max,
            beta_max,
        }
    }

    pub fn is_empty(&self) -> bool {
        !(self.alpha_max > self.alpha_min && self.beta_max > 0.0)
    }

    pub fn size(&self) -> f64 {
        (self.alpha_max - self.alpha_min).max(self.beta_max)
    }
}

/// Axially symmetric open set, described by its parameter set.
#[derive(Clone)]
pub struct AxSymDomain {
    contains: Predicate,
    pub bbox: BoundingBox,
    pub description: String,
}

impl AxSymDomain {
    pub fn new(
        description: impl Into<String>,
        bbox: BoundingBox,
        contains: impl Fn(f64, f64) -> bool + Send + Sync + 'static,
    ) -> Self {
        Self {
            contains: Arc::new(contains),
            bbox,
            description: description.into(),
        }
    }

    /// All of `H`, sampled on `bbox`.
    pub fn everywhere(bbox: BoundingBox) -> Self {
        Self::new("H", bbox, |_, _| true)
    }

    /// Whether `alpha + beta S` lies in the set; only `|beta|` matters.
    pub fn contains(&self, alpha: f64, beta: f64) -> bool {
        alpha.is_finite() && beta.is_finite() && (self.contains)(alpha, beta.abs())
    }

    pub fn contains_slice(&self, z: SliceComplex) -> bool {
        self.contains(z.re, z.im)
    }

    pub fn contains_quaternion(&self, q: Quaternion) -> bool {
        self.contains(q.re(), q.im_norm())
    }

    /// Points `(alpha, beta)` of `{u in self : (g0(u), |g1(u)|) in outer}`.
    pub fn preimage(&self, inner: &StemFunction, outer: &AxSymDomain) -> AxSymDomain {
        let this = self.clone();
        let inner = inner.clone();
        let outer = outer.clone();
        let description = format!("{} mapped into {}", self.description, outer.description);
        AxSymDomain::new(description, self.bbox, move |a, b| {
            if !this.contains(a, b) {
                return false;
            }
            let (u0, u1) = inner.stems(a, b);
            outer.contains(u0.re(), u1.re())
        })
    }

    pub fn intersect(&self, other: &AxSymDomain) -> AxSymDomain {
        let (p, q) = (self.clone(), other.clone());
        let bbox = BoundingBox::new(
            self.bbox.alpha_min.max(other.bbox.alpha_min),
            self.bbox.alpha_max.min(other.bbox.alpha_max),
            self.bbox.beta_max.min(other.bbox.beta_max),
        );
        AxSymDomain::new(
            format!("{} and {}", self.description, other.description),
            bbox,
            move |a, b| p.contains(a, b) && q.contains(a, b),
        )
    }
}

impl fmt::Debug for AxSymDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AxSymDomain")
            .field("description", &self.description)
            .field("bbox", &self.bbox)
            .finish()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    /// `f0 + J f1`
    Left,
    /// `f0 + f1 J`
    Right,
    /// Real-valued stems; left and right readings coincide.
    Intrinsic,
}

/// A slice function given by its stems.
///
/// The stem callables must be pure: they are sampled repeatedly and
/// possibly from several threads.
#[derive(Clone)]
pub struct StemFunction {
    f0: StemFn,
    f1: StemFn,
    pub domain: AxSymDomain,
    pub kind: Kind,
    pub name: String,
}

impl fmt::Debug for StemFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("StemFunction")
            .field("name", &self.name)
            .field("kind", &self.kind)
            .field("domain", &self.domain)
            .finish()
    }
}

/// Outcome of [`StemFunction::validate`].
#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub compatibility_residual: f64,
    pub cauchy_riemann_residual: f64,
    /// `None` unless the function claims to be intrinsic.
    pub intrinsic_residual: Option<f64>,
    pub samples: usize,
    pub compatibility_pass: bool,
    pub cauchy_riemann_pass: bool,
    pub intrinsic_pass: bool,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.compatibility_pass && self.cauchy_riemann_pass && self.intrinsic_pass
    }
}

impl StemFunction {
    /// Builds a function from stems given on `beta >= 0`.
    pub fn new(
        name: impl Into<String>,
        kind: Kind,
        domain: AxSymDomain,
        f0: impl Fn(f64, f64) -> Quaternion + Send + Sync + 'static,
        f1: impl Fn(f64, f64) -> Quaternion + Send + Sync + 'static,
    ) -> Self {
        Self {
            f0: Arc::new(f0),
            f1: Arc::new(f1),
            domain,
            kind,
            name: name.into(),
        }
    }

    /// `f0 = alpha`, `f1 = beta`.
    pub fn identity(domain: AxSymDomain) -> Self {
        Self::new("q", Kind::Intrinsic, domain, |a, _| Quaternion::real(a), |_, b| {
            Quaternion::real(b)
        })
    }

    pub fn zero(domain: AxSymDomain) -> Self {
        Self::new("0", Kind::Intrinsic, domain, |_, _| Quaternion::ZERO, |_, _| Quaternion::ZERO)
    }

    /// The intrinsic extension of a holomorphic `h` with
    /// `h(conj z) = conj h(z)`:
    /// `f0 = (h(z) + h(conj z))/2`, `f1 = (h(z) - h(conj z))/(2i)`.
    ///
    /// The symmetry is checked at up to 64 grid points of the bounding box.
    pub fn from_holomorphic_intrinsic(
        name: impl Into<String>,
        h: impl Fn(SliceComplex) -> SliceComplex + Send + Sync + 'static,
        domain: AxSymDomain,
    ) -> Result<Self> {
        let name = name.into();
        let bb = domain.bbox;
        let mut checked = 0;
        for ia in 0..8 {
            for ib in 0..8 {
                let alpha = bb.alpha_min + (bb.alpha_max - bb.alpha_min) * (ia as f64 + 0.5) / 8.0;
                let beta = bb.beta_max * (ib as f64 + 0.5) / 8.0;
                if !domain.contains(alpha, beta) {
                    continue;
                }
                let z = SliceComplex::new(alpha, beta);
                let hz = h(z);
                let hc = h(z.conj());
                checked += 1;
                if (hc - hz.conj()).norm() > SYMMETRY_TOL * (1.0 + hz.norm()) {
                    return Err(Error::NotIntrinsic(format!(
                        "{name}: h(conj z) != conj h(z) at z = {z}"
                    )));
                }
            }
        }
        if checked == 0 {
            return Err(Error::OutOfDomain {
                alpha: bb.alpha_min,
                beta: 0.0,
                domain: domain.description.clone(),
            });
        }
        let h = Arc::new(h);
        let h1 = Arc::clone(&h);
        let i = SliceComplex::new(0.0, 1.0);
        Ok(Self::new(
            name,
            Kind::Intrinsic,
            domain,
            move |a, b| {
                let z = SliceComplex::new(a, b);
                Quaternion::from_slice((h(z) + h(z.conj())) * 0.5)
            },
            move |a, b| {
                let z = SliceComplex::new(a, b);
                Quaternion::from_slice((h1(z) - h1(z.conj())) / (i * 2.0))
            },
        ))
    }

    /// Stem values at `(alpha, beta)`, extended to `beta < 0` by parity.
    pub fn stems(&self, alpha: f64, beta: f64) -> (Quaternion, Quaternion) {
        if beta < 0.0 {
            ((self.f0)(alpha, -beta), -(self.f1)(alpha, -beta))
        } else {
            ((self.f0)(alpha, beta), (self.f1)(alpha, beta))
        }
    }

    pub fn renamed(self, name: impl Into<String>) -> Self {
        Self { name: name.into(), ..self }
    }

    pub fn is_intrinsic(&self) -> bool {
        self.kind == Kind::Intrinsic
    }

    /// `f(q)`.
    ///
    /// At real `q` the imaginary unit is undefined; compatibility forces
    /// `f1(alpha, 0) = 0` there, so the value is `f0`.
    pub fn eval(&self, q: Quaternion) -> Result<Quaternion> {
        let alpha = q.re();
        let beta = q.im_norm();
        if !self.domain.contains(alpha, beta) {
            return Err(Error::OutOfDomain {
                alpha,
                beta,
                domain: self.domain.description.clone(),
            });
        }
        let (f0, f1) = self.stems(alpha, beta);
        if beta == 0.0 {
            return Ok(f0);
        }
        let unit = q.im() * (1.0 / beta);
        Ok(match self.kind {
            Kind::Left | Kind::Intrinsic => f0 + unit * f1,
            Kind::Right => f0 + f1 * unit,
        })
    }

    /// Restriction of an intrinsic function to `C_i`.
    pub fn restrict_to_slice(&self) -> Result<HoloFn> {
        if !self.is_intrinsic() {
            return Err(Error::NotIntrinsic(format!("{} is {:?}", self.name, self.kind)));
        }
        let f = self.clone();
        Ok(Arc::new(move |z: SliceComplex| {
            let (f0, f1) = f.stems(z.re, z.im);
            (f0 + Quaternion::I * f1).slice_part()
        }))
    }

    /// Splits a left or right function into four intrinsic functions along
    /// the basis `{1, i, j, k}`.
    ///
    /// A right function recombines as `g1 + i g2 + j g3 + k g4`, a left one
    /// as `g1 + g2 i + g3 j + g4 k`; see [`recombine`].
    pub fn decompose(&self) -> [StemFunction; 4] {
        std::array::from_fn(|m| {
            let (a, b) = (Arc::clone(&self.f0), Arc::clone(&self.f1));
            StemFunction::new(
                format!("{}[{}]", self.name, ["1", "i", "j", "k"][m]),
                Kind::Intrinsic,
                self.domain.clone(),
                move |x, y| Quaternion::real(a(x, y).component(m)),
                move |x, y| Quaternion::real(b(x, y).component(m)),
            )
        })
    }

    /// `a f` for an intrinsic `f`: a right function.
    pub fn with_left_coefficient(&self, coeff: Quaternion) -> Result<Self> {
        self.require_intrinsic("left coefficient")?;
        let (a, b) = (Arc::clone(&self.f0), Arc::clone(&self.f1));
        Ok(StemFunction::new(
            format!("({coeff})*{}", self.name),
            Kind::Right,
            self.domain.clone(),
            move |x, y| coeff * a(x, y),
            move |x, y| coeff * b(x, y),
        ))
    }

    /// `f a` for an intrinsic `f`: a left function.
    pub fn with_right_coefficient(&self, coeff: Quaternion) -> Result<Self> {
        self.require_intrinsic("right coefficient")?;
        let (a, b) = (Arc::clone(&self.f0), Arc::clone(&self.f1));
        Ok(StemFunction::new(
            format!("{}*({coeff})", self.name),
            Kind::Left,
            self.domain.clone(),
            move |x, y| a(x, y) * coeff,
            move |x, y| b(x, y) * coeff,
        ))
    }

    /// Pointwise product `f g`, defined when it is again a slice function:
    /// intrinsic times intrinsic or left, and right times intrinsic.
    ///
    /// With one factor real-valued the stems multiply like complex numbers:
    /// `(fg)0 = f0 g0 - f1 g1`, `(fg)1 = f0 g1 + f1 g0`.
    pub fn product(&self, other: &StemFunction) -> Result<Self> {
        let kind = match (self.kind, other.kind) {
            (Kind::Intrinsic, Kind::Intrinsic) => Kind::Intrinsic,
            (Kind::Intrinsic, Kind::Left) => Kind::Left,
            (Kind::Right, Kind::Intrinsic) => Kind::Right,
            (k1, k2) => {
                return Err(Error::KindMismatch(format!(
                    "product of {k1:?} and {k2:?} functions is not a slice function"
                )))
            }
        };
        let (f, g) = (self.clone(), other.clone());
        let (f2, g2) = (self.clone(), other.clone());
        Ok(StemFunction::new(
            format!("({})*({})", self.name, other.name),
            kind,
            self.domain.intersect(&other.domain),
            move |a, b| {
                let (f0, f1) = f.stems(a, b);
                let (g0, g1) = g.stems(a, b);
                f0 * g0 - f1 * g1
            },
            move |a, b| {
                let (f0, f1) = f2.stems(a, b);
                let (g0, g1) = g2.stems(a, b);
                f0 * g1 + f1 * g0
            },
        ))
    }

    /// `self o inner` for an intrinsic `inner`.
    ///
    /// `inner` maps `alpha + beta J` to `u0 + u1 J` in the same slice, so
    /// the composite has stems `(g0(u0, u1), g1(u0, u1))`, with the parity
    /// extension taking care of `u1 < 0`.
    pub fn compose(&self, inner: &StemFunction) -> Result<Self> {
        inner.require_intrinsic("inner function of a composition")?;
        let (g, f) = (self.clone(), inner.clone());
        let (g2, f2) = (self.clone(), inner.clone());
        Ok(StemFunction::new(
            format!("{}o{}", self.name, inner.name),
            self.kind,
            inner.domain.preimage(inner, &self.domain),
            move |a, b| {
                let (u0, u1) = f.stems(a, b);
                g.stems(u0.re(), u1.re()).0
            },
            move |a, b| {
                let (u0, u1) = f2.stems(a, b);
                g2.stems(u0.re(), u1.re()).1
            },
        ))
    }

    fn require_intrinsic(&self, what: &str) -> Result<()> {
        if self.is_intrinsic() {
            Ok(())
        } else {
            Err(Error::NotIntrinsic(format!("{what}: {} is {:?}", self.name, self.kind)))
        }
    }

    /// Finite-difference check of the structural conditions on the sampling
    /// box: `f1(alpha, 0) = 0`, the Cauchy-Riemann system, and real-valued
    /// stems for intrinsic functions. Points whose stencil leaves the
    /// domain are skipped.
    pub fn validate(&self, grid_step: f64, fd_step: f64, tol: f64) -> ValidationReport {
        let bb = self.domain.bbox;
        let na = (((bb.alpha_max - bb.alpha_min) / grid_step).round() as usize).max(1);
        let nb = ((bb.beta_max / grid_step).round() as usize).max(1);
        let h = fd_step;

        let mut compat: f64 = 0.0;
        for ia in 0..=na {
            let alpha = bb.alpha_min + (bb.alpha_max - bb.alpha_min) * ia as f64 / na as f64;
            if self.domain.contains(alpha, 0.0) {
                compat = compat.max(self.stems(alpha, 0.0).1.norm());
            }
        }

        let mut cr: f64 = 0.0;
        let mut imag: f64 = 0.0;
        let mut samples = 0;
        for ia in 1..na {
            for ib in 1..nb {
                let alpha = bb.alpha_min + (bb.alpha_max - bb.alpha_min) * ia as f64 / na as f64;
                let beta = bb.beta_max * ib as f64 / nb as f64;
                let stencil = [(0.0, 0.0), (h, 0.0), (-h, 0.0), (0.0, h), (0.0, -h)];
                if !stencil.iter().all(|(da, db)| self.domain.contains(alpha + da, beta + db)) {
                    continue;
                }
                samples += 1;
                let (pa0, pa1) = self.stems(alpha + h, beta);
                let (ma0, ma1) = self.stems(alpha - h, beta);
                let (pb0, pb1) = self.stems(alpha, beta + h);
                let (mb0, mb1) = self.stems(alpha, beta - h);
                let d_a_f0 = (pa0 - ma0) * (0.5 / h);
                let d_a_f1 = (pa1 - ma1) * (0.5 / h);
                let d_b_f0 = (pb0 - mb0) * (0.5 / h);
                let d_b_f1 = (pb1 - mb1) * (0.5 / h);
                cr = cr.max((d_a_f0 - d_b_f1).norm()).max((d_b_f0 + d_a_f1).norm());
                if self.is_intrinsic() {
                    let (f0, f1) = self.stems(alpha, beta);
                    imag = imag.max(f0.im_norm()).max(f1.im_norm());
                }
            }
        }
        let intrinsic_residual = self.is_intrinsic().then_some(imag);
        ValidationReport {
            compatibility_residual: compat,
            cauchy_riemann_residual: cr,
            intrinsic_residual,
            samples,
            compatibility_pass: compat <= tol,
            cauchy_riemann_pass: cr <= tol,
            intrinsic_pass: intrinsic_residual.is_none_or(|r| r <= tol),
        }
    }

    /// [`validate`](Self::validate) on a 32x32 grid with a finite-difference
    /// step of `1e-5` times the box size.
    pub fn validate_default(&self, tol: f64) -> ValidationReport {
        let size = self.domain.bbox.size();
        self.validate(size / 32.0, 1e-5 * size, tol)
    }
}

/// Reassembles values of the four intrinsic parts of a left or right
/// function: `sum e_m p_m` for right, `sum p_m e_m` for left.
pub fn recombine(kind: Kind, parts: &[Quaternion; 4]) -> Quaternion {
    Quaternion::BASIS
        .iter()
        .zip(parts)
        .map(|(&e, &p)| match kind {
            Kind::Right | Kind::Intrinsic => e * p,
            Kind::Left => p * e,
        })
        .sum()
}
