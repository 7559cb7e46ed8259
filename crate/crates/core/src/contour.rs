//! Integration contours in the slice `C_i` and trapezoidal quadrature on
//! them.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::operator::CMatrix;
use crate::quaternion::SliceComplex;
use crate::slice::AxSymDomain;
use crate::spectrum::SphereSet;

/// Starting node count per circle.
pub const DEFAULT_NODES: usize = 32;
/// Largest node count per circle before giving up.
pub const NODE_CAP: usize = 1 << 16;
/// Relative change between successive doublings accepted as converged.
pub const QUAD_REL_TOL: f64 = 1e-10;
/// Margin tried first by [`auto_contour`].
pub const START_MARGIN: f64 = 0.5;
const MAX_HALVINGS: usize = 30;

/// Positively oriented circle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Circle {
    pub center: SliceComplex,
    pub radius: f64,
}

impl Circle {
    pub fn new(center: SliceComplex, radius: f64) -> Self {
        Self { center, radius }
    }

    fn overlaps(&self, other: &Circle) -> bool {
        (self.center - other.center).norm() <= self.radius + other.radius
    }

    /// Smallest circle containing both disks.
    fn enclose(&self, other: &Circle) -> Circle {
        let d = (other.center - self.center).norm();
        if d + other.radius <= self.radius {
            return *self;
        }
        if d + self.radius <= other.radius {
            return *other;
        }
        let radius = 0.5 * (d + self.radius + other.radius);
        let center = self.center + (other.center - self.center) * ((radius - self.radius) / d);
        Circle { center, radius }
    }

    /// Point at angle `theta`.
    pub fn point(&self, theta: f64) -> SliceComplex {
        self.center + SliceComplex::from_polar(self.radius, theta)
    }
}

/// Union of disjoint positively oriented circles.
#[derive(Debug, Clone, PartialEq)]
pub struct SliceContour {
    pub circles: Vec<Circle>,
    pub margin: f64,
}

impl SliceContour {
    /// A contour from explicit circles; no enclosure or symmetry checks.
    pub fn new(circles: Vec<Circle>) -> Self {
        let margin = circles.iter().map(|c| c.radius).fold(f64::INFINITY, f64::min);
        Self { circles, margin }
    }

    /// Whether every circle's center has its conjugate among the centers.
    pub fn is_conjugation_closed(&self, tol: f64) -> bool {
        self.circles.iter().all(|c| {
            self.circles.iter().any(|d| {
                (d.center - c.center.conj()).norm() <= tol && (d.radius - c.radius).abs() <= tol
            })
        })
    }

    /// Whether `z` lies strictly inside one of the circles.
    pub fn encloses(&self, z: SliceComplex) -> bool {
        self.circles.iter().any(|c| (z - c.center).norm() < c.radius)
    }
}

/// Circles of radius `margin` around the slice points of `spheres`.
///
/// The two disks of a sphere with `im_norm < margin` become one circle on
/// the real axis, and overlapping disks are replaced by their enclosing
/// circle until the set is disjoint. Circles are built in the closed upper
/// half-plane and mirrored, so the result is conjugation-closed.
pub fn build_contour(spheres: &SphereSet, domain: &AxSymDomain, margin: f64) -> Result<SliceContour> {
    if !(margin > 0.0 && margin.is_finite()) {
        return Err(Error::DomainTooTight(format!("margin {margin} is not positive")));
    }
    let mut upper: Vec<Circle> = spheres
        .iter()
        .map(|(s, _)| Circle::new(SliceComplex::new(s.re, s.im_norm), margin))
        .collect();
    loop {
        let mut changed = false;
        for c in &mut upper {
            if c.center.im > 0.0 && c.radius >= c.center.im {
                *c = Circle::new(SliceComplex::new(c.center.re, 0.0), c.center.im + c.radius);
                changed = true;
            }
        }
        'pairs: for a in 0..upper.len() {
            for b in a + 1..upper.len() {
                if upper[a].overlaps(&upper[b]) {
                    upper[a] = upper[a].enclose(&upper[b]);
                    upper.swap_remove(b);
                    changed = true;
                    break 'pairs;
                }
            }
        }
        if !changed {
            break;
        }
    }

    for c in &upper {
        if let Some(z) = disk_escape(c, domain) {
            return Err(Error::DomainTooTight(format!(
                "disk of radius {} around {} reaches {z}, outside {}",
                c.radius, c.center, domain.description
            )));
        }
    }
    let mut circles = Vec::with_capacity(2 * upper.len());
    for c in upper {
        circles.push(c);
        if c.center.im > 0.0 {
            circles.push(Circle::new(c.center.conj(), c.radius));
        }
    }
    Ok(SliceContour { circles, margin })
}

/// A sample point of the closed disk outside `domain`, if any.
fn disk_escape(c: &Circle, domain: &AxSymDomain) -> Option<SliceComplex> {
    const RINGS: usize = 8;
    const ANGLES: usize = 64;
    if !domain.contains_slice(c.center) {
        return Some(c.center);
    }
    for ring in 1..=RINGS {
        let r = c.radius * ring as f64 / RINGS as f64;
        for k in 0..ANGLES {
            let z = c.center + SliceComplex::from_polar(r, 2.0 * PI * k as f64 / ANGLES as f64);
            if !domain.contains_slice(z) {
                return Some(z);
            }
        }
    }
    None
}

/// Contour for `spheres` inside `domain`, halving the margin from
/// [`START_MARGIN`] until disks of twice the margin fit.
///
/// The extra room keeps the integrand analytic well beyond the contour,
/// which is what makes trapezoidal quadrature converge fast.
pub fn auto_contour(spheres: &SphereSet, domain: &AxSymDomain) -> Result<SliceContour> {
    let mut margin = START_MARGIN;
    let mut last = None;
    for _ in 0..MAX_HALVINGS {
        match build_contour(spheres, domain, 2.0 * margin) {
            Ok(_) => return build_contour(spheres, domain, margin),
            Err(e @ Error::DomainTooTight(_)) => last = Some(e),
            Err(e) => return Err(e),
        }
        margin *= 0.5;
    }
    Err(last.unwrap_or_else(|| Error::DomainTooTight("no admissible margin".into())))
}

/// Values that can be summed by the quadrature.
pub trait QuadValue: Sized {
    fn add(&self, other: &Self) -> Self;
    fn scale(&self, s: f64) -> Self;
    fn norm(&self) -> f64;
    fn is_finite(&self) -> bool;
}

impl QuadValue for CMatrix {
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn scale(&self, s: f64) -> Self {
        self * SliceComplex::new(s, 0.0)
    }
    fn norm(&self) -> f64 {
        CMatrix::norm(self)
    }
    fn is_finite(&self) -> bool {
        self.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

impl QuadValue for crate::operator::QMatrix {
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn scale(&self, s: f64) -> Self {
        crate::operator::QMatrix::scale(self, s)
    }
    fn norm(&self) -> f64 {
        crate::operator::QMatrix::norm(self)
    }
    fn is_finite(&self) -> bool {
        crate::operator::QMatrix::is_finite(self)
    }
}

/// Converged quadrature value.
#[derive(Debug, Clone)]
pub struct Quadrature<T> {
    pub value: T,
    /// Final node count per circle.
    pub nodes: usize,
    /// Norm of the change at the last doubling.
    pub change: f64,
}

/// `sum over circles of (1/2pi) int_0^2pi g(z(theta), z(theta) - c) dtheta`
/// by the trapezoidal rule, doubling the node count (old nodes reused)
/// until two successive values agree to [`QUAD_REL_TOL`] relative, up to
/// roundoff in the summands.
///
/// `g` receives the node `z` and the radial vector `z - c = r e^(i theta)`.
pub fn adaptive_trapezoid<T: QuadValue>(
    contour: &SliceContour,
    start_nodes: usize,
    mut g: impl FnMut(SliceComplex, SliceComplex) -> Result<T>,
) -> Result<Quadrature<T>> {
    let mut n = start_nodes.max(4);
    // per circle: running sum over all nodes so far
    let mut sums: Vec<Option<T>> = contour.circles.iter().map(|_| None).collect();
    let mut abs_sum = 0.0;
    let mut prev: Option<T> = None;
    let mut doublings = 0;
    loop {
        // new nodes: all of them on the first pass, odd multiples afterwards
        let (first, stride) = if prev.is_none() { (0, 1) } else { (1, 2) };
        for (ci, c) in contour.circles.iter().enumerate() {
            let mut k = first;
            while k < n {
                let theta = 2.0 * PI * k as f64 / n as f64;
                let radial = SliceComplex::from_polar(c.radius, theta);
                let v = g(c.center + radial, radial)?;
                if !v.is_finite() {
                    return Err(Error::SingularNode(format!("non-finite integrand at {}", c.center + radial)));
                }
                abs_sum += v.norm();
                sums[ci] = Some(match &sums[ci] {
                    Some(s) => s.add(&v),
                    None => v,
                });
                k += stride;
            }
        }
        let mut total: Option<T> = None;
        for s in sums.iter().flatten() {
            let part = s.scale(1.0 / n as f64);
            total = Some(match total {
                Some(t) => t.add(&part),
                None => part,
            });
        }
        let total = total.ok_or_else(|| Error::SingularNode("contour has no circles".into()))?;
        if let Some(p) = &prev {
            let change = total.add(&p.scale(-1.0)).norm();
            let floor = 100.0 * f64::EPSILON * abs_sum / n as f64;
            if doublings >= 1 && change <= QUAD_REL_TOL * total.norm() + floor {
                return Ok(Quadrature { value: total, nodes: n, change });
            }
            if 2 * n > NODE_CAP {
                return Err(Error::QuadratureStalled { nodes: n, change });
            }
        }
        prev = Some(total);
        n *= 2;
        doublings += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quaternion::Sphere;
    use crate::slice::BoundingBox;

    fn plane() -> AxSymDomain {
        AxSymDomain::everywhere(BoundingBox::new(-4.0, 4.0, 4.0))
    }

    fn set(items: &[(f64, f64)]) -> SphereSet {
        let v: Vec<(Sphere, usize)> = items.iter().map(|&(a, b)| (Sphere::new(a, b), 1)).collect();
        SphereSet::from_spheres(&v, 1e-12)
    }

    fn c(re: f64, im: f64) -> SliceComplex {
        SliceComplex::new(re, im)
    }

    #[test]
    fn contour_examples() {
        let k = build_contour(&set(&[(0.0, 1.0)]), &plane(), 0.3).unwrap();
        assert_eq!(k.circles, vec![Circle::new(c(0.0, 1.0), 0.3), Circle::new(c(0.0, -1.0), 0.3)]);

        let k = build_contour(&set(&[(1.0, 0.0)]), &plane(), 0.2).unwrap();
        assert_eq!(k.circles, vec![Circle::new(c(1.0, 0.0), 0.2)]);

        let k = build_contour(&set(&[(0.0, 0.1)]), &plane(), 0.3).unwrap();
        assert_eq!(k.circles.len(), 1);
        assert!((k.circles[0].center - c(0.0, 0.0)).norm() < 1e-15);
        assert!((k.circles[0].radius - 0.4).abs() < 1e-15);
    }

    #[test]
    fn overlapping_spheres_merge_symmetrically() {
        let k = build_contour(&set(&[(0.0, 1.0), (0.4, 1.0), (3.0, 0.0)]), &plane(), 0.3).unwrap();
        assert_eq!(k.circles.len(), 3);
        assert!(k.is_conjugation_closed(1e-14));
        for z in [c(0.0, 1.0), c(0.4, 1.0), c(0.0, -1.0), c(0.4, -1.0), c(3.0, 0.0)] {
            assert!(k.encloses(z));
        }
        for (a, ca) in k.circles.iter().enumerate() {
            for cb in &k.circles[a + 1..] {
                assert!(!ca.overlaps(cb));
            }
        }
    }

    #[test]
    fn domain_too_tight() {
        let cut = AxSymDomain::new("off cut", BoundingBox::new(-4.0, 4.0, 4.0), |a, b| a > 0.0 || b > 1e-6);
        assert!(matches!(
            build_contour(&set(&[(0.1, 0.0)]), &cut, 0.3),
            Err(Error::DomainTooTight(_))
        ));
        let k = auto_contour(&set(&[(0.1, 0.0)]), &cut).unwrap();
        assert!(2.0 * k.margin < 0.1 && k.margin > 0.02);
        assert!(build_contour(&set(&[(1.0, 0.0)]), &plane(), 0.0).is_err());
    }

    #[test]
    fn trapezoid_cauchy_integrals() {
        // (1/2 pi i) int dz / z = 1 around the origin
        let k = SliceContour::new(vec![Circle::new(c(0.0, 0.0), 0.5)]);
        let q = adaptive_trapezoid(&k, 8, |z, radial| {
            let v = radial / z; // dz/(2 pi i) = radial dtheta / 2 pi
            Ok(CMatrix::from_element(1, 1, v))
        })
        .unwrap();
        assert!((q.value[(0, 0)] - 1.0).norm() < 1e-15);

        // (1/2 pi i) int e^z / (z - 0.1) dz = e^0.1
        let q = adaptive_trapezoid(&k, 8, |z, radial| {
            Ok(CMatrix::from_element(1, 1, z.exp() * radial / (z - 0.1)))
        })
        .unwrap();
        assert!((q.value[(0, 0)] - 0.1f64.exp()).norm() < 1e-14);
        assert!(q.change < 1e-10);
    }

    #[test]
    fn trapezoid_stalls_on_non_analytic_integrand() {
        let k = SliceContour::new(vec![Circle::new(c(0.0, 0.0), 1.0)]);
        let r = adaptive_trapezoid(&k, 8, |z, _| {
            Ok(CMatrix::from_element(1, 1, c(z.im.abs().sqrt(), 0.0)))
        });
        assert!(matches!(r, Err(Error::QuadratureStalled { .. })));
    }
}
