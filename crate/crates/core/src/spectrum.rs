//! S-spectrum, S-spectral radius, pseudo-resolvent inverses and
//! S-resolvents of quaternionic matrices.
//!
//! Everything spectral goes through the complex adjoint: the S-spectrum is
//! the set of conjugation spheres of the eigenvalues of `chi(A)`. The
//! quaternionic routes (real representation, Neumann and resolvent series)
//! are kept alongside as independent checks.

use std::fmt;
use std::str::FromStr;

use crate::eigen::eigenvalues;
use crate::error::{Error, Result};
use crate::operator::{invert_complex, smallest_singular_value_complex, smallest_singular_value_real, QMatrix};
use crate::quaternion::{Quaternion, SliceComplex, Sphere};

/// Residual tolerance handed to the eigensolver.
pub const EIGEN_TOL: f64 = 1e-9;
/// Relative sphere clustering tolerance, scaled by `1 + ||A||`.
pub const CLUSTER_SCALE: f64 = 1e-8;
/// Relative singularity threshold for `Q_q(A)`, scaled by `1 + ||A||^2`.
pub const SINGULAR_SCALE: f64 = 1e-10;
/// Hard cap on the number of series terms.
pub const SERIES_TERM_CAP: usize = 1_000_000;
/// Power-method halting threshold on successive estimates.
pub const POWER_REL_CHANGE: f64 = 0.01;
const POWER_MAX_SQUARINGS: usize = 64;

pub fn cluster_tolerance(a: &QMatrix) -> f64 {
    CLUSTER_SCALE * (1.0 + a.norm())
}

pub fn singular_threshold(a: &QMatrix) -> f64 {
    SINGULAR_SCALE * (1.0 + a.norm().powi(2))
}

/// Finite multiset of conjugation spheres.
#[derive(Debug, Clone, PartialEq)]
pub struct SphereSet {
    pub spheres: Vec<(Sphere, usize)>,
    pub tol: f64,
}

impl SphereSet {
    /// Groups the eigenvalues of a complex adjoint into spheres.
    ///
    /// Clustering is single-linkage on `(Re, |Im|)` at distance `tol`. A
    /// non-real cluster contributes one unit of multiplicity per eigenvalue
    /// in the upper half-plane; a real cluster contributes half its size,
    /// which must therefore be even.
    pub fn from_eigenvalues(eigs: &[SliceComplex], tol: f64) -> Result<Self> {
        let pts: Vec<Sphere> = eigs.iter().map(|z| Sphere::new(z.re, z.im.abs())).collect();
        let labels = single_linkage(&pts, tol);
        let nclusters = labels.iter().copied().max().map_or(0, |m| m + 1);

        let mut spheres = Vec::with_capacity(nclusters);
        for label in 0..nclusters {
            let members: Vec<usize> = (0..pts.len()).filter(|&k| labels[k] == label).collect();
            let count = members.len() as f64;
            let re = members.iter().map(|&k| pts[k].re).sum::<f64>() / count;
            let im = members.iter().map(|&k| pts[k].im_norm).sum::<f64>() / count;
            if im <= tol {
                if !members.len().is_multiple_of(2) {
                    return Err(Error::OddRealMultiplicity {
                        re,
                        count: members.len(),
                    });
                }
                spheres.push((Sphere::new(re, 0.0), members.len() / 2));
            } else {
                let upper = members.iter().filter(|&&k| eigs[k].im > 0.0).count();
                spheres.push((Sphere::new(re, im), upper));
            }
        }
        let total: usize = spheres.iter().map(|(_, m)| m).sum();
        if 2 * total != eigs.len() {
            return Err(Error::NoConvergence(format!(
                "eigenvalues of the complex adjoint are not conjugation-symmetric ({} spheres counted for {} eigenvalues)",
                total,
                eigs.len()
            )));
        }
        let mut set = Self { spheres, tol };
        set.sort();
        Ok(set)
    }

    /// Builds a set from spheres with explicit multiplicities, merging
    /// entries closer than `tol`.
    pub fn from_spheres(items: &[(Sphere, usize)], tol: f64) -> Self {
        let pts: Vec<Sphere> = items.iter().map(|(s, _)| *s).collect();
        let labels = single_linkage(&pts, tol);
        let nclusters = labels.iter().copied().max().map_or(0, |m| m + 1);
        let mut spheres = Vec::with_capacity(nclusters);
        for label in 0..nclusters {
            let members: Vec<usize> = (0..pts.len()).filter(|&k| labels[k] == label).collect();
            let weight: usize = members.iter().map(|&k| items[k].1).sum();
            let w = weight.max(1) as f64;
            let re = members.iter().map(|&k| pts[k].re * items[k].1 as f64).sum::<f64>() / w;
            let im = members.iter().map(|&k| pts[k].im_norm * items[k].1 as f64).sum::<f64>() / w;
            spheres.push((Sphere::new(re, im), weight));
        }
        let mut set = Self { spheres, tol };
        set.sort();
        set
    }

    fn sort(&mut self) {
        self.spheres.sort_by(|(a, _), (b, _)| {
            a.re.total_cmp(&b.re).then(a.im_norm.total_cmp(&b.im_norm))
        });
    }

    pub fn len(&self) -> usize {
        self.spheres.len()
    }

    pub fn is_empty(&self) -> bool {
        self.spheres.is_empty()
    }

    pub fn total_multiplicity(&self) -> usize {
        self.spheres.iter().map(|(_, m)| m).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = &(Sphere, usize)> {
        self.spheres.iter()
    }

    /// Largest modulus of a spectral point.
    pub fn max_modulus(&self) -> f64 {
        self.spheres.iter().map(|(s, _)| s.radius()).fold(0.0, f64::max)
    }

    /// Whether `q` lies on one of the spheres within `tol`.
    pub fn contains(&self, q: Quaternion, tol: f64) -> bool {
        self.spheres.iter().any(|(s, _)| s.contains(q, tol))
    }

    /// Distance from `q`'s sphere parameters to the nearest sphere.
    pub fn param_distance_to(&self, q: Quaternion) -> f64 {
        let p = q.sphere();
        self.spheres
            .iter()
            .map(|(s, _)| s.param_distance(p))
            .fold(f64::INFINITY, f64::min)
    }

    /// Hausdorff distance between the sphere parameter sets.
    pub fn hausdorff(&self, other: &SphereSet) -> f64 {
        fn directed(a: &SphereSet, b: &SphereSet) -> f64 {
            a.spheres
                .iter()
                .map(|(s, _)| {
                    b.spheres
                        .iter()
                        .map(|(t, _)| s.param_distance(*t))
                        .fold(f64::INFINITY, f64::min)
                })
                .fold(0.0, f64::max)
        }
        if self.is_empty() && other.is_empty() {
            return 0.0;
        }
        directed(self, other).max(directed(other, self))
    }

    /// Slice representatives `re +- im_norm i` of every sphere, lower
    /// conjugates included for non-real spheres.
    pub fn slice_points(&self) -> Vec<SliceComplex> {
        let mut pts = Vec::new();
        for (s, _) in &self.spheres {
            pts.push(s.representative());
            if s.im_norm > 0.0 {
                pts.push(s.representative().conj());
            }
        }
        pts
    }
}

impl fmt::Display for SphereSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, (s, m)) in self.spheres.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "({}, {})x{}", s.re, s.im_norm, m)?;
        }
        write!(f, "}}")
    }
}

fn single_linkage(pts: &[Sphere], tol: f64) -> Vec<usize> {
    let n = pts.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for a in 0..n {
        for b in a + 1..n {
            if pts[a].param_distance(pts[b]) <= tol {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                if ra != rb {
                    parent[ra.max(rb)] = ra.min(rb);
                }
            }
        }
    }
    let mut labels = vec![usize::MAX; n];
    let mut next = 0;
    (0..n)
        .map(|k| {
            let root = find(&mut parent, k);
            if labels[root] == usize::MAX {
                labels[root] = next;
                next += 1;
            }
            labels[root]
        })
        .collect()
}

/// Eigenvalues of `chi(A)`, i.e. the spectrum of the slice operator.
pub fn slice_spectrum(a: &QMatrix) -> Result<Vec<SliceComplex>> {
    eigenvalues(&a.complex_adjoint().0, EIGEN_TOL)
}

/// `sigma_S(A) = [sigma(chi(A))]`.
pub fn s_spectrum(a: &QMatrix) -> Result<SphereSet> {
    s_spectrum_with_tol(a, cluster_tolerance(a))
}

pub fn s_spectrum_with_tol(a: &QMatrix, tol: f64) -> Result<SphereSet> {
    let eigs = slice_spectrum(a)?;
    SphereSet::from_eigenvalues(&eigs, tol)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RadiusMethod {
    /// Largest eigenvalue modulus of `chi(A)`.
    Eig,
    /// `||A^(2^m)||^(1/2^m)` by repeated squaring.
    Power,
}

pub fn s_spectral_radius(a: &QMatrix, method: RadiusMethod) -> Result<f64> {
    match method {
        RadiusMethod::Eig => Ok(slice_spectrum(a)?.iter().map(|z| z.norm()).fold(0.0, f64::max)),
        RadiusMethod::Power => power_radius(a),
    }
}

/// Gelfand's formula along the subsequence `2^m`.
///
/// The iterate is renormalized after each squaring and the logarithm of
/// `||A^(2^m)||` is tracked separately, so neither overflow nor underflow
/// occurs however long the iteration runs.
fn power_radius(a: &QMatrix) -> Result<f64> {
    let norm = a.norm();
    if norm == 0.0 {
        return Ok(0.0);
    }
    let mut b = a.scale(1.0 / norm);
    let mut log_norm = norm.ln();
    let mut estimate = norm;
    for m in 1..=POWER_MAX_SQUARINGS {
        let sq = &b * &b;
        let sq_norm = sq.norm();
        if sq_norm == 0.0 {
            return Ok(0.0);
        }
        log_norm = 2.0 * log_norm + sq_norm.ln();
        b = sq.scale(1.0 / sq_norm);
        let next = (log_norm / 2f64.powi(m as i32)).exp();
        if (next - estimate).abs() < POWER_REL_CHANGE * next {
            return Ok(next);
        }
        estimate = next;
    }
    Err(Error::NoConvergence(format!(
        "power estimate still moving after {POWER_MAX_SQUARINGS} squarings"
    )))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PencilMethod {
    Direct,
    Neumann,
}

/// Result of summing a series of operators.
#[derive(Debug, Clone)]
pub struct SeriesSum {
    pub value: QMatrix,
    pub terms: usize,
    /// Largest imaginary magnitude seen among scalar coefficients that
    /// should be real (zero for series whose coefficients are quaternions).
    pub max_coeff_imag: f64,
}

/// `a_n = sum_{k=0}^n q^(-k-1) conj(q)^(-n+k-1)` for `n < count`.
///
/// Evaluated through `a_n = u v h_n`, `h_n = v h_(n-1) + u^n` with
/// `u = q^-1`, `v = conj(q)^-1`; `u` and `v` commute, so this is the same
/// sum reordered.
pub fn neumann_coefficients(q: Quaternion, count: usize) -> Result<Vec<Quaternion>> {
    let u = q.inv()?;
    let v = q.conj().inv()?;
    let uv = u * v;
    let mut out = Vec::with_capacity(count);
    let mut h = Quaternion::ONE;
    let mut u_pow = Quaternion::ONE;
    for n in 0..count {
        if n > 0 {
            u_pow *= u;
            h = v * h + u_pow;
        }
        out.push(uv * h);
    }
    Ok(out)
}

/// `Q_q(A)^-1`.
pub fn q_pencil_inverse(a: &QMatrix, q: Quaternion, method: PencilMethod, tol: f64) -> Result<QMatrix> {
    match method {
        PencilMethod::Direct => pencil_inverse_direct(a, q),
        PencilMethod::Neumann => Ok(pencil_inverse_neumann(a, q, tol)?.value),
    }
}

/// `Q_q(A)^-1` by inverting `chi(Q_q(A))`.
pub fn pencil_inverse_direct(a: &QMatrix, q: Quaternion) -> Result<QMatrix> {
    let chi = a.q_pencil(q).complex_adjoint().0;
    let smin = smallest_singular_value_complex(&chi);
    if smin <= singular_threshold(a) {
        return Err(Error::Singular(format!("q = {q} lies on the S-spectrum (smin {smin:e})")));
    }
    let inv = invert_complex(&chi).ok_or_else(|| Error::Singular(format!("Q_q(A) not invertible at q = {q}")))?;
    QMatrix::from_complex_adjoint(&inv, 1e-8)
}

/// `Q_q(A)^-1 = sum_n a_n A^n` with real `a_n`.
pub fn pencil_inverse_neumann(a: &QMatrix, q: Quaternion, tol: f64) -> Result<SeriesSum> {
    let radius = s_spectral_radius(a, RadiusMethod::Eig)?;
    if q.norm() <= radius {
        return Err(Error::SeriesDiverges(format!(
            "|q| = {} does not exceed the S-spectral radius {radius}",
            q.norm()
        )));
    }
    let u = q.inv()?;
    let v = q.conj().inv()?;
    let uv = u * v;
    let mut h = Quaternion::ONE;
    let mut u_pow = Quaternion::ONE;
    let mut power = QMatrix::identity(a.dim());
    let mut sum = QMatrix::zeros(a.dim());
    let mut max_imag: f64 = 0.0;
    let mut small_run = 0;
    for n in 0..SERIES_TERM_CAP {
        if n > 0 {
            u_pow *= u;
            h = v * h + u_pow;
            power = &power * a;
        }
        let coeff = uv * h;
        max_imag = max_imag.max(coeff.im_norm());
        let term = power.scale(coeff.re());
        sum = &sum + &term;
        small_run = if term.norm() < tol * (1.0 + sum.norm()) { small_run + 1 } else { 0 };
        // pure-imaginary q makes every odd coefficient vanish, so a single
        // small term says nothing about the tail
        if small_run >= 2 {
            return Ok(SeriesSum {
                value: sum,
                terms: n + 1,
                max_coeff_imag: max_imag,
            });
        }
        if !sum.is_finite() {
            break;
        }
    }
    Err(Error::SeriesDiverges(format!(
        "Neumann series for Q_q(A)^-1 did not settle within {SERIES_TERM_CAP} terms"
    )))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResolventMethod {
    Formula,
    Series,
}

/// Left or right S-resolvent operator at `s`.
pub fn s_resolvent(a: &QMatrix, s: Quaternion, side: Side, method: ResolventMethod, tol: f64) -> Result<QMatrix> {
    match method {
        ResolventMethod::Formula => s_resolvent_formula(a, s, side),
        ResolventMethod::Series => Ok(s_resolvent_series(a, s, side, tol)?.value),
    }
}

/// `S_L^-1(s, A) = -Q_s(A)^-1 (A - conj(s) I)`,
/// `S_R^-1(s, A) = -(A - conj(s) I) Q_s(A)^-1`.
pub fn s_resolvent_formula(a: &QMatrix, s: Quaternion, side: Side) -> Result<QMatrix> {
    let q_inv = pencil_inverse_direct(a, s)?;
    Ok(resolvent_from_pencil_inverse(a, s, &q_inv, side))
}

pub(crate) fn resolvent_from_pencil_inverse(a: &QMatrix, s: Quaternion, q_inv: &QMatrix, side: Side) -> QMatrix {
    let shifted = a - &QMatrix::scalar(a.dim(), s.conj());
    let prod = match side {
        Side::Left => q_inv * &shifted,
        Side::Right => &shifted * q_inv,
    };
    -&prod
}

/// `S_L^-1 = sum A^n s^(-n-1)` (scalar on the right),
/// `S_R^-1 = sum s^(-n-1) A^n` (scalar on the left).
pub fn s_resolvent_series(a: &QMatrix, s: Quaternion, side: Side, tol: f64) -> Result<SeriesSum> {
    let norm = a.norm();
    if s.norm() <= norm {
        return Err(Error::SeriesDiverges(format!(
            "|s| = {} does not exceed ||A|| = {norm}",
            s.norm()
        )));
    }
    let s_inv = s.inv()?;
    let mut coeff = s_inv;
    let mut power = QMatrix::identity(a.dim());
    let mut sum = QMatrix::zeros(a.dim());
    let mut small_run = 0;
    for n in 0..SERIES_TERM_CAP {
        if n > 0 {
            power = &power * a;
            coeff *= s_inv;
        }
        let term = match side {
            Side::Left => power.scalar_right(coeff),
            Side::Right => power.scalar_left(coeff),
        };
        sum = &sum + &term;
        small_run = if term.norm() < tol * (1.0 + sum.norm()) { small_run + 1 } else { 0 };
        if small_run >= 2 {
            return Ok(SeriesSum {
                value: sum,
                terms: n + 1,
                max_coeff_imag: 0.0,
            });
        }
    }
    Err(Error::SeriesDiverges(format!(
        "S-resolvent series did not settle within {SERIES_TERM_CAP} terms"
    )))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Resolvent,
    PointSpectrum,
}

/// Membership of a point in the S-spectrum, decided on `Q_q(A)` directly.
///
/// On `H^n` the residual and continuous parts are empty and the
/// approximate-point and surjectivity spectra coincide with the point
/// spectrum, so these two verdicts are exhaustive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Classification {
    pub verdict: Verdict,
    /// Smallest singular value of the real representation of `Q_q(A)`.
    pub smin: f64,
    pub threshold: f64,
}

pub fn classify(a: &QMatrix, q: Quaternion) -> Classification {
    let rep = a.q_pencil(q).real_representation().0;
    let smin = smallest_singular_value_real(&rep);
    let threshold = singular_threshold(a);
    let verdict = if smin <= threshold {
        Verdict::PointSpectrum
    } else {
        Verdict::Resolvent
    };
    Classification { verdict, smin, threshold }
}

/// Both sides of the real-point distance identity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistanceReport {
    /// `min` over spheres of the Euclidean distance from `alpha`.
    pub geometric: f64,
    /// `1 / r_S((alpha I - A)^-1)`.
    pub via_radius: f64,
}

impl DistanceReport {
    pub fn discrepancy(&self) -> f64 {
        (self.geometric - self.via_radius).abs()
    }
}

pub fn distance_to_spectrum(a: &QMatrix, alpha: f64) -> Result<DistanceReport> {
    let spectrum = s_spectrum(a)?;
    let geometric = spectrum
        .iter()
        .map(|(s, _)| s.distance_to_real(alpha))
        .fold(f64::INFINITY, f64::min);
    if geometric <= spectrum.tol {
        return Err(Error::AlphaInSpectrum(alpha));
    }
    let shifted = &QMatrix::scalar(a.dim(), Quaternion::real(alpha)) - a;
    let inv = shifted.inverse().map_err(|e| match e {
        Error::Singular(_) => Error::AlphaInSpectrum(alpha),
        other => other,
    })?;
    let r = s_spectral_radius(&inv, RadiusMethod::Eig)?;
    Ok(DistanceReport {
        geometric,
        via_radius: 1.0 / r,
    })
}

macro_rules! parse_enum {
    ($ty:ty, $what:literal, { $($name:literal => $val:expr),+ $(,)? }) => {
        impl FromStr for $ty {
            type Err = Error;
            fn from_str(s: &str) -> Result<Self> {
                match s {
                    $($name => Ok($val),)+
                    other => Err(Error::InvalidFunction(format!(concat!("unknown ", $what, " '{}'"), other))),
                }
            }
        }
    };
}

parse_enum!(RadiusMethod, "radius method", { "eig" => RadiusMethod::Eig, "power" => RadiusMethod::Power });
parse_enum!(PencilMethod, "pencil method", { "direct" => PencilMethod::Direct, "neumann" => PencilMethod::Neumann });
parse_enum!(ResolventMethod, "resolvent method", { "formula" => ResolventMethod::Formula, "series" => ResolventMethod::Series });
parse_enum!(Side, "side", { "L" => Side::Left, "R" => Side::Right, "left" => Side::Left, "right" => Side::Right });

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: f64, b: f64, c: f64, d: f64) -> Quaternion {
        Quaternion::new(a, b, c, d)
    }

    #[test]
    fn spectrum_examples() {
        let s = s_spectrum(&QMatrix::diag(&[Quaternion::I])).unwrap();
        assert_eq!(s.spheres.len(), 1);
        assert!(s.spheres[0].0.param_distance(Sphere::new(0.0, 1.0)) < 1e-14);
        assert_eq!(s.spheres[0].1, 1);

        let s = s_spectrum(&QMatrix::identity(1)).unwrap();
        assert_eq!(s.spheres, vec![(Sphere::new(1.0, 0.0), 1)]);

        let s = s_spectrum(&QMatrix::diag(&[Quaternion::I, Quaternion::J * 2.0])).unwrap();
        assert_eq!(s.len(), 2);
        assert!(s.spheres[0].0.param_distance(Sphere::new(0.0, 1.0)) < 1e-14);
        assert!(s.spheres[1].0.param_distance(Sphere::new(0.0, 2.0)) < 1e-14);
        assert_eq!(s.total_multiplicity(), 2);

        let s = s_spectrum(&QMatrix::identity(3)).unwrap();
        assert_eq!(s.spheres, vec![(Sphere::new(1.0, 0.0), 3)]);
    }

    #[test]
    fn odd_real_cluster_is_an_error() {
        let eigs = [SliceComplex::new(1.0, 0.0), SliceComplex::new(2.0, 0.0), SliceComplex::new(2.0, 0.0)];
        assert!(matches!(
            SphereSet::from_eigenvalues(&eigs, 1e-8),
            Err(Error::OddRealMultiplicity { count: 1, .. })
        ));
    }

    #[test]
    fn radius_examples() {
        let ii = QMatrix::diag(&[Quaternion::I]);
        assert!((s_spectral_radius(&ii, RadiusMethod::Eig).unwrap() - 1.0).abs() < 1e-14);
        assert!((s_spectral_radius(&ii, RadiusMethod::Power).unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(s_spectral_radius(&QMatrix::zeros(3), RadiusMethod::Eig).unwrap(), 0.0);
        assert_eq!(s_spectral_radius(&QMatrix::zeros(3), RadiusMethod::Power).unwrap(), 0.0);
        let d = QMatrix::diag(&[Quaternion::I, Quaternion::J * 2.0]);
        assert!((s_spectral_radius(&d, RadiusMethod::Eig).unwrap() - 2.0).abs() < 1e-12);
        let p = s_spectral_radius(&d, RadiusMethod::Power).unwrap();
        assert!((p - 2.0).abs() < 0.05 * 2.0);
        let nil = QMatrix::from_rows(vec![vec![Quaternion::ZERO, Quaternion::J], vec![Quaternion::ZERO; 2]]).unwrap();
        assert_eq!(s_spectral_radius(&nil, RadiusMethod::Power).unwrap(), 0.0);
    }

    #[test]
    fn neumann_coefficients_match_double_sum() {
        let qv = q(0.7, -1.1, 0.4, 2.0);
        let coeffs = neumann_coefficients(qv, 8).unwrap();
        let qi = qv.inv().unwrap();
        let qbi = qv.conj().inv().unwrap();
        for (n, c) in coeffs.iter().enumerate() {
            let direct: Quaternion = (0..=n)
                .map(|k| qi.powi(k as u32 + 1) * qbi.powi((n - k) as u32 + 1))
                .sum();
            assert!((*c - direct).norm() < 1e-14 * (1.0 + direct.norm()));
            assert!(c.im_norm() < 1e-14);
        }
    }

    #[test]
    fn pencil_inverse_examples() {
        let s = q(0.5, 1.0, -2.0, 0.3);
        let zero = QMatrix::zeros(2);
        let expected = QMatrix::scalar(2, Quaternion::real(1.0 / s.norm_sqr()));
        for method in [PencilMethod::Direct, PencilMethod::Neumann] {
            let inv = q_pencil_inverse(&zero, s, method, 1e-14).unwrap();
            assert!(inv.max_abs_diff(&expected) < 1e-15);
        }

        let nil = QMatrix::from_rows(vec![
            vec![Quaternion::ZERO, Quaternion::ONE],
            vec![Quaternion::ZERO, Quaternion::ZERO],
        ])
        .unwrap();
        let direct = q_pencil_inverse(&nil, Quaternion::I, PencilMethod::Direct, 1e-14).unwrap();
        assert!(direct.max_abs_diff(&QMatrix::identity(2)) < 1e-14);
        let series = pencil_inverse_neumann(&nil, Quaternion::I, 1e-14).unwrap();
        assert!(series.value.max_abs_diff(&QMatrix::identity(2)) < 1e-14);

        let two = QMatrix::diag(&[Quaternion::real(2.0)]);
        for method in [PencilMethod::Direct, PencilMethod::Neumann] {
            let inv = q_pencil_inverse(&two, Quaternion::real(3.0), method, 1e-15).unwrap();
            assert!((inv[(0, 0)] - Quaternion::ONE).norm() < 1e-12);
        }
    }

    #[test]
    fn pencil_inverse_errors() {
        let a = QMatrix::diag(&[Quaternion::J]);
        assert!(matches!(
            q_pencil_inverse(&a, Quaternion::I, PencilMethod::Direct, 1e-12),
            Err(Error::Singular(_))
        ));
        let b = QMatrix::diag(&[Quaternion::real(2.0)]);
        assert!(matches!(
            q_pencil_inverse(&b, Quaternion::real(1.0), PencilMethod::Neumann, 1e-12),
            Err(Error::SeriesDiverges(_))
        ));
    }

    #[test]
    fn resolvent_examples() {
        let s = q(0.5, 1.0, -2.0, 0.3);
        let s_inv = s.inv().unwrap();
        let zero = QMatrix::zeros(2);
        for side in [Side::Left, Side::Right] {
            for method in [ResolventMethod::Formula, ResolventMethod::Series] {
                let r = s_resolvent(&zero, s, side, method, 1e-15).unwrap();
                assert!(r.max_abs_diff(&QMatrix::scalar(2, s_inv)) < 1e-15);
            }
        }

        // Q_s(A) = 3, S^-1 = -(i + 2j)/3 on both sides
        let a = QMatrix::diag(&[Quaternion::I]);
        let s = Quaternion::J * 2.0;
        let expected = q(0.0, -1.0 / 3.0, -2.0 / 3.0, 0.0);
        for side in [Side::Left, Side::Right] {
            let r = s_resolvent(&a, s, side, ResolventMethod::Formula, 0.0).unwrap();
            assert!((r[(0, 0)] - expected).norm() < 1e-15);
            let r = s_resolvent(&a, s, side, ResolventMethod::Series, 1e-15).unwrap();
            assert!((r[(0, 0)] - expected).norm() < 1e-13);
        }
        assert!(matches!(
            s_resolvent(&a, Quaternion::real(0.5), Side::Left, ResolventMethod::Series, 1e-12),
            Err(Error::SeriesDiverges(_))
        ));
        assert!(matches!(
            s_resolvent(&a, Quaternion::J, Side::Left, ResolventMethod::Formula, 1e-12),
            Err(Error::Singular(_))
        ));
    }

    #[test]
    fn classify_examples() {
        let c = classify(&QMatrix::diag(&[Quaternion::J]), Quaternion::I);
        assert_eq!(c.verdict, Verdict::PointSpectrum);
        assert_eq!(c.smin, 0.0);
        assert_eq!(classify(&QMatrix::identity(1), Quaternion::I).verdict, Verdict::Resolvent);
        assert_eq!(classify(&QMatrix::identity(1), Quaternion::ONE).verdict, Verdict::PointSpectrum);
    }

    #[test]
    fn distance_examples() {
        let r = distance_to_spectrum(&QMatrix::diag(&[Quaternion::real(2.0)]), 0.0).unwrap();
        assert!((r.geometric - 2.0).abs() < 1e-14);
        assert!((r.via_radius - 2.0).abs() < 1e-14);

        let d = QMatrix::diag(&[Quaternion::I, Quaternion::J * 2.0]);
        let r = distance_to_spectrum(&d, 0.0).unwrap();
        assert!((r.geometric - 1.0).abs() < 1e-12);
        assert!((r.via_radius - 1.0).abs() < 1e-12);

        assert!(matches!(
            distance_to_spectrum(&QMatrix::identity(1), 1.0),
            Err(Error::AlphaInSpectrum(_))
        ));
    }

    #[test]
    fn sphere_set_metrics() {
        let a = SphereSet::from_spheres(&[(Sphere::new(0.0, 1.0), 1), (Sphere::new(2.0, 0.0), 2)], 1e-9);
        let b = SphereSet::from_spheres(&[(Sphere::new(0.0, 1.0 + 1e-12), 1), (Sphere::new(2.0, 0.0), 2)], 1e-9);
        assert!(a.hausdorff(&b) < 2e-12);
        let c = SphereSet::from_spheres(&[(Sphere::new(0.0, 1.0), 1)], 1e-9);
        assert!((a.hausdorff(&c) - 5f64.sqrt()).abs() < 1e-14);
        let merged = SphereSet::from_spheres(&[(Sphere::new(1.0, 0.0), 1), (Sphere::new(1.0, 0.0), 2)], 1e-9);
        assert_eq!(merged.spheres, vec![(Sphere::new(1.0, 0.0), 3)]);
        assert_eq!(a.slice_points().len(), 3);
    }

    #[test]
    fn parse_methods() {
        assert_eq!("power".parse::<RadiusMethod>().unwrap(), RadiusMethod::Power);
        assert_eq!("L".parse::<Side>().unwrap(), Side::Left);
        assert_eq!("neumann".parse::<PencilMethod>().unwrap(), PencilMethod::Neumann);
        assert!("bogus".parse::<ResolventMethod>().is_err());
    }
}
