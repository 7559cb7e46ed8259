//! Executable cross-checks: each suite computes the same quantity along two
//! independent routes and reports the discrepancies.

use std::fmt;
use std::str::FromStr;

use crate::calculus::apply;
use crate::catalog::{horner, lookup};
use crate::error::{Error, Result};
use crate::operator::QMatrix;
use crate::quaternion::{Quaternion, SliceComplex, Sphere};
use crate::slice::StemFunction;
use crate::spectrum::{
    distance_to_spectrum, pencil_inverse_direct, pencil_inverse_neumann, s_resolvent_formula,
    s_resolvent_series, s_spectrum, Side, SphereSet,
};

/// Pass threshold on every (relative) discrepancy.
pub const THEOREM_TOL: f64 = 1e-8;
/// Truncation tolerance of the series used as the second route.
const SERIES_TOL: f64 = 1e-15;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Product,
    Mapping,
    Composition,
    Polynomial,
    Distance,
    ResolventSeries,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Product,
        Suite::Mapping,
        Suite::Composition,
        Suite::Polynomial,
        Suite::Distance,
        Suite::ResolventSeries,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Product => "product",
            Suite::Mapping => "mapping",
            Suite::Composition => "composition",
            Suite::Polynomial => "polynomial",
            Suite::Distance => "distance",
            Suite::ResolventSeries => "resolvent_series",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s || suite.name().replace('_', "-") == s)
            .ok_or_else(|| Error::InvalidFunction(format!("unknown suite '{s}'")))
    }
}

/// One comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct Case {
    pub label: String,
    pub discrepancy: f64,
}

/// `P(q) = iq` applied to the identity: the S-spectrum of `iI` is the whole
/// sphere of imaginary units while the image of `sigma_S(I) = {1}` is the
/// single point `i`. Real coefficients are essential for spectral mapping.
#[derive(Debug, Clone, PartialEq)]
pub struct Control {
    pub spectrum: SphereSet,
    pub image_point: Quaternion,
    /// Whether the spectrum differs from the image point set.
    pub mismatch: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TheoremReport {
    pub suite: Suite,
    pub cases: Vec<Case>,
    pub tolerance: f64,
    pub control: Option<Control>,
    pub pass: bool,
}

impl TheoremReport {
    pub fn max_discrepancy(&self) -> f64 {
        self.cases.iter().map(|c| c.discrepancy).fold(0.0, f64::max)
    }
}

fn rel(x: &QMatrix, reference: &QMatrix) -> f64 {
    (x - reference).norm() / (1.0 + reference.norm())
}

fn case(label: impl Into<String>, discrepancy: f64) -> Case {
    Case { label: label.into(), discrepancy }
}

pub fn verify_theorems(a: &QMatrix, suite: Suite) -> Result<TheoremReport> {
    let mut control = None;
    let cases = match suite {
        Suite::Product => product_cases(a)?,
        Suite::Mapping => mapping_cases(a)?,
        Suite::Composition => composition_cases(a)?,
        Suite::Polynomial => {
            let (cases, c) = polynomial_cases(a)?;
            control = Some(c);
            cases
        }
        Suite::Distance => distance_cases(a)?,
        Suite::ResolventSeries => resolvent_cases(a)?,
    };
    let pass = cases.iter().all(|c| c.discrepancy < THEOREM_TOL) && control.as_ref().is_none_or(|c| c.mismatch);
    Ok(TheoremReport {
        suite,
        cases,
        tolerance: THEOREM_TOL,
        control,
        pass,
    })
}

/// `(fg)(A) = f(A) g(A)` for intrinsic times intrinsic or left, and right
/// times intrinsic.
fn product_cases(a: &QMatrix) -> Result<Vec<Case>> {
    let pairs = [
        ("poly:[0,0,1]", "exp"),
        ("exp", "monoR:[[0,1,2,0],2]"),
        ("monoL:[[1,0,-1,2],1]", "exp"),
        ("monoL:[[0.5,1,0,-1],3]", "poly:[1,-2,0,1]"),
    ];
    let mut out = Vec::new();
    for (fname, gname) in pairs {
        let f = lookup(fname)?;
        let g = lookup(gname)?;
        let whole = apply(a, &f.product(&g)?)?;
        let split = &apply(a, &f)? * &apply(a, &g)?;
        out.push(case(format!("({fname})({gname})"), rel(&whole, &split)));
    }
    let f = apply(a, &lookup("poly:[0,0,1]")?)?;
    let g = apply(a, &lookup("exp")?)?;
    out.push(case("commute q^2, exp", rel(&(&f * &g), &(&g * &f))));
    Ok(out)
}

fn image_spheres(spectrum: &SphereSet, h: impl Fn(SliceComplex) -> SliceComplex) -> SphereSet {
    let items: Vec<(Sphere, usize)> = spectrum
        .iter()
        .map(|(s, m)| {
            let w = h(s.representative());
            (Sphere::new(w.re, w.im.abs()), *m)
        })
        .collect();
    SphereSet::from_spheres(&items, spectrum.tol)
}

fn mapping_discrepancy(computed: &SphereSet, image: &SphereSet) -> f64 {
    computed.hausdorff(image) / (1.0 + image.max_modulus())
}

/// `sigma_S(f(A)) = f(sigma_S(A))` for intrinsic `f`.
fn mapping_cases(a: &QMatrix) -> Result<Vec<Case>> {
    let spectrum = s_spectrum(a)?;
    let mut out = Vec::new();
    for name in ["exp", "poly:[1,-2,0,1]", "ratpoly:[1,1]/[9,0,1]"] {
        let f = lookup(name)?;
        if !spectrum.iter().all(|(s, _)| f.domain.contains(s.re, s.im_norm)) {
            continue;
        }
        let fa = apply(a, &f)?;
        let h = f.restrict_to_slice()?;
        let image = image_spheres(&spectrum, |z| h(z));
        out.push(case(format!("sigma_S({name}(A))"), mapping_discrepancy(&s_spectrum(&fa)?, &image)));
    }
    Ok(out)
}

/// `g(f(A)) = (g o f)(A)` for intrinsic `f`.
fn composition_cases(a: &QMatrix) -> Result<Vec<Case>> {
    let pairs = [("poly:[1,0,1]", "exp"), ("poly:[1,0,1]", "monoL:[[0,1,1,0],2]"), ("exp", "monoR:[[1,-1,0,2],1]")];
    let mut out = Vec::new();
    for (fname, gname) in pairs {
        let f = lookup(fname)?;
        let g = lookup(gname)?;
        let nested = apply(&apply(a, &f)?, &g)?;
        let composed = apply(a, &g.compose(&f)?)?;
        out.push(case(format!("{gname} o {fname}"), rel(&composed, &nested)));
    }
    Ok(out)
}

/// `sigma_S(P(A)) = P(sigma_S(A))` for real `P`, plus the `iI` control.
fn polynomial_cases(a: &QMatrix) -> Result<(Vec<Case>, Control)> {
    let spectrum = s_spectrum(a)?;
    let mut out = Vec::new();
    for coeffs in [vec![1.0, -2.0, 0.0, 1.0], vec![0.0, -1.0, 0.5, 0.0, 1.0], vec![2.0, 0.0, -3.0]] {
        let pa = a.real_polynomial(&coeffs);
        let image = image_spheres(&spectrum, |z| horner(&coeffs, z));
        out.push(case(format!("P = {coeffs:?}"), mapping_discrepancy(&s_spectrum(&pa)?, &image)));
    }

    let n = a.dim().max(1);
    let ii = QMatrix::identity(n).scalar_left(Quaternion::I);
    let spectrum = s_spectrum(&ii)?;
    let unit_sphere = SphereSet::from_spheres(&[(Sphere::new(0.0, 1.0), n)], spectrum.tol);
    out.push(case("sigma_S(iI) = unit imaginary sphere", spectrum.hausdorff(&unit_sphere)));
    let image_point = Quaternion::I;
    let mismatch = spectrum.iter().any(|(s, _)| s.im_norm > spectrum.tol);
    Ok((out, Control { spectrum, image_point, mismatch }))
}

/// `dist(alpha, sigma_S(A)) = 1 / r_S((alpha I - A)^-1)` at real points off
/// the spectrum.
fn distance_cases(a: &QMatrix) -> Result<Vec<Case>> {
    let spectrum = s_spectrum(a)?;
    let r = spectrum.max_modulus();
    let mut out = Vec::new();
    for alpha in [r + 0.5, -(r + 0.5), 0.0, 0.5 * r, -0.3 * r] {
        let clear = spectrum.iter().all(|(s, _)| s.distance_to_real(alpha) > 1e-3 * (1.0 + r));
        if !clear {
            continue;
        }
        let report = distance_to_spectrum(a, alpha)?;
        out.push(case(format!("alpha = {alpha}"), report.discrepancy() / (1.0 + report.geometric)));
    }
    Ok(out)
}

/// Series against closed forms for the S-resolvents and `Q_s(A)^-1`.
fn resolvent_cases(a: &QMatrix) -> Result<Vec<Case>> {
    let radius = 2.0 * a.norm() + 1.0;
    let directions = [
        Quaternion::new(0.5, 0.5, 0.5, 0.5),
        Quaternion::J,
        Quaternion::new(0.3, -0.5, 0.2, 0.8),
        Quaternion::real(-1.0),
    ];
    let mut out = Vec::new();
    for d in directions {
        let s = d * (radius / d.norm());
        for side in [Side::Left, Side::Right] {
            let series = s_resolvent_series(a, s, side, SERIES_TOL)?.value;
            let formula = s_resolvent_formula(a, s, side)?;
            out.push(case(format!("S_{side:?}^-1 at {s}"), rel(&series, &formula)));
        }
        let neumann = pencil_inverse_neumann(a, s, SERIES_TOL)?.value;
        let direct = pencil_inverse_direct(a, s)?;
        out.push(case(format!("Q_s^-1 at {s}"), rel(&neumann, &direct)));
    }
    Ok(out)
}

/// Applies a catalog function by name.
pub fn apply_named(a: &QMatrix, name: &str) -> Result<QMatrix> {
    let f: StemFunction = lookup(name)?;
    apply(a, &f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(n: usize, seed: f64) -> QMatrix {
        QMatrix::from_fn(n, |r, k| {
            let x = (n * r + k) as f64 + seed;
            Quaternion::new((0.7 * x).sin(), 0.5 * (1.3 * x).cos(), 0.4 * (0.2 * x + 1.0).sin(), -0.3 * (x * 0.9).cos())
        })
    }

    #[test]
    fn all_suites_pass_on_samples() {
        for a in [sample(3, 0.0), sample(2, 1.7), QMatrix::diag(&[Quaternion::I, Quaternion::J * 2.0])] {
            for suite in Suite::ALL {
                let report = verify_theorems(&a, suite).unwrap();
                assert!(report.pass, "{suite}: {report:?}");
                assert!(!report.cases.is_empty(), "{suite}");
            }
        }
    }

    #[test]
    fn polynomial_control_on_identity() {
        let report = verify_theorems(&QMatrix::identity(1), Suite::Polynomial).unwrap();
        let control = report.control.unwrap();
        assert_eq!(control.spectrum.len(), 1);
        let (s, m) = control.spectrum.spheres[0];
        assert!(s.re.abs() < 1e-10 && (s.im_norm - 1.0).abs() < 1e-10 && m == 1);
        assert_eq!(control.image_point, Quaternion::I);
        assert!(control.mismatch);
        assert!(report.pass);
    }

    #[test]
    fn suite_names() {
        for suite in Suite::ALL {
            assert_eq!(suite.name().parse::<Suite>().unwrap(), suite);
        }
        assert_eq!("resolvent-series".parse::<Suite>().unwrap(), Suite::ResolventSeries);
        assert!("nope".parse::<Suite>().is_err());
    }
}
