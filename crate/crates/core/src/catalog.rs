//! Built-in slice functions addressed by name.
//!
//! | name              | function                                 | kind      |
//! |-------------------|------------------------------------------|-----------|
//! | `exp`             | exponential                              | intrinsic |
//! | `log`             | principal logarithm                      | intrinsic |
//! | `sqrt`            | principal square root                    | intrinsic |
//! | `pow:N`           | `q^N`, integer `N`                       | intrinsic |
//! | `poly:[c0,..]`    | `c0 + c1 q + ...`, real coefficients     | intrinsic |
//! | `ratpoly:[p]/[q]` | quotient of real polynomials             | intrinsic |
//! | `monoL:[a,n]`     | `a q^n`, coefficient on the left         | right     |
//! | `monoR:[a,n]`     | `q^n a`, coefficient on the right        | left      |
//!
//! A quaternion coefficient `a` is a real number or `[a,b,c,d]`.

use serde_json::Value;

use crate::eigen::schur_eigenvalues;
use crate::error::{Error, Result};
use crate::operator::CMatrix;
use crate::quaternion::{Quaternion, SliceComplex};
use crate::slice::{AxSymDomain, BoundingBox, StemFunction};

/// Clearance kept from branch cuts and poles.
pub const CUT_BUFFER: f64 = 1e-6;

/// Sampling box attached to catalog domains.
pub const DEFAULT_BOX: BoundingBox = BoundingBox {
    alpha_min: -4.0,
    alpha_max: 4.0,
    beta_max: 4.0,
};

/// Looks up a catalog function by name.
pub fn lookup(name: &str) -> Result<StemFunction> {
    let name = name.trim();
    let (head, arg) = match name.split_once(':') {
        Some((h, a)) => (h, Some(a.trim())),
        None => (name, None),
    };
    match (head, arg) {
        ("exp", None) => holo(name, |z| z.exp(), AxSymDomain::everywhere(DEFAULT_BOX)),
        ("log", None) => holo(name, |z| z.ln(), off_cut()),
        ("sqrt", None) => holo(name, |z| z.sqrt(), off_cut()),
        ("pow", Some(a)) => {
            let n: i32 = a.parse().map_err(|_| bad(name, "exponent must be an integer"))?;
            let domain = if n >= 0 {
                AxSymDomain::everywhere(DEFAULT_BOX)
            } else {
                away_from(name, vec![SliceComplex::new(0.0, 0.0)])
            };
            holo(name, move |z| z.powi(n), domain)
        }
        ("poly", Some(a)) => {
            let c = real_list(name, &json(name, a)?)?;
            holo(name, move |z| horner(&c, z), AxSymDomain::everywhere(DEFAULT_BOX))
        }
        ("ratpoly", Some(a)) => {
            let (p, q) = a.split_once("]/[").ok_or_else(|| bad(name, "expected [p]/[q]"))?;
            let p = real_list(name, &json(name, &format!("{p}]"))?)?;
            let q = real_list(name, &json(name, &format!("[{q}"))?)?;
            let q = trim_leading_zeros(q);
            if q.is_empty() {
                return Err(bad(name, "zero denominator"));
            }
            let domain = away_from(name, poly_roots(&q)?);
            holo(name, move |z| horner(&p, z) / horner(&q, z), domain)
        }
        ("monoL", Some(a)) | ("monoR", Some(a)) => {
            let (coeff, n) = monomial_args(name, &json(name, a)?)?;
            let power = holo(&format!("pow:{n}"), move |z| z.powi(n as i32), AxSymDomain::everywhere(DEFAULT_BOX))?;
            let f = if head == "monoL" {
                power.with_left_coefficient(coeff)?
            } else {
                power.with_right_coefficient(coeff)?
            };
            Ok(f.renamed(name))
        }
        _ => Err(bad(name, "unknown catalog function")),
    }
}

fn holo(
    name: &str,
    h: impl Fn(SliceComplex) -> SliceComplex + Send + Sync + 'static,
    domain: AxSymDomain,
) -> Result<StemFunction> {
    StemFunction::from_holomorphic_intrinsic(name, h, domain)
}

fn bad(name: &str, why: &str) -> Error {
    Error::InvalidFunction(format!("{name}: {why}"))
}

fn json(name: &str, text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| bad(name, &e.to_string()))
}

fn real_list(name: &str, v: &Value) -> Result<Vec<f64>> {
    let items = v.as_array().ok_or_else(|| bad(name, "expected a list of reals"))?;
    items
        .iter()
        .map(|x| x.as_f64().filter(|x| x.is_finite()).ok_or_else(|| bad(name, "non-numeric coefficient")))
        .collect()
}

fn monomial_args(name: &str, v: &Value) -> Result<(Quaternion, u32)> {
    let items = v.as_array().filter(|a| a.len() == 2).ok_or_else(|| bad(name, "expected [a,n]"))?;
    let coeff = match &items[0] {
        Value::Number(x) => Quaternion::real(x.as_f64().unwrap_or(f64::NAN)),
        q @ Value::Array(_) => {
            let c = real_list(name, q)?;
            let c: [f64; 4] = c.try_into().map_err(|_| bad(name, "quaternion needs 4 components"))?;
            Quaternion::from_array(c)
        }
        _ => return Err(bad(name, "coefficient must be a real or [a,b,c,d]")),
    };
    if !coeff.is_finite() {
        return Err(bad(name, "non-finite coefficient"));
    }
    let n = items[1]
        .as_u64()
        .and_then(|n| u32::try_from(n).ok())
        .ok_or_else(|| bad(name, "power must be a non-negative integer"))?;
    Ok((coeff, n))
}

/// `c[0] + c[1] z + ...`
pub fn horner(c: &[f64], z: SliceComplex) -> SliceComplex {
    c.iter().rev().fold(SliceComplex::new(0.0, 0.0), |acc, &ck| acc * z + ck)
}

fn trim_leading_zeros(mut c: Vec<f64>) -> Vec<f64> {
    while c.last() == Some(&0.0) {
        c.pop();
    }
    c
}

/// Roots of `c[0] + c[1] z + ...` (highest coefficient nonzero) from the
/// companion matrix.
fn poly_roots(c: &[f64]) -> Result<Vec<SliceComplex>> {
    let deg = c.len() - 1;
    let lead = c[deg];
    let m = CMatrix::from_fn(deg, deg, |r, k| {
        let v = if r == 0 {
            -c[deg - 1 - k] / lead
        } else if r == k + 1 {
            1.0
        } else {
            0.0
        };
        SliceComplex::new(v, 0.0)
    });
    schur_eigenvalues(m)
}

/// `log` and `sqrt`: everything farther than [`CUT_BUFFER`] from `(-inf, 0]`.
fn off_cut() -> AxSymDomain {
    AxSymDomain::new("H minus (-inf, 0]", DEFAULT_BOX, |a, b| {
        let dist = if a <= 0.0 { b } else { a.hypot(b) };
        dist > CUT_BUFFER
    })
}

fn away_from(name: &str, points: Vec<SliceComplex>) -> AxSymDomain {
    AxSymDomain::new(format!("H minus the poles of {name}"), DEFAULT_BOX, move |a, b| {
        points.iter().all(|p| (a - p.re).hypot(b - p.im.abs()) > CUT_BUFFER)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::slice::Kind;

    fn q(a: f64, b: f64, c: f64, d: f64) -> Quaternion {
        Quaternion::new(a, b, c, d)
    }

    #[test]
    fn names_parse() {
        for name in ["exp", "log", "sqrt", "pow:3", "pow:-2", "poly:[1,0,1]", "ratpoly:[1]/[1,0,1]", "monoL:[[0,1,0,0],1]", "monoR:[2,3]"] {
            lookup(name).unwrap_or_else(|e| panic!("{name}: {e}"));
        }
        for name in ["cos", "pow:x", "poly:[1,", "ratpoly:[1]/[0]", "monoL:[1]", "monoR:[[1,2],1]", "monoL:[1,-1]"] {
            assert!(matches!(lookup(name), Err(Error::InvalidFunction(_))), "{name}");
        }
    }

    #[test]
    fn values() {
        let x = q(0.3, 0.4, -1.2, 0.5);
        let close = |a: Quaternion, b: Quaternion| (a - b).norm() < 1e-13;

        assert!(close(lookup("poly:[1,0,1]").unwrap().eval(Quaternion::J).unwrap(), Quaternion::ZERO));
        assert!(close(lookup("pow:3").unwrap().eval(x).unwrap(), x * x * x));
        assert!(close(lookup("pow:-1").unwrap().eval(x).unwrap(), x.inv().unwrap()));
        let r = lookup("ratpoly:[1]/[1,0,1]").unwrap();
        assert!(close(r.eval(x).unwrap(), (Quaternion::ONE + x * x).inv().unwrap()));
        assert!(matches!(r.eval(Quaternion::K), Err(Error::OutOfDomain { .. })));

        let s = lookup("sqrt").unwrap().eval(x).unwrap();
        assert!(close(s * s, x));
        let e = lookup("exp").unwrap();
        let l = lookup("log").unwrap().eval(x).unwrap();
        assert!(close(e.eval(l).unwrap(), x));
        assert!(lookup("log").unwrap().eval(Quaternion::real(-1.0)).is_err());

        let ml = lookup("monoL:[[0,1,0,0],1]").unwrap();
        assert_eq!(ml.kind, Kind::Right);
        assert!(close(ml.eval(Quaternion::J).unwrap(), Quaternion::K));
        let mr = lookup("monoR:[[0,1,0,0],1]").unwrap();
        assert_eq!(mr.kind, Kind::Left);
        assert!(close(mr.eval(Quaternion::J).unwrap(), -Quaternion::K));
        let m2 = lookup("monoL:[[1,2,0,-1],2]").unwrap();
        assert!(close(m2.eval(x).unwrap(), q(1.0, 2.0, 0.0, -1.0) * x * x));
    }

    #[test]
    fn catalog_validates() {
        for name in ["exp", "log", "sqrt", "pow:4", "poly:[1,-2,0,1]", "monoL:[[0,1,1,0],2]"] {
            let f = lookup(name).unwrap();
            let h = 1e-4;
            let report = f.validate(DEFAULT_BOX.size() / 32.0, h, 1e-5);
            assert!(report.passed(), "{name}: {report:?}");
            assert!(report.cauchy_riemann_residual < 1e3 * h * h, "{name}: {report:?}");
        }
    }
}
