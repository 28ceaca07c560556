//! Impossibility certificates.
//!
//! For a single shape `x = a + b√p` and a target `z = e + f√p` outside the
//! admissible set, choose `(A, B, C) = (f, −e, 2fa²/b² − pf)`. The outer
//! `1 × z` rectangle then has "area" `ef − fe = 0`. A tile with sides
//! `α + β√p` and `(α + β√p)·x` has "area"
//!
//! ```text
//! α²(fa − eb) + 2αβ(fa²/b − ea) + β²(2fa³/b² − pfa − peb)
//! ```
//!
//! whose quarter-discriminant is `(a² − pb²)(e² − f²a²/b²) < 0`, so every tile
//! has "area" of one fixed sign and no dissection can exist.
//!
//! Strictness at the edges of the admissible set: if `conj(x) > 0` then
//! `a/|b| > √p`, and `z > 0` gives `|e| < f·a/|b|` whenever `e ≤ 0`; if
//! `conj(x) < 0` then `|a|/b < √p`, and `z > 0` gives `e > |f|·|a|/b`
//! whenever `f ≤ 0`. Both keep the second factor of the discriminant
//! strictly negative (resp. positive) and `fa − eb ≠ 0`.
//!
//! A rational shape (`b = 0`) uses `C = (e² + 1)/f` instead: the tile form is
//! `a(fα² − 2eαβ + Cβ²)` with quarter-discriminant `−a²`.

use num_traits::{One, Signed, Zero};

use super::area::{area_functional, AreaCoeffs};
use super::verify::verify;
use super::{Tiling, TilingError};
use crate::constructor;
use crate::criteria::{classify_shapes, decide, Classification, ShapeSpec};
use crate::exactfield::{Quad, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub coeffs: AreaCoeffs,
    /// The single tile ratio being refuted.
    pub shape: Quad,
    pub target: Quad,
    /// Coefficient of `α²` in the tile form, `fa − eb`.
    pub leading: Rational,
    pub quarter_discriminant: Rational,
}

/// A certificate against the extremal shape `x_k`, plus tilings of every
/// other shape's rectangle by `x_k`-tiles. Together they show that any
/// dissection using the full shape list could be refined into one using
/// `x_k` alone, which the core certificate rules out.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificateBundle {
    pub k: usize,
    pub core: Certificate,
    /// `(i, tiling of ratio x_i by x_k-tiles)` for each `i ≠ k`.
    pub reductions: Vec<(usize, Tiling)>,
}

/// Coefficients `(α², αβ, β²)` of the tile "area" as a quadratic form in the
/// components of the short side, for tiles of ratio `shape`. Derived by
/// substituting `γ = αa + pβb`, `δ = βa + αb` into the functional.
fn tile_form(coeffs: &AreaCoeffs, shape: &Quad) -> (Rational, Rational, Rational) {
    let (a, b, p) = (shape.e(), shape.f(), shape.p());
    let AreaCoeffs { a: ca, b: cb, c: cc } = coeffs;
    let two = Rational::from_integer(2.into());
    let sq = a * ca + b * cb;
    let cross = p * b * ca + two * a * cb + b * cc;
    let tail = p * b * cb + a * cc;
    (sq, cross, tail)
}

fn quarter_discriminant(form: &(Rational, Rational, Rational)) -> Rational {
    let half = &form.1 / Rational::from_integer(2.into());
    &half * &half - &form.0 * &form.2
}

pub fn make_certificate(z: &Quad, x1: &Quad) -> Result<Certificate, TilingError> {
    let spec = ShapeSpec::new(z.ctx(), vec![x1.clone()], z.clone())?;
    let decision = decide(&spec)?;
    if decision.is_yes() {
        return Err(TilingError::NotAnImpossibleInstance(format!(
            "{z} is tileable by {x1}-rectangles"
        )));
    }
    let (e, f) = (z.e(), z.f());
    let (a, b) = (x1.e(), x1.f());
    let c = if b.is_zero() {
        // NO with a rational shape means z is irrational, so f ≠ 0.
        (e * e + Rational::one()) / f
    } else {
        let two = Rational::from_integer(2.into());
        two * f * a * a / (b * b) - x1.p() * f
    };
    let coeffs = AreaCoeffs::new(f.clone(), -e.clone(), c);
    let form = tile_form(&coeffs, x1);
    let cert = Certificate {
        leading: form.0.clone(),
        quarter_discriminant: quarter_discriminant(&form),
        coeffs,
        shape: x1.clone(),
        target: z.clone(),
    };
    debug_assert_eq!(cert.leading, f * a - e * b);
    if !check_certificate(&cert) {
        return Err(TilingError::ConstructionFailure(format!(
            "certificate for {z} against {x1} failed its own check"
        )));
    }
    Ok(cert)
}

/// Re-derives everything from `coeffs`, `shape` and `target`: the outer
/// rectangle's "area" must vanish, and the tile form must be definite with
/// the recorded leading coefficient and discriminant.
pub fn check_certificate(cert: &Certificate) -> bool {
    if !cert.shape.same_field(&cert.target)
        || !cert.shape.is_positive()
        || !cert.target.is_positive()
    {
        return false;
    }
    let one = Quad::one(cert.target.ctx());
    if !area_functional(&cert.coeffs, &one, &cert.target).is_zero() {
        return false;
    }
    let form = tile_form(&cert.coeffs, &cert.shape);
    let disc = quarter_discriminant(&form);
    !form.0.is_zero()
        && disc.is_negative()
        && form.0 == cert.leading
        && disc == cert.quarter_discriminant
}

pub fn make_bundle(z: &Quad, shapes: &[Quad]) -> Result<CertificateBundle, TilingError> {
    let spec = ShapeSpec::new(z.ctx(), shapes.to_vec(), z.clone())?;
    let decision = decide(&spec)?;
    let k = match (&decision.classification, decision.is_yes()) {
        (_, true) | (Classification::Mixed { .. }, _) => {
            return Err(TilingError::NotAnImpossibleInstance(format!(
                "{z} is tileable by the given shapes"
            )))
        }
        (class, false) => class.extremal().expect("not mixed"),
    };
    let xk = &shapes[k];
    let core = make_certificate(z, xk)?;
    let mut reductions = Vec::with_capacity(shapes.len() - 1);
    for (i, xi) in shapes.iter().enumerate() {
        if i == k {
            continue;
        }
        let sub = ShapeSpec::new(z.ctx(), vec![xk.clone()], xi.clone())?;
        let tiling = constructor::construct(&sub).map_err(|err| {
            TilingError::ConstructionFailure(format!("reduction of shape {i} to shape {k}: {err}"))
        })?;
        reductions.push((i, relabel(tiling, k)));
    }
    let bundle = CertificateBundle {
        k,
        core,
        reductions,
    };
    if !check_bundle(&bundle, shapes) {
        return Err(TilingError::ConstructionFailure(
            "bundle failed re-verification".to_string(),
        ));
    }
    Ok(bundle)
}

fn relabel(tiling: Tiling, k: usize) -> Tiling {
    let (w, h, mut tiles) = tiling.into_parts();
    for t in &mut tiles {
        t.shape_index = Some(k);
    }
    Tiling::from_parts(w, h, tiles)
}

/// Checks a bundle against the shape list it claims to refute: the core
/// certificate is valid for `shapes[k]`, `k` is extremal, and each
/// reduction is an exact dissection of a `1 × x_i` rectangle (either
/// orientation) into `x_k`-tiles.
pub fn check_bundle(bundle: &CertificateBundle, shapes: &[Quad]) -> bool {
    let Some(xk) = shapes.get(bundle.k) else {
        return false;
    };
    if bundle.core.shape != *xk || !check_certificate(&bundle.core) {
        return false;
    }
    match classify_shapes(shapes) {
        Ok(class) if class.extremal() == Some(bundle.k) => {}
        _ => return false,
    }
    let mut seen: Vec<usize> = bundle.reductions.iter().map(|(i, _)| *i).collect();
    seen.sort_unstable();
    let expected: Vec<usize> = (0..shapes.len()).filter(|&i| i != bundle.k).collect();
    if seen != expected {
        return false;
    }
    bundle.reductions.iter().all(|(i, tiling)| {
        let xi = &shapes[*i];
        let ratio = tiling.ratio();
        if ratio != *xi && ratio != xi.inv().expect("positive shape") {
            return false;
        }
        let mut copy = tiling.clone();
        verify(&mut copy, std::slice::from_ref(xk)).is_ok_and(|r| r.is_valid())
    })
}
