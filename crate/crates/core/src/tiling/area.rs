use super::{Tiling, TilingError};
use crate::exactfield::{Frac, FracSum, Quad, Rational};

/// Coefficients `(A, B, C)` of the bilinear "area"
/// `S(α+β√p, γ+δ√p) = αγA + (βγ + αδ)B + βδC`.
///
/// With `(1, 0, p)` this is the rational part of the ordinary area; other
/// choices give functionals that are still additive over dissections but
/// can vanish on the outer rectangle while keeping one sign on every tile.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AreaCoeffs {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
}

impl AreaCoeffs {
    pub fn new(a: Rational, b: Rational, c: Rational) -> Self {
        AreaCoeffs { a, b, c }
    }
}

/// Symmetric in its two side arguments.
pub fn area_functional(coeffs: &AreaCoeffs, side1: &Quad, side2: &Quad) -> Rational {
    let (alpha, beta) = (side1.e(), side1.f());
    let (gamma, delta) = (side2.e(), side2.f());
    alpha * gamma * &coeffs.a + (beta * gamma + alpha * delta) * &coeffs.b + beta * delta * &coeffs.c
}

/// Whether the tiles' "areas" sum to the "area" of the bounds. Holds for
/// every exact dissection; a tiling that fails it cannot be one.
pub fn area_additivity_check(t: &Tiling, coeffs: &AreaCoeffs) -> Result<bool, TilingError> {
    Ok(area_additivity_check_many(t, std::slice::from_ref(coeffs))?[0])
}

/// [`area_additivity_check`] for several coefficient triples. The functional
/// is linear in `(A, B, C)`, so the tile sums of `αγ`, `βγ + αδ` and `βδ`
/// are formed once and each triple costs a constant number of operations.
pub fn area_additivity_check_many(
    t: &Tiling,
    coeffs: &[AreaCoeffs],
) -> Result<Vec<bool>, TilingError> {
    for tile in t.tiles() {
        tile.check_field(t.ctx())?;
    }
    let parts = |w: &Quad, h: &Quad| {
        let (alpha, beta) = (Frac::of(w.e()), Frac::of(w.f()));
        let (gamma, delta) = (Frac::of(h.e()), Frac::of(h.f()));
        [alpha.mul(&gamma), beta.mul(&gamma).add(&alpha.mul(&delta)), beta.mul(&delta)]
    };
    let mut acc = [FracSum::default(), FracSum::default(), FracSum::default()];
    for tile in t.tiles() {
        for (sum, part) in acc.iter_mut().zip(parts(&tile.w, &tile.h)) {
            sum.push(part);
        }
    }
    let sums = acc.map(|sum| sum.total());
    let outer = parts(t.width(), t.height()).map(|part| part.reduce());
    let apply = |v: &[Rational; 3], c: &AreaCoeffs| &v[0] * &c.a + &v[1] * &c.b + &v[2] * &c.c;
    Ok(coeffs.iter().map(|c| apply(&sums, c) == apply(&outer, c)).collect())
}
