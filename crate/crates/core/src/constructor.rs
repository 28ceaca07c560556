//! Explicit tilings for every tileable instance.
//!
//! All constructions are built from three moves on canonical tilings (width
//! 1, height equal to the realized ratio):
//!
//! * stacking a `1 × a` tiling on a `1 × b` tiling gives `1 × (a + b)`;
//! * turning a `1 × a` tiling on its side and rescaling gives `1 × 1/a`;
//! * copies of a `1 × a` tiling, scaled and laid out along the Euclidean
//!   algorithm on `(n, m)`, fill `n × m·a` and, shrunk by `1/n`, give
//!   `1 × (m/n)·a`. The plain `n × m` grid ([`scale_rational`]) does the
//!   same with `m·n` copies; the Euclidean layout needs only the sum of the
//!   continued-fraction quotients of `m/n`.
//!
//! A [`Recipe`] records such a composition. Its tile count and realized
//! ratio are known before evaluation, so callers can refuse oversized
//! constructions cheaply.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::criteria::{decide, Classification, CriteriaError, ShapeSpec};
use crate::exactfield::{format_rational, Quad, Rational};
use crate::tiling::{verify, PlacedTile, Tiling, TilingError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error("tilings to be stacked must both have width 1")]
    WidthMismatch,
    #[error("scale factor {0} is not positive")]
    NonPositiveScale(Rational),
    #[error("conjugate of {0} is not positive")]
    ConjugateNotPositive(Quad),
    #[error("conjugate of {0} is not negative")]
    ConjugateNotNegative(Quad),
    #[error("target is not tileable: {0}")]
    NotTileable(String),
    #[error("constructed tiling failed verification: {0}")]
    InternalVerificationFailure(String),
    #[error(transparent)]
    Criteria(#[from] CriteriaError),
    #[error(transparent)]
    Tiling(#[from] TilingError),
}

/// A composition of the three tiling moves over single-tile leaves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Recipe {
    /// One tile of ratio `ratio` filling a `1 × ratio` box.
    Unit { shape_index: usize, ratio: Quad },
    /// First operand at the bottom.
    Stack(Box<Recipe>, Box<Recipe>),
    Transpose(Box<Recipe>),
    ScaleRational(Box<Recipe>, Rational),
}

impl Recipe {
    pub fn unit(shape_index: usize, ratio: Quad) -> Recipe {
        Recipe::Unit { shape_index, ratio }
    }

    pub fn stack(bottom: Recipe, top: Recipe) -> Recipe {
        Recipe::Stack(Box::new(bottom), Box::new(top))
    }

    pub fn transpose(inner: Recipe) -> Recipe {
        Recipe::Transpose(Box::new(inner))
    }

    /// Scaling by 1 is dropped.
    pub fn scale(inner: Recipe, q: Rational) -> Recipe {
        if q.is_one() {
            inner
        } else {
            Recipe::ScaleRational(Box::new(inner), q)
        }
    }

    /// The ratio the evaluated tiling will have.
    pub fn ratio(&self) -> Quad {
        match self {
            Recipe::Unit { ratio, .. } => ratio.clone(),
            Recipe::Stack(a, b) => a.ratio() + b.ratio(),
            Recipe::Transpose(r) => r.ratio().inv().expect("ratios are positive"),
            Recipe::ScaleRational(r, q) => r.ratio().scale(q),
        }
    }

    pub fn tile_count(&self) -> BigUint {
        match self {
            Recipe::Unit { .. } => BigUint::one(),
            Recipe::Stack(a, b) => a.tile_count() + b.tile_count(),
            Recipe::Transpose(r) => r.tile_count(),
            Recipe::ScaleRational(r, q) => r.tile_count() * euclid_copies(q),
        }
    }

    pub fn children(&self) -> Vec<&Recipe> {
        match self {
            Recipe::Unit { .. } => vec![],
            Recipe::Stack(a, b) => vec![a, b],
            Recipe::Transpose(r) | Recipe::ScaleRational(r, _) => vec![r],
        }
    }

    /// Canonical tiling: width 1, height [`Recipe::ratio`].
    pub fn evaluate(&self) -> Tiling {
        match self {
            Recipe::Unit { shape_index, ratio } => unit(*shape_index, ratio.clone()),
            Recipe::Stack(a, b) => stack(&a.evaluate(), &b.evaluate()).expect("canonical widths"),
            Recipe::Transpose(r) => normalize(&transpose(&r.evaluate())),
            Recipe::ScaleRational(r, q) => {
                scale_euclid(&r.evaluate(), q).expect("positive scale on canonical width")
            }
        }
    }
}

impl fmt::Display for Recipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Recipe::Unit { shape_index, .. } => write!(f, "x{shape_index}"),
            Recipe::Stack(a, b) => write!(f, "stack({a}, {b})"),
            Recipe::Transpose(r) => write!(f, "transpose({r})"),
            Recipe::ScaleRational(r, q) => write!(f, "scale({r}, {})", format_rational(q)),
        }
    }
}

/// One tile filling `1 × x`.
pub fn unit(shape_index: usize, x: Quad) -> Tiling {
    let ctx = x.ctx().clone();
    let one = Quad::one(&ctx);
    let tile = PlacedTile::new(Quad::zero(&ctx), Quad::zero(&ctx), one.clone(), x.clone(), Some(shape_index));
    Tiling::from_parts(one, x, vec![tile])
}

/// `bottom` with `top` translated up by the height of `bottom`.
pub fn stack(bottom: &Tiling, top: &Tiling) -> Result<Tiling, ConstructError> {
    let ctx = bottom.ctx();
    let one = Quad::one(ctx);
    if *bottom.width() != one || *top.width() != one {
        return Err(ConstructError::WidthMismatch);
    }
    let lift = bottom.height();
    let mut tiles = bottom.tiles().to_vec();
    tiles.extend(top.tiles().iter().map(|t| {
        PlacedTile::new(t.x.clone(), &t.y + lift, t.w.clone(), t.h.clone(), t.shape_index)
    }));
    Ok(Tiling::from_parts(one, lift + top.height(), tiles))
}

/// Mirror in the diagonal: swaps x with y and width with height.
pub fn transpose(t: &Tiling) -> Tiling {
    let tiles = t
        .tiles()
        .iter()
        .map(|tile| {
            PlacedTile::new(tile.y.clone(), tile.x.clone(), tile.h.clone(), tile.w.clone(), tile.shape_index)
        })
        .collect();
    Tiling::from_parts(t.height().clone(), t.width().clone(), tiles)
}

/// Uniform rescaling to width 1.
pub fn normalize(t: &Tiling) -> Tiling {
    let s = t.width().inv().expect("positive width");
    let tiles = t
        .tiles()
        .iter()
        .map(|tile| PlacedTile::new(&tile.x * &s, &tile.y * &s, &tile.w * &s, &tile.h * &s, tile.shape_index))
        .collect();
    Tiling::from_parts(Quad::one(t.ctx()), t.height() * &s, tiles)
}

/// For `q = m/n`: an `n`-wide, `m`-high grid of copies of `t`, shrunk by
/// `1/n`. Produces `m·n·|t|` tiles.
pub fn scale_rational(t: &Tiling, q: &Rational) -> Result<Tiling, ConstructError> {
    if !q.is_positive() {
        return Err(ConstructError::NonPositiveScale(q.clone()));
    }
    let ctx = t.ctx();
    if *t.width() != Quad::one(ctx) {
        return Err(ConstructError::WidthMismatch);
    }
    let m = q.numer().magnitude().clone();
    let n = q.denom().magnitude().clone();
    let shrink = Rational::new(1.into(), n.clone().into());
    let a = t.height();
    let mut tiles = Vec::new();
    let mut col = BigUint::zero();
    while col < n {
        let dx = Quad::from_rational(ctx, Rational::from_integer(col.clone().into()));
        let mut row = BigUint::zero();
        while row < m {
            let dy = a.scale(&Rational::from_integer(row.clone().into()));
            for tile in t.tiles() {
                tiles.push(PlacedTile::new(
                    (&tile.x + &dx).scale(&shrink),
                    (&tile.y + &dy).scale(&shrink),
                    tile.w.scale(&shrink),
                    tile.h.scale(&shrink),
                    tile.shape_index,
                ));
            }
            row += 1u32;
        }
        col += 1u32;
    }
    Ok(Tiling::from_parts(Quad::one(ctx), a.scale(q), tiles))
}

/// Number of copies [`scale_euclid`] uses for `q`: the sum of the partial
/// quotients of the continued fraction of `q`.
pub fn euclid_copies(q: &Rational) -> BigUint {
    let mut w = q.denom().magnitude().clone();
    let mut h = q.numer().magnitude().clone();
    let mut copies = BigUint::zero();
    while !w.is_zero() && !h.is_zero() {
        if h >= w {
            copies += &h / &w;
            h %= &w;
        } else {
            copies += &w / &h;
            w %= &h;
        }
    }
    copies
}

/// For `q = m/n`: fills an `n × m·a` box with scaled copies of `t` by
/// repeatedly cutting off the largest run of equal copies that spans the
/// shorter side, then shrinks by `1/n`. Every cut is a full cut, so the
/// result is guillotine whenever `t` is.
pub fn scale_euclid(t: &Tiling, q: &Rational) -> Result<Tiling, ConstructError> {
    if !q.is_positive() {
        return Err(ConstructError::NonPositiveScale(q.clone()));
    }
    let ctx = t.ctx();
    if *t.width() != Quad::one(ctx) {
        return Err(ConstructError::WidthMismatch);
    }
    let a = t.height();
    let int = |v: &BigUint| Rational::from_integer(v.clone().into());
    let shrink = Rational::new(1.into(), q.denom().clone());
    let (mut w, mut h) = (q.denom().magnitude().clone(), q.numer().magnitude().clone());
    // lower-left corner of the unfilled part, in units of 1 and a
    let (mut x0, mut y0) = (BigUint::zero(), BigUint::zero());
    let mut tiles = Vec::new();
    let mut place = |x: &BigUint, y: &BigUint, side: &BigUint| {
        let k = int(side) * &shrink;
        let dx = Quad::from_rational(ctx, int(x) * &shrink);
        let dy = a.scale(&(int(y) * &shrink));
        for tile in t.tiles() {
            tiles.push(PlacedTile::new(
                &tile.x.scale(&k) + &dx,
                &tile.y.scale(&k) + &dy,
                tile.w.scale(&k),
                tile.h.scale(&k),
                tile.shape_index,
            ));
        }
    };
    while !w.is_zero() && !h.is_zero() {
        if h >= w {
            for _ in 0..usize::try_from(&h / &w).expect("copy count fits in usize") {
                place(&x0, &y0, &w);
                y0 += &w;
            }
            h %= &w;
        } else {
            for _ in 0..usize::try_from(&w / &h).expect("copy count fits in usize") {
                place(&x0, &y0, &h);
                x0 += &h;
            }
            w %= &h;
        }
    }
    Ok(Tiling::from_parts(Quad::one(ctx), a.scale(q), tiles))
}

fn two() -> Rational {
    Rational::from_integer(2.into())
}

/// Ratio `conj(x)` from `x`-tiles: `1/x = conj(x)/norm(x)` and the norm is a
/// positive rational.
pub fn conjugate_recipe(shape_index: usize, x: &Quad) -> Result<Recipe, ConstructError> {
    if !x.conj().is_positive() {
        return Err(ConstructError::ConjugateNotPositive(x.clone()));
    }
    Ok(Recipe::scale(
        Recipe::transpose(Recipe::unit(shape_index, x.clone())),
        x.norm(),
    ))
}

/// Ratio `q ∈ Q⁺` from `x`-tiles with `conj(x) > 0`: `x + conj(x) = 2a`.
pub fn rational_recipe(q: &Rational, shape_index: usize, x: &Quad) -> Result<Recipe, ConstructError> {
    if !q.is_positive() {
        return Err(ConstructError::NonPositiveScale(q.clone()));
    }
    if x.is_rational() {
        return Ok(Recipe::scale(Recipe::unit(shape_index, x.clone()), q / x.e()));
    }
    let pair = Recipe::stack(Recipe::unit(shape_index, x.clone()), conjugate_recipe(shape_index, x)?);
    Ok(Recipe::scale(pair, q / (two() * x.e())))
}

/// Ratio `−conj(x)` from `x`-tiles with `conj(x) < 0`.
pub fn neg_conjugate_recipe(shape_index: usize, x: &Quad) -> Result<Recipe, ConstructError> {
    if !x.conj().is_negative() {
        return Err(ConstructError::ConjugateNotNegative(x.clone()));
    }
    Ok(Recipe::scale(
        Recipe::transpose(Recipe::unit(shape_index, x.clone())),
        -x.norm(),
    ))
}

/// Ratio `q√p` from `x`-tiles with `conj(x) < 0`: `x − conj(x) = 2b√p`.
pub fn sqrtp_recipe(q: &Rational, shape_index: usize, x: &Quad) -> Result<Recipe, ConstructError> {
    if !q.is_positive() {
        return Err(ConstructError::NonPositiveScale(q.clone()));
    }
    let pair = Recipe::stack(
        Recipe::unit(shape_index, x.clone()),
        neg_conjugate_recipe(shape_index, x)?,
    );
    Ok(Recipe::scale(pair, q / (two() * x.f())))
}

pub fn conjugate_tiling(x: &Quad) -> Result<Tiling, ConstructError> {
    Ok(conjugate_recipe(0, x)?.evaluate())
}

pub fn rational_tiling(q: &Rational, x: &Quad) -> Result<Tiling, ConstructError> {
    Ok(rational_recipe(q, 0, x)?.evaluate())
}

pub fn neg_conjugate_tiling(x: &Quad) -> Result<Tiling, ConstructError> {
    Ok(neg_conjugate_recipe(0, x)?.evaluate())
}

pub fn sqrtp_tiling(q: &Rational, x: &Quad) -> Result<Tiling, ConstructError> {
    Ok(sqrtp_recipe(q, 0, x)?.evaluate())
}

/// Stacks the parts that are present; at least one must be.
fn join(parts: [Option<Recipe>; 2]) -> Recipe {
    match parts {
        [Some(a), Some(b)] => Recipe::stack(a, b),
        [Some(a), None] | [None, Some(a)] => a,
        [None, None] => unreachable!("a positive target has a nonzero part"),
    }
}

/// Plan for a tileable instance. Fails with `NotTileable` otherwise.
pub fn plan(spec: &ShapeSpec) -> Result<Recipe, ConstructError> {
    let decision = decide(spec)?;
    if !decision.is_yes() {
        return Err(ConstructError::NotTileable(
            decision.reason.unwrap_or_default(),
        ));
    }
    let z = spec.target();
    let shapes = spec.shapes();
    if let Some(i) = shapes.iter().position(|x| x == z) {
        return Ok(Recipe::unit(i, z.clone()));
    }
    let recip = z.inv().expect("positive target");
    if let Some(i) = shapes.iter().position(|x| *x == recip) {
        return Ok(Recipe::transpose(Recipe::unit(i, recip)));
    }
    match decision.classification {
        Classification::Mixed { i, j } => mixed_plan(z, i, &shapes[i], j, &shapes[j]),
        Classification::AllPositiveConj { k, .. } => positive_plan(z, k, &shapes[k]),
        Classification::AllNegativeConj { k, .. } => negative_plan(z, k, &shapes[k]),
    }
}

/// `conj(xi) > 0 > conj(xj)`: rationals come from `xi`, multiples of `√p`
/// from `xj`. A target with a negative component is reached through its
/// reciprocal, whose components are both positive.
fn mixed_plan(z: &Quad, i: usize, xi: &Quad, j: usize, xj: &Quad) -> Result<Recipe, ConstructError> {
    let (e, f) = (z.e(), z.f());
    if e.is_negative() || f.is_negative() {
        let recip = z.inv().expect("positive target");
        return Ok(Recipe::transpose(mixed_plan(&recip, i, xi, j, xj)?));
    }
    let rational = if e.is_positive() {
        Some(rational_recipe(e, i, xi)?)
    } else {
        None
    };
    let radical = if f.is_positive() {
        Some(sqrtp_recipe(f, j, xj)?)
    } else {
        None
    };
    Ok(join([rational, radical]))
}

/// Every conjugate positive and `|f|/e ≤ |b|/a` for the extremal `x = a + b√p`:
/// `z = (|f|/|b|)·(a ± |b|√p) + (e − |f|a/|b|)` with both coefficients
/// nonnegative. `a + b√p` is `x` itself and `a − b√p` its conjugate.
fn positive_plan(z: &Quad, k: usize, x: &Quad) -> Result<Recipe, ConstructError> {
    let (e, f) = (z.e(), z.f());
    let (a, b) = (x.e(), x.f());
    if b.is_zero() {
        return rational_recipe(e, k, x);
    }
    let coef = f.abs() / b.abs();
    let rest = e - &coef * a;
    let directed = if f.is_negative() == b.is_negative() {
        Recipe::unit(k, x.clone())
    } else {
        conjugate_recipe(k, x)?
    };
    let slanted = (!coef.is_zero()).then(|| Recipe::scale(directed, coef));
    let rational = if rest.is_positive() {
        Some(rational_recipe(&rest, k, x)?)
    } else {
        None
    };
    Ok(join([slanted, rational]))
}

/// Every conjugate negative and `|e|/f ≤ |a|/b` for the extremal
/// `x = a + b√p` (so `b > 0`): `z = (|e|/|a|)·(±|a| + b√p) + (f − |e|b/|a|)√p`.
/// `±|a| + b√p` is `x` when the signs of `a` and `e` agree, `−conj(x)`
/// otherwise.
fn negative_plan(z: &Quad, k: usize, x: &Quad) -> Result<Recipe, ConstructError> {
    let (e, f) = (z.e(), z.f());
    let (a, b) = (x.e(), x.f());
    if a.is_zero() {
        return sqrtp_recipe(f, k, x);
    }
    let coef = e.abs() / a.abs();
    let rest = f - &coef * b;
    let directed = if e.is_negative() == a.is_negative() {
        Recipe::unit(k, x.clone())
    } else {
        neg_conjugate_recipe(k, x)?
    };
    let slanted = (!coef.is_zero()).then(|| Recipe::scale(directed, coef));
    let radical = if rest.is_positive() {
        Some(sqrtp_recipe(&rest, k, x)?)
    } else {
        None
    };
    Ok(join([slanted, radical]))
}

/// Builds, evaluates and re-verifies a tiling of the target rectangle
/// (`1 × z`) by the spec's shapes.
pub fn construct(spec: &ShapeSpec) -> Result<Tiling, ConstructError> {
    let recipe = plan(spec)?;
    let mut tiling = recipe.evaluate();
    check_construction(&mut tiling, spec)?;
    Ok(tiling)
}

pub(crate) fn check_construction(tiling: &mut Tiling, spec: &ShapeSpec) -> Result<(), ConstructError> {
    let fail = |msg: String| Err(ConstructError::InternalVerificationFailure(msg));
    if tiling.ratio() != *spec.target() {
        return fail(format!("realized ratio {} instead of {}", tiling.ratio(), spec.target()));
    }
    let report = verify(tiling, spec.shapes())?;
    if !report.is_valid() {
        let first = report.failures.first().map(ToString::to_string).unwrap_or_default();
        return fail(first);
    }
    if !report.guillotine {
        return fail("not a guillotine tiling".to_string());
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::exactfield::{int, rat, FieldContext};
    use crate::tiling::{is_guillotine, verify_exact_cover, verify_ratios};

    fn c2() -> Arc<FieldContext> {
        FieldContext::new(int(2)).unwrap()
    }

    fn assert_valid(t: &Tiling, shapes: &[Quad]) {
        let mut copy = t.clone();
        let report = verify(&mut copy, shapes).unwrap();
        assert!(report.is_valid(), "{report:?}");
        assert!(report.guillotine);
    }

    #[test]
    fn unit_tiles() {
        let c = c2();
        let x = Quad::from_ints(&c, 1, 1);
        let t = unit(0, x.clone());
        assert_eq!(t.len(), 1);
        assert_eq!(*t.height(), x);
        assert_valid(&t, &[x]);
        assert!(is_guillotine(&unit(0, Quad::from_ints(&c, 3, 1))).unwrap());
    }

    #[test]
    fn stacking() {
        let c = c2();
        let x = Quad::from_ints(&c, 1, 1);
        let t = stack(&unit(0, x.clone()), &unit(0, x.clone())).unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!(t.ratio(), Quad::from_ints(&c, 2, 2));
        assert_valid(&t, &[x.clone()]);

        let t = stack(&unit(0, Quad::one(&c)), &unit(1, Quad::from_ints(&c, 0, 1))).unwrap();
        assert_eq!(t.ratio(), Quad::from_ints(&c, 1, 1));
        assert!(verify_exact_cover(&t).unwrap().is_dissection());

        let wide = transpose(&unit(0, x.clone()));
        assert_eq!(stack(&wide, &unit(0, x)), Err(ConstructError::WidthMismatch));
    }

    #[test]
    fn transposition() {
        let c = c2();
        let x = Quad::from_ints(&c, 1, 1);
        let t = transpose(&unit(0, x.clone()));
        assert_eq!(*t.width(), x);
        assert_eq!(*t.height(), Quad::one(&c));
        assert_eq!(transpose(&t), unit(0, x.clone()));
        assert_valid(&t, &[x.clone()]);
        let n = normalize(&t);
        assert_eq!(*n.width(), Quad::one(&c));
        assert_eq!(n.ratio(), x.inv().unwrap());
    }

    #[test]
    fn euclidean_scaling() {
        let c = c2();
        let x = Quad::from_ints(&c, 1, 1);
        let base = stack(&unit(0, x.clone()), &unit(0, Quad::from_ints(&c, 2, 1))).unwrap();
        let shapes = [x.clone(), Quad::from_ints(&c, 2, 1)];
        // 5/3 = 1 + 1/(1 + 1/2): 1 + 1 + 2 copies
        let q = rat(5, 3);
        assert_eq!(euclid_copies(&q), BigUint::from(4u32));
        let t = scale_euclid(&base, &q).unwrap();
        assert_eq!(t.len(), 4 * base.len());
        assert_eq!(t.ratio(), base.ratio().scale(&q));
        assert_valid(&t, &shapes);
        // unit numerator or denominator: same count as the grid
        for q in [int(7), rat(1, 6)] {
            let grid = scale_rational(&base, &q).unwrap();
            let euclid = scale_euclid(&base, &q).unwrap();
            assert_eq!(grid.len(), euclid.len());
            assert_valid(&euclid, &shapes);
        }
        assert_eq!(euclid_copies(&rat(3, 191)), BigUint::from(66u32));
    }

    #[test]
    fn rational_scaling() {
        let c = c2();
        let x = Quad::from_ints(&c, 1, 1);
        let t = scale_rational(&unit(0, x.clone()), &int(7)).unwrap();
        assert_eq!(t.len(), 7);
        assert_eq!(t.ratio(), Quad::from_ints(&c, 7, 7));
        assert_valid(&t, &[x.clone()]);

        let base = unit(0, x.clone());
        assert_eq!(scale_rational(&base, &int(1)).unwrap(), base);

        let t = scale_rational(&unit(0, x.clone()), &rat(1, 2)).unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!(t.ratio(), Quad::new(&c, rat(1, 2), rat(1, 2)));
        assert_valid(&t, &[x.clone()]);

        assert!(matches!(
            scale_rational(&base, &int(0)),
            Err(ConstructError::NonPositiveScale(_))
        ));
    }

    #[test]
    fn conjugates() {
        let c = c2();
        let x = Quad::from_ints(&c, 3, 1);
        let t = conjugate_tiling(&x).unwrap();
        assert_eq!(t.len(), 7);
        assert_eq!(t.ratio(), Quad::from_ints(&c, 3, -1));
        assert_valid(&t, &[x]);

        let two = Quad::from_ints(&c, 2, 0);
        let t = conjugate_tiling(&two).unwrap();
        assert_eq!(t.len(), 4);
        assert_eq!(t.ratio(), two);

        assert!(matches!(
            conjugate_tiling(&Quad::from_ints(&c, 1, 1)),
            Err(ConstructError::ConjugateNotPositive(_))
        ));
    }

    #[test]
    fn rationals() {
        let c = c2();
        let x = Quad::from_ints(&c, 3, 1);
        let t = rational_tiling(&int(1), &x).unwrap();
        assert_eq!(t.len(), 48);
        assert_eq!(t.ratio(), Quad::one(&c));
        assert_valid(&t, &[x.clone()]);

        let t = rational_tiling(&int(6), &x).unwrap();
        assert_eq!(t.len(), 8);
        assert_eq!(t.ratio(), Quad::from_ints(&c, 6, 0));

        let two = Quad::from_ints(&c, 2, 0);
        assert_eq!(
            rational_recipe(&int(5), 0, &two).unwrap(),
            Recipe::scale(Recipe::unit(0, two.clone()), rat(5, 2))
        );
        let t = rational_tiling(&int(5), &two).unwrap();
        assert_eq!(t.ratio(), Quad::from_ints(&c, 5, 0));
        assert_valid(&t, &[two]);
    }

    #[test]
    fn negative_conjugates() {
        let c = c2();
        let x = Quad::from_ints(&c, 1, 1);
        let t = neg_conjugate_tiling(&x).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t.ratio(), Quad::from_ints(&c, -1, 1));

        let y = Quad::from_ints(&c, -1, 2);
        let t = neg_conjugate_tiling(&y).unwrap();
        assert_eq!(t.len(), 7);
        assert_eq!(t.ratio(), Quad::from_ints(&c, 1, 2));
        assert_valid(&t, &[y]);

        assert!(matches!(
            neg_conjugate_tiling(&Quad::from_ints(&c, 3, 1)),
            Err(ConstructError::ConjugateNotNegative(_))
        ));
    }

    #[test]
    fn radicals() {
        let c = c2();
        let x = Quad::from_ints(&c, 1, 1);
        let t = sqrtp_tiling(&int(1), &x).unwrap();
        assert_eq!(t.len(), 4);
        assert_eq!(t.ratio(), Quad::from_ints(&c, 0, 1));
        assert_valid(&t, &[x.clone()]);

        let t = sqrtp_tiling(&int(2), &x).unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!(t.ratio(), Quad::from_ints(&c, 0, 2));

        assert!(matches!(
            sqrtp_tiling(&int(1), &Quad::from_ints(&c, 3, 1)),
            Err(ConstructError::ConjugateNotNegative(_))
        ));
    }

    fn spec(c: &Arc<FieldContext>, shapes: &[(i64, i64)], z: Quad) -> ShapeSpec {
        let shapes = shapes.iter().map(|&(a, b)| Quad::from_ints(c, a, b)).collect();
        ShapeSpec::new(c, shapes, z).unwrap()
    }

    #[test]
    fn constructions() {
        let c = c2();
        let t = construct(&spec(&c, &[(3, 1)], Quad::one(&c))).unwrap();
        assert_eq!(t.len(), 48);

        let t = construct(&spec(&c, &[(1, 1)], Quad::from_ints(&c, 0, 1))).unwrap();
        assert_eq!(t.len(), 4);

        let s = spec(&c, &[(3, 1), (1, 1)], Quad::from_ints(&c, -1, 3));
        let recipe = plan(&s).unwrap();
        assert!(matches!(recipe, Recipe::Transpose(_)));
        let t = construct(&s).unwrap();
        assert_eq!(t.ratio(), Quad::from_ints(&c, -1, 3));

        let t = construct(&spec(&c, &[(3, 1)], Quad::from_ints(&c, 3, 1))).unwrap();
        assert_eq!(t.len(), 1);

        assert!(matches!(
            construct(&spec(&c, &[(1, 1)], Quad::one(&c))),
            Err(ConstructError::NotTileable(_))
        ));
    }

    #[test]
    fn every_recipe_node_evaluates_to_a_valid_tiling() {
        let c = c2();
        let shapes = [(3, 1), (1, 1)];
        let s = spec(&c, &shapes, Quad::from_ints(&c, -1, 2));
        let recipe = plan(&s).unwrap();
        let mut stack = vec![&recipe];
        while let Some(node) = stack.pop() {
            let mut t = node.evaluate();
            assert_eq!(t.ratio(), node.ratio());
            assert_eq!(BigUint::from(t.len()), node.tile_count());
            assert!(verify_exact_cover(&t).unwrap().is_dissection());
            assert!(verify_ratios(&mut t, s.shapes()).ok);
            stack.extend(node.children());
        }
    }
}
