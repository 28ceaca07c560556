//! Exact arithmetic in `Q` and in the quadratic field `Q[√p]`.
//!
//! Every comparison made by the decision and verification code goes through
//! [`Quad::sign`], which works on rational components only. Floating point
//! appears in exactly one place, [`Quad::approx`], and only the SVG renderer
//! calls it.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Arbitrary-precision rational, always stored reduced with a positive
/// denominator (zero is `0/1`).
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("radicand must be positive, got {0}")]
    NonPositiveRadicand(Rational),
    #[error("radicand {0} is the square of a rational, so its root is rational")]
    RationalSquareRoot(Rational),
    #[error("operands belong to different fields (p = {left} vs p = {right})")]
    ContextMismatch { left: Rational, right: Rational },
    #[error("division by zero")]
    DivisionByZero,
    #[error("malformed rational {0:?}")]
    MalformedRational(String),
}

/// Parses `"num"` or `"num/den"` with decimal integers. No whitespace, no
/// decimal points.
pub fn parse_rational(text: &str) -> Result<Rational, FieldError> {
    let bad = || FieldError::MalformedRational(text.to_string());
    let parse_int = |s: &str| -> Result<BigInt, FieldError> {
        let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        BigInt::from_str(s).map_err(|_| bad())
    };
    match text.split_once('/') {
        None => Ok(Rational::from_integer(parse_int(text)?)),
        Some((num, den)) => {
            let num = parse_int(num)?;
            let den = parse_int(den)?;
            if den.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(num, den))
        }
    }
}

/// Canonical text form: `"num"` for integers, `"num/den"` otherwise.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn is_perfect_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &r * &r == *n
}

/// The radicand `p` of `Q[√p]`, with `p > 0` and `√p` irrational.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldContext {
    p: Rational,
}

impl FieldContext {
    /// Accepts `p` iff `p > 0` and `p` is not the square of a rational.
    pub fn new(p: Rational) -> Result<Arc<Self>, FieldError> {
        if !p.is_positive() {
            return Err(FieldError::NonPositiveRadicand(p));
        }
        // p = s/t in lowest terms is a rational square iff s and t both are.
        if is_perfect_square(p.numer()) && is_perfect_square(p.denom()) {
            return Err(FieldError::RationalSquareRoot(p));
        }
        Ok(Arc::new(FieldContext { p }))
    }

    pub fn p(&self) -> &Rational {
        &self.p
    }
}

pub fn validate_context(p: Rational) -> Result<Arc<FieldContext>, FieldError> {
    FieldContext::new(p)
}

/// `e + f√p`.
#[derive(Clone)]
pub struct Quad {
    e: Rational,
    f: Rational,
    ctx: Arc<FieldContext>,
}

impl Quad {
    pub fn new(ctx: &Arc<FieldContext>, e: Rational, f: Rational) -> Self {
        Quad {
            e,
            f,
            ctx: Arc::clone(ctx),
        }
    }

    pub fn from_rational(ctx: &Arc<FieldContext>, e: Rational) -> Self {
        Quad::new(ctx, e, Rational::zero())
    }

    /// `e + f√p` with integer components.
    pub fn from_ints(ctx: &Arc<FieldContext>, e: i64, f: i64) -> Self {
        Quad::new(ctx, int(e), int(f))
    }

    pub fn zero(ctx: &Arc<FieldContext>) -> Self {
        Quad::new(ctx, Rational::zero(), Rational::zero())
    }

    pub fn one(ctx: &Arc<FieldContext>) -> Self {
        Quad::new(ctx, Rational::one(), Rational::zero())
    }

    /// The rational component `e`.
    pub fn e(&self) -> &Rational {
        &self.e
    }

    /// The coefficient `f` of `√p`.
    pub fn f(&self) -> &Rational {
        &self.f
    }

    pub fn ctx(&self) -> &Arc<FieldContext> {
        &self.ctx
    }

    pub fn p(&self) -> &Rational {
        &self.ctx.p
    }

    pub fn is_zero(&self) -> bool {
        self.e.is_zero() && self.f.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.f.is_zero()
    }

    pub fn same_field(&self, other: &Quad) -> bool {
        Arc::ptr_eq(&self.ctx, &other.ctx) || self.ctx.p == other.ctx.p
    }

    fn check(&self, other: &Quad) -> Result<(), FieldError> {
        self.check_context(&other.ctx)
    }

    /// Fails unless `self` lives in the field `ctx`.
    pub fn check_context(&self, ctx: &Arc<FieldContext>) -> Result<(), FieldError> {
        if Arc::ptr_eq(&self.ctx, ctx) || self.ctx.p == ctx.p {
            Ok(())
        } else {
            Err(FieldError::ContextMismatch {
                left: self.ctx.p.clone(),
                right: ctx.p.clone(),
            })
        }
    }

    pub fn checked_add(&self, other: &Quad) -> Result<Quad, FieldError> {
        self.check(other)?;
        Ok(Quad::new(&self.ctx, &self.e + &other.e, &self.f + &other.f))
    }

    pub fn checked_sub(&self, other: &Quad) -> Result<Quad, FieldError> {
        self.check(other)?;
        Ok(Quad::new(&self.ctx, &self.e - &other.e, &self.f - &other.f))
    }

    pub fn checked_mul(&self, other: &Quad) -> Result<Quad, FieldError> {
        self.check(other)?;
        let p = &self.ctx.p;
        let e = &self.e * &other.e + p * &self.f * &other.f;
        let f = &self.e * &other.f + &other.e * &self.f;
        Ok(Quad::new(&self.ctx, e, f))
    }

    pub fn checked_div(&self, other: &Quad) -> Result<Quad, FieldError> {
        self.check(other)?;
        self.checked_mul(&other.inv()?)
    }

    /// `(e − f√p) / (e² − p f²)`. The norm cannot vanish for a nonzero
    /// element because `√p` is irrational.
    pub fn inv(&self) -> Result<Quad, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let n = self.norm();
        Ok(Quad::new(&self.ctx, &self.e / &n, -(&self.f / &n)))
    }

    /// `e − f√p`.
    pub fn conj(&self) -> Quad {
        Quad::new(&self.ctx, self.e.clone(), -self.f.clone())
    }

    /// `e² − p f²`, the product of the element with its conjugate.
    pub fn norm(&self) -> Rational {
        &self.e * &self.e - &self.ctx.p * &self.f * &self.f
    }

    pub fn scale(&self, q: &Rational) -> Quad {
        Quad::new(&self.ctx, &self.e * q, &self.f * q)
    }

    /// Exact sign of `e + f√p` as -1, 0 or +1.
    pub fn sign(&self) -> i8 {
        let e = Frac::of(&self.e);
        let f = Frac::of(&self.f);
        quad_sign(&e, &f, &self.ctx.p)
    }

    pub fn is_positive(&self) -> bool {
        self.sign() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.sign() < 0
    }

    /// Exact ordering; fails only on mixed fields.
    pub fn cmp_exact(&self, other: &Quad) -> Result<Ordering, FieldError> {
        self.check(other)?;
        if self == other {
            return Ok(Ordering::Equal);
        }
        let e = Frac::of(&self.e).sub(&Frac::of(&other.e));
        let f = Frac::of(&self.f).sub(&Frac::of(&other.f));
        Ok(quad_sign(&e, &f, &self.ctx.p).cmp(&0))
    }

    /// Whether `self = x·y`, decided without reducing any fraction.
    pub fn is_product_of(&self, x: &Quad, y: &Quad) -> bool {
        if !self.same_field(x) || !self.same_field(y) {
            return false;
        }
        let (xe, xf) = (Frac::of(&x.e), Frac::of(&x.f));
        let (ye, yf) = (Frac::of(&y.e), Frac::of(&y.f));
        let p = Frac::of(&self.ctx.p);
        let e = xe.mul(&ye).add(&p.mul(&xf).mul(&yf));
        let f = xe.mul(&yf).add(&xf.mul(&ye));
        e.sub(&Frac::of(&self.e)).is_zero() && f.sub(&Frac::of(&self.f)).is_zero()
    }

    pub fn abs(&self) -> Quad {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Binary64 approximation for rendering. Never used to decide anything.
    pub fn approx(&self) -> f64 {
        let e = self.e.to_f64().unwrap_or(f64::NAN);
        let f = self.f.to_f64().unwrap_or(f64::NAN);
        if f == 0.0 {
            return e;
        }
        let p = self.ctx.p.to_f64().unwrap_or(f64::NAN);
        e + f * p.sqrt()
    }
}

/// A value with a floating-point enclosure, for sorting many coordinates.
/// Comparisons use the enclosures when they are disjoint and the exact sign
/// otherwise, so the result is always exact.
#[derive(Debug, Clone)]
pub struct Filtered {
    value: Quad,
    mid: f64,
    rad: f64,
}

impl Filtered {
    pub fn new(value: Quad) -> Self {
        let e = value.e.to_f64().unwrap_or(f64::NAN);
        let f = value.f.to_f64().unwrap_or(f64::NAN);
        let root = value.ctx.p.to_f64().unwrap_or(f64::NAN).sqrt();
        let mid = e + f * root;
        // each of e, f, p, √p, the product and the sum contributes at most a
        // couple of ulps of |e| + |f|√p; 2⁻⁴⁰ leaves a wide margin
        let rad = (e.abs() + f.abs() * root) * f64::powi(2.0, -40) + f64::MIN_POSITIVE;
        let (mid, rad) = if mid.is_finite() && rad.is_finite() {
            (mid, rad)
        } else {
            (0.0, f64::INFINITY)
        };
        Filtered { value, mid, rad }
    }

    pub fn value(&self) -> &Quad {
        &self.value
    }

    /// Exact order; panics on mixed fields.
    pub fn cmp_exact(&self, other: &Filtered) -> Ordering {
        let gap = self.mid - other.mid;
        let slack = (self.rad + other.rad) * 2.0;
        if gap > slack {
            Ordering::Greater
        } else if -gap > slack {
            Ordering::Less
        } else {
            self.value
                .cmp_exact(&other.value)
                .expect("compared values share a field")
        }
    }
}

impl PartialEq for Filtered {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Filtered {}

impl PartialOrd for Filtered {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Filtered {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_exact(other)
    }
}

/// An unreduced fraction `n/d` with `d > 0`. Sign and zero tests need no
/// gcd, which dominates the cost of normalized arithmetic on large inputs.
#[derive(Debug, Clone)]
pub(crate) struct Frac {
    n: BigInt,
    d: BigInt,
}

impl Frac {
    pub(crate) fn of(r: &Rational) -> Frac {
        Frac {
            n: r.numer().clone(),
            d: r.denom().clone(),
        }
    }

    pub(crate) fn add(&self, o: &Frac) -> Frac {
        if self.d == o.d {
            Frac {
                n: &self.n + &o.n,
                d: self.d.clone(),
            }
        } else {
            Frac {
                n: &self.n * &o.d + &o.n * &self.d,
                d: &self.d * &o.d,
            }
        }
    }

    pub(crate) fn sub(&self, o: &Frac) -> Frac {
        self.add(&Frac {
            n: -&o.n,
            d: o.d.clone(),
        })
    }

    pub(crate) fn mul(&self, o: &Frac) -> Frac {
        Frac {
            n: &self.n * &o.n,
            d: &self.d * &o.d,
        }
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.n.is_zero()
    }

    fn sign(&self) -> i8 {
        match self.n.sign() {
            num_bigint::Sign::Plus => 1,
            num_bigint::Sign::Minus => -1,
            num_bigint::Sign::NoSign => 0,
        }
    }

    pub(crate) fn reduce(&self) -> Rational {
        Rational::new(self.n.clone(), self.d.clone())
    }
}

/// Sign of `e + f√p`. With opposite component signs it is the sign of `f`
/// exactly when `p f² > e²`.
fn quad_sign(e: &Frac, f: &Frac, p: &Rational) -> i8 {
    let (se, sf) = (e.sign(), f.sign());
    if se == 0 || sf == 0 || se == sf {
        return if se != 0 { se } else { sf };
    }
    let lhs = p.numer() * &f.n * &f.n * &e.d * &e.d;
    let rhs = p.denom() * &e.n * &e.n * &f.d * &f.d;
    sf * match lhs.cmp(&rhs) {
        Ordering::Greater => 1,
        Ordering::Less => -1,
        Ordering::Equal => 0,
    }
}

/// Exact sum of many rational terms, grouped by denominator so that only
/// one reduction per distinct denominator is needed.
#[derive(Debug, Default)]
pub(crate) struct FracSum {
    parts: std::collections::HashMap<BigInt, BigInt>,
}

impl FracSum {
    pub(crate) fn push(&mut self, t: Frac) {
        *self.parts.entry(t.d).or_insert_with(BigInt::zero) += t.n;
    }

    pub(crate) fn total(&self) -> Rational {
        self.parts
            .iter()
            .map(|(d, n)| Rational::new(n.clone(), d.clone()))
            .fold(Rational::zero(), |acc, r| acc + r)
    }
}

impl PartialEq for Quad {
    fn eq(&self, other: &Self) -> bool {
        self.e == other.e && self.f == other.f && self.same_field(other)
    }
}

impl Eq for Quad {}

impl Hash for Quad {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.e.hash(state);
        self.f.hash(state);
    }
}

/// `None` for elements of different fields.
impl PartialOrd for Quad {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.cmp_exact(other).ok()
    }
}

impl fmt::Debug for Quad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Quad({self})")
    }
}

impl fmt::Display for Quad {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = format_rational(&self.ctx.p);
        match (self.e.is_zero(), self.f.is_zero()) {
            (_, true) => write!(out, "{}", format_rational(&self.e)),
            (true, false) => write!(out, "{}√{}", format_rational(&self.f), p),
            (false, false) => {
                let op = if self.f.is_negative() { '-' } else { '+' };
                write!(
                    out,
                    "{} {} {}√{}",
                    format_rational(&self.e),
                    op,
                    format_rational(&self.f.abs()),
                    p
                )
            }
        }
    }
}

// Operator forms panic on mixed fields; use the `checked_*` methods where the
// operands are not already known to share a context.
macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&Quad> for &Quad {
            type Output = Quad;
            fn $method(self, rhs: &Quad) -> Quad {
                self.$checked(rhs).expect("mixed-field arithmetic")
            }
        }
        impl $tr<Quad> for Quad {
            type Output = Quad;
            fn $method(self, rhs: Quad) -> Quad {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Quad> for Quad {
            type Output = Quad;
            fn $method(self, rhs: &Quad) -> Quad {
                (&self).$method(rhs)
            }
        }
        impl $tr<Quad> for &Quad {
            type Output = Quad;
            fn $method(self, rhs: Quad) -> Quad {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);
forward_binop!(Div, div, checked_div);

impl Neg for &Quad {
    type Output = Quad;
    fn neg(self) -> Quad {
        Quad::new(&self.ctx, -self.e.clone(), -self.f.clone())
    }
}

impl Neg for Quad {
    type Output = Quad;
    fn neg(self) -> Quad {
        -&self
    }
}
