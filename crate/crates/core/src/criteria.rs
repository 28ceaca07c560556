//! Deciding whether a rectangle of ratio `z` can be cut into rectangles whose
//! side ratios come from a fixed list of shapes in `Q[√p]`.
//!
//! Shapes are sorted into three regimes by the signs of their conjugates:
//!
//! * some conjugate positive and some negative: every positive `z` is tileable;
//! * all conjugates positive: `z = e + f√p` is tileable iff `e > 0` and
//!   `|f| / e ≤ max |bᵢ| / aᵢ`;
//! * all conjugates negative: `z` is tileable iff `f > 0` and
//!   `|e| / f ≤ max |aᵢ| / bᵢ`.
//!
//! [`theorem6_decide`] is an unrelated single-shape criterion, written in the
//! coordinates `z = δ·x + γ`, kept separate so the two can be checked
//! against each other.

use std::fmt;
use std::sync::Arc;

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::exactfield::{format_rational, FieldContext, FieldError, Quad, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CriteriaError {
    #[error("shape {index} ({value}) is not positive")]
    DegenerateShape { index: usize, value: Quad },
    #[error("target {0} is not positive")]
    NonPositiveTarget(Quad),
    #[error("at least one shape is required")]
    NoShapes,
    #[error("shape {0} is rational; the single-shape criterion needs an irrational shape")]
    RationalShape(Quad),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// A validated instance: the shapes `x₁ … xₙ` and the target `z`, all
/// positive and all in one field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShapeSpec {
    ctx: Arc<FieldContext>,
    shapes: Vec<Quad>,
    target: Quad,
}

impl ShapeSpec {
    pub fn new(
        ctx: &Arc<FieldContext>,
        shapes: Vec<Quad>,
        target: Quad,
    ) -> Result<Self, CriteriaError> {
        if shapes.is_empty() {
            return Err(CriteriaError::NoShapes);
        }
        for (index, x) in shapes.iter().enumerate() {
            x.check_context(ctx)?;
            if !x.is_positive() {
                return Err(CriteriaError::DegenerateShape {
                    index,
                    value: x.clone(),
                });
            }
        }
        target.check_context(ctx)?;
        if !target.is_positive() {
            return Err(CriteriaError::NonPositiveTarget(target));
        }
        Ok(ShapeSpec {
            ctx: Arc::clone(ctx),
            shapes,
            target,
        })
    }

    pub fn ctx(&self) -> &Arc<FieldContext> {
        &self.ctx
    }

    pub fn shapes(&self) -> &[Quad] {
        &self.shapes
    }

    pub fn target(&self) -> &Quad {
        &self.target
    }

    pub fn with_target(&self, target: Quad) -> Result<Self, CriteriaError> {
        ShapeSpec::new(&self.ctx, self.shapes.clone(), target)
    }
}

/// Which regime the shape list falls into. Indices are 0-based positions in
/// [`ShapeSpec::shapes`]; ties for the extremal shape go to the smallest
/// index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Classification {
    /// `conj(xᵢ) > 0` and `conj(xⱼ) < 0`.
    Mixed { i: usize, j: usize },
    /// Every conjugate positive; `bound = |b_k| / a_k` is the maximum.
    AllPositiveConj { k: usize, bound: Rational },
    /// Every conjugate negative; `bound = |a_k| / b_k` is the maximum.
    AllNegativeConj { k: usize, bound: Rational },
}

impl Classification {
    pub fn name(&self) -> &'static str {
        match self {
            Classification::Mixed { .. } => "Mixed",
            Classification::AllPositiveConj { .. } => "AllPositiveConj",
            Classification::AllNegativeConj { .. } => "AllNegativeConj",
        }
    }

    /// Index of the shape that carries the bound, if any.
    pub fn extremal(&self) -> Option<usize> {
        match self {
            Classification::Mixed { .. } => None,
            Classification::AllPositiveConj { k, .. } | Classification::AllNegativeConj { k, .. } => {
                Some(*k)
            }
        }
    }

    /// Human-readable description of the set of tileable ratios.
    pub fn admissible_set(&self) -> String {
        match self {
            Classification::Mixed { .. } => "P = { e + f√p > 0 : e, f ∈ Q }".to_string(),
            Classification::AllPositiveConj { bound, .. } => format!(
                "M = {{ e + f√p : e > 0, |f|/e ≤ {} }}",
                format_rational(bound)
            ),
            Classification::AllNegativeConj { bound, .. } => format!(
                "N = {{ e + f√p : f > 0, |e|/f ≤ {} }}",
                format_rational(bound)
            ),
        }
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classification::Mixed { i, j } => write!(f, "Mixed(i={i}, j={j})"),
            Classification::AllPositiveConj { k, bound } => {
                write!(f, "AllPositiveConj(k={k}, bound={})", format_rational(bound))
            }
            Classification::AllNegativeConj { k, bound } => {
                write!(f, "AllNegativeConj(k={k}, bound={})", format_rational(bound))
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Yes,
    No,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decision {
    pub verdict: Verdict,
    pub classification: Classification,
    /// Set on NO verdicts. The matching certificate is produced by
    /// [`crate::tiling::make_bundle`].
    pub reason: Option<String>,
}

impl Decision {
    pub fn is_yes(&self) -> bool {
        self.verdict == Verdict::Yes
    }
}

/// Conjugate signs of every shape, classified.
pub fn classify(spec: &ShapeSpec) -> Result<Classification, CriteriaError> {
    classify_shapes(spec.shapes())
}

pub(crate) fn classify_shapes(shapes: &[Quad]) -> Result<Classification, CriteriaError> {
    let mut first_pos = None;
    let mut first_neg = None;
    for (index, x) in shapes.iter().enumerate() {
        if !x.is_positive() {
            return Err(CriteriaError::DegenerateShape {
                index,
                value: x.clone(),
            });
        }
        match x.conj().sign() {
            1 => {
                first_pos.get_or_insert(index);
            }
            -1 => {
                first_neg.get_or_insert(index);
            }
            _ => unreachable!("conj(x) = 0 would make √p rational"),
        }
    }
    match (first_pos, first_neg) {
        (Some(i), Some(j)) => Ok(Classification::Mixed { i, j }),
        (Some(_), None) => {
            // a > 0 for every shape here, so |b|/a is well defined.
            let (k, bound) = argmax(shapes.iter().map(|x| x.f().abs() / x.e()));
            Ok(Classification::AllPositiveConj { k, bound })
        }
        (None, Some(_)) => {
            let (k, bound) = argmax(shapes.iter().map(|x| x.e().abs() / x.f()));
            Ok(Classification::AllNegativeConj { k, bound })
        }
        (None, None) => Err(CriteriaError::NoShapes),
    }
}

fn argmax(values: impl Iterator<Item = Rational>) -> (usize, Rational) {
    let mut best: Option<(usize, Rational)> = None;
    for (index, v) in values.enumerate() {
        match &best {
            Some((_, b)) if v <= *b => {}
            _ => best = Some((index, v)),
        }
    }
    best.expect("nonempty shape list")
}

/// Whether `z` lies in the admissible set of `class`.
pub(crate) fn admits(class: &Classification, z: &Quad) -> bool {
    let (e, f) = (z.e(), z.f());
    match class {
        Classification::Mixed { .. } => z.is_positive(),
        Classification::AllPositiveConj { bound, .. } => e.is_positive() && f.abs() <= e * bound,
        Classification::AllNegativeConj { bound, .. } => f.is_positive() && e.abs() <= f * bound,
    }
}

pub fn decide(spec: &ShapeSpec) -> Result<Decision, CriteriaError> {
    let classification = classify(spec)?;
    let z = spec.target();
    if admits(&classification, z) {
        return Ok(Decision {
            verdict: Verdict::Yes,
            classification,
            reason: None,
        });
    }
    let reason = match &classification {
        Classification::Mixed { .. } => unreachable!("every positive target is admissible"),
        Classification::AllPositiveConj { bound, .. } => {
            if !z.e().is_positive() {
                format!("rational part {} is not positive", format_rational(z.e()))
            } else {
                format!(
                    "|f|/e = {} exceeds the bound {}",
                    format_rational(&(z.f().abs() / z.e())),
                    format_rational(bound)
                )
            }
        }
        Classification::AllNegativeConj { bound, .. } => {
            if !z.f().is_positive() {
                format!("√p coefficient {} is not positive", format_rational(z.f()))
            } else {
                format!(
                    "|e|/f = {} exceeds the bound {}",
                    format_rational(&(z.e().abs() / z.f())),
                    format_rational(bound)
                )
            }
        }
    };
    Ok(Decision {
        verdict: Verdict::No,
        classification,
        reason: Some(reason),
    })
}

/// Single-shape criterion in the coordinates `z = δ·x + γ` with `x = α + β√p`:
/// tileable iff `γ = 0 ∧ δ > 0`, or `α ≠ 0 ∧ γ(α² − β²p)/α > 0 ∧ δ + γ/(2α) ≥ 0`.
pub fn theorem6_decide(z: &Quad, x: &Quad) -> Result<bool, CriteriaError> {
    z.checked_sub(x)?;
    if x.f().is_zero() {
        return Err(CriteriaError::RationalShape(x.clone()));
    }
    if !z.is_positive() {
        return Err(CriteriaError::NonPositiveTarget(z.clone()));
    }
    if !x.is_positive() {
        return Err(CriteriaError::DegenerateShape {
            index: 0,
            value: x.clone(),
        });
    }
    let (alpha, beta) = (x.e(), x.f());
    let delta = z.f() / beta;
    let gamma = z.e() - &delta * alpha;
    if gamma.is_zero() && delta.is_positive() {
        return Ok(true);
    }
    if alpha.is_zero() {
        return Ok(false);
    }
    let two = Rational::from_integer(2.into());
    let first = &gamma * (alpha * alpha - beta * beta * x.p()) / alpha;
    let second = &delta + &gamma / (two * alpha);
    Ok(first.is_positive() && !second.is_negative())
}
