//! Rectangles cut into rectangles whose side ratios lie in `Q[√p]`.
//!
//! Given shapes `x₁ … xₙ` and a target ratio `z`, all in one quadratic field,
//! this crate decides whether a `1 × z` rectangle can be dissected into
//! rectangles each similar to some `xᵢ`, builds an explicit guillotine
//! tiling when it can, and otherwise produces a certificate that can be
//! checked with a handful of rational operations.
//!
//! * [`exactfield`]: `Q` and `Q[√p]` arithmetic with exact signs.
//! * [`criteria`]: classification of the shape list and the decision.
//! * [`constructor`]: tilings for every YES instance.
//! * [`tiling`]: the tiling model, verification, the "area" functional and
//!   certificates for NO instances.
//! * [`document`]: the JSON exchange formats.

pub mod constructor;
pub mod criteria;
pub mod document;
pub mod exactfield;
pub mod tiling;

pub use constructor::{construct, plan, Recipe};
pub use criteria::{classify, decide, theorem6_decide, Classification, Decision, ShapeSpec, Verdict};
pub use exactfield::{FieldContext, Quad, Rational};
pub use tiling::{PlacedTile, Tiling};
