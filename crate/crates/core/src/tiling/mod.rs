//! Tilings of a rectangle by axis-aligned rectangles with exact `Q[√p]`
//! coordinates, and everything that checks them: exact cover, side ratios,
//! guillotine structure, the bilinear "area" functional and impossibility
//! certificates.

mod area;
mod certificate;
mod guillotine;
mod search;
mod verify;

use std::sync::Arc;

use thiserror::Error;

use crate::criteria::CriteriaError;
use crate::exactfield::{FieldContext, FieldError, Quad};

pub use area::{area_additivity_check, area_additivity_check_many, area_functional, AreaCoeffs};
pub use certificate::{
    check_bundle, check_certificate, make_bundle, make_certificate, Certificate, CertificateBundle,
};
pub use guillotine::is_guillotine;
pub use search::{bounded_closure_search, Witness, SCALE_POOL};
pub use verify::{verify, verify_exact_cover, verify_ratios, Failure, RatioReport, VerifyReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TilingError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("tile {index} has a side that is not positive")]
    DegenerateTile { index: usize },
    #[error("the bounding rectangle has a side that is not positive")]
    DegenerateBounds,
    #[error("the tiles do not form an exact dissection of the bounds")]
    NotADissection,
    #[error("not an impossible instance: {0}")]
    NotAnImpossibleInstance(String),
    #[error("internal construction failure: {0}")]
    ConstructionFailure(String),
    #[error(transparent)]
    Criteria(#[from] CriteriaError),
}

/// A tile with bottom-left corner `(x, y)` and sides `w × h`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlacedTile {
    pub x: Quad,
    pub y: Quad,
    pub w: Quad,
    pub h: Quad,
    /// Index into the shape list this tile instantiates, when known.
    pub shape_index: Option<usize>,
}

impl PlacedTile {
    pub fn new(x: Quad, y: Quad, w: Quad, h: Quad, shape_index: Option<usize>) -> Self {
        PlacedTile {
            x,
            y,
            w,
            h,
            shape_index,
        }
    }

    pub fn right(&self) -> Quad {
        &self.x + &self.w
    }

    pub fn top(&self) -> Quad {
        &self.y + &self.h
    }

    pub fn area(&self) -> Quad {
        &self.w * &self.h
    }

    fn check_field(&self, ctx: &Arc<FieldContext>) -> Result<(), FieldError> {
        for v in [&self.x, &self.y, &self.w, &self.h] {
            v.check_context(ctx)?;
        }
        Ok(())
    }
}

/// Tiles inside the rectangle `[0, width] × [0, height]`.
///
/// Construction only checks that every value lives in one field and that
/// all sides are positive. Whether the tiles actually dissect the bounds is
/// the job of [`verify_exact_cover`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tiling {
    width: Quad,
    height: Quad,
    tiles: Vec<PlacedTile>,
}

impl Tiling {
    pub fn new(width: Quad, height: Quad, tiles: Vec<PlacedTile>) -> Result<Self, TilingError> {
        width.checked_sub(&height)?;
        if !width.is_positive() || !height.is_positive() {
            return Err(TilingError::DegenerateBounds);
        }
        let ctx = Arc::clone(width.ctx());
        for (index, t) in tiles.iter().enumerate() {
            t.check_field(&ctx)?;
            if !t.w.is_positive() || !t.h.is_positive() {
                return Err(TilingError::DegenerateTile { index });
            }
        }
        Ok(Tiling {
            width,
            height,
            tiles,
        })
    }

    /// Assembles a tiling from parts already known to be well formed.
    pub(crate) fn from_parts(width: Quad, height: Quad, tiles: Vec<PlacedTile>) -> Self {
        debug_assert!(width.is_positive() && height.is_positive());
        Tiling {
            width,
            height,
            tiles,
        }
    }

    pub fn ctx(&self) -> &Arc<FieldContext> {
        self.width.ctx()
    }

    pub fn width(&self) -> &Quad {
        &self.width
    }

    pub fn height(&self) -> &Quad {
        &self.height
    }

    pub fn tiles(&self) -> &[PlacedTile] {
        &self.tiles
    }

    pub fn len(&self) -> usize {
        self.tiles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tiles.is_empty()
    }

    /// `height / width`.
    pub fn ratio(&self) -> Quad {
        &self.height / &self.width
    }

    pub fn into_parts(self) -> (Quad, Quad, Vec<PlacedTile>) {
        (self.width, self.height, self.tiles)
    }
}
