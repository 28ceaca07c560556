//! JSON documents for problems, tilings and certificates. Every exact value
//! is a string (`"num"` or `"num/den"`), never a JSON number; a document
//! carries its radicand once at the top level.
//!
//! ```json
//! { "p": "2", "shapes": [{"e": "1", "f": "1"}], "target": {"e": "0", "f": "1"} }
//! ```

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::criteria::{CriteriaError, ShapeSpec};
use crate::exactfield::{format_rational, parse_rational, FieldContext, FieldError, Quad};
use crate::tiling::{AreaCoeffs, Certificate, CertificateBundle, PlacedTile, Tiling, TilingError};

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("malformed JSON at line {line}, column {column}: {message}")]
    Json {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{path}: {source}")]
    Value { path: String, source: FieldError },
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Criteria(#[from] CriteriaError),
    #[error(transparent)]
    Tiling(#[from] TilingError),
    #[error("documents use different radicands ({0} vs {1})")]
    RadicandMismatch(String, String),
}

impl From<serde_json::Error> for DocumentError {
    fn from(err: serde_json::Error) -> Self {
        DocumentError::Json {
            line: err.line(),
            column: err.column(),
            message: err.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuadDoc {
    pub e: String,
    pub f: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemDoc {
    pub p: String,
    pub shapes: Vec<QuadDoc>,
    pub target: QuadDoc,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundsDoc {
    #[serde(rename = "W")]
    pub width: QuadDoc,
    #[serde(rename = "H")]
    pub height: QuadDoc,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TileDoc {
    pub x: QuadDoc,
    pub y: QuadDoc,
    pub w: QuadDoc,
    pub h: QuadDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shape_index: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TilingDoc {
    pub p: String,
    pub bounds: BoundsDoc,
    pub tiles: Vec<TileDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoeffsDoc {
    #[serde(rename = "A")]
    pub a: String,
    #[serde(rename = "B")]
    pub b: String,
    #[serde(rename = "C")]
    pub c: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateDoc {
    pub coeffs: CoeffsDoc,
    pub shape: QuadDoc,
    pub target: QuadDoc,
    pub leading: String,
    pub quarter_discriminant: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReductionDoc {
    pub shape_index: usize,
    pub tiling: TilingDoc,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BundleDoc {
    pub p: String,
    pub k: usize,
    pub core: CertificateDoc,
    pub reductions: Vec<ReductionDoc>,
}

fn value(path: impl FnOnce() -> String, text: &str) -> Result<num_rational::BigRational, DocumentError> {
    parse_rational(text).map_err(|source| DocumentError::Value { path: path(), source })
}

fn context(p: &str) -> Result<Arc<FieldContext>, DocumentError> {
    let p = value(|| "p".to_string(), p)?;
    Ok(FieldContext::new(p)?)
}

impl QuadDoc {
    pub fn from_quad(q: &Quad) -> Self {
        QuadDoc {
            e: format_rational(q.e()),
            f: format_rational(q.f()),
        }
    }

    pub fn to_quad(&self, ctx: &Arc<FieldContext>, path: &str) -> Result<Quad, DocumentError> {
        let e = value(|| format!("{path}.e"), &self.e)?;
        let f = value(|| format!("{path}.f"), &self.f)?;
        Ok(Quad::new(ctx, e, f))
    }
}

impl ProblemDoc {
    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn from_spec(spec: &ShapeSpec) -> Self {
        ProblemDoc {
            p: format_rational(spec.ctx().p()),
            shapes: spec.shapes().iter().map(QuadDoc::from_quad).collect(),
            target: QuadDoc::from_quad(spec.target()),
        }
    }

    pub fn to_spec(&self) -> Result<ShapeSpec, DocumentError> {
        let ctx = context(&self.p)?;
        let shapes = self
            .shapes
            .iter()
            .enumerate()
            .map(|(i, s)| s.to_quad(&ctx, &format!("shapes[{i}]")))
            .collect::<Result<Vec<_>, _>>()?;
        let target = self.target.to_quad(&ctx, "target")?;
        Ok(ShapeSpec::new(&ctx, shapes, target)?)
    }
}

/// Parses a problem document straight into a validated instance.
pub fn parse_problem(text: &str) -> Result<ShapeSpec, DocumentError> {
    ProblemDoc::parse(text)?.to_spec()
}

impl TilingDoc {
    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn from_tiling(t: &Tiling) -> Self {
        TilingDoc {
            p: format_rational(t.ctx().p()),
            bounds: BoundsDoc {
                width: QuadDoc::from_quad(t.width()),
                height: QuadDoc::from_quad(t.height()),
            },
            tiles: t
                .tiles()
                .iter()
                .map(|tile| TileDoc {
                    x: QuadDoc::from_quad(&tile.x),
                    y: QuadDoc::from_quad(&tile.y),
                    w: QuadDoc::from_quad(&tile.w),
                    h: QuadDoc::from_quad(&tile.h),
                    shape_index: tile.shape_index,
                })
                .collect(),
        }
    }

    pub fn to_tiling(&self) -> Result<Tiling, DocumentError> {
        let ctx = context(&self.p)?;
        let width = self.bounds.width.to_quad(&ctx, "bounds.W")?;
        let height = self.bounds.height.to_quad(&ctx, "bounds.H")?;
        let tiles = self
            .tiles
            .iter()
            .enumerate()
            .map(|(i, t)| {
                let at = |field: &str| format!("tiles[{i}].{field}");
                Ok(PlacedTile::new(
                    t.x.to_quad(&ctx, &at("x"))?,
                    t.y.to_quad(&ctx, &at("y"))?,
                    t.w.to_quad(&ctx, &at("w"))?,
                    t.h.to_quad(&ctx, &at("h"))?,
                    t.shape_index,
                ))
            })
            .collect::<Result<Vec<_>, DocumentError>>()?;
        Ok(Tiling::new(width, height, tiles)?)
    }
}

impl CertificateDoc {
    pub fn from_certificate(c: &Certificate) -> Self {
        CertificateDoc {
            coeffs: CoeffsDoc {
                a: format_rational(&c.coeffs.a),
                b: format_rational(&c.coeffs.b),
                c: format_rational(&c.coeffs.c),
            },
            shape: QuadDoc::from_quad(&c.shape),
            target: QuadDoc::from_quad(&c.target),
            leading: format_rational(&c.leading),
            quarter_discriminant: format_rational(&c.quarter_discriminant),
        }
    }

    pub fn to_certificate(&self, ctx: &Arc<FieldContext>) -> Result<Certificate, DocumentError> {
        let r = |path: &str, text: &str| value(|| format!("core.{path}"), text);
        Ok(Certificate {
            coeffs: AreaCoeffs::new(
                r("coeffs.A", &self.coeffs.a)?,
                r("coeffs.B", &self.coeffs.b)?,
                r("coeffs.C", &self.coeffs.c)?,
            ),
            shape: self.shape.to_quad(ctx, "core.shape")?,
            target: self.target.to_quad(ctx, "core.target")?,
            leading: r("leading", &self.leading)?,
            quarter_discriminant: r("quarter_discriminant", &self.quarter_discriminant)?,
        })
    }
}

impl BundleDoc {
    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn from_bundle(b: &CertificateBundle) -> Self {
        BundleDoc {
            p: format_rational(b.core.shape.p()),
            k: b.k,
            core: CertificateDoc::from_certificate(&b.core),
            reductions: b
                .reductions
                .iter()
                .map(|(i, t)| ReductionDoc {
                    shape_index: *i,
                    tiling: TilingDoc::from_tiling(t),
                })
                .collect(),
        }
    }

    pub fn to_bundle(&self) -> Result<CertificateBundle, DocumentError> {
        let ctx = context(&self.p)?;
        let core = self.core.to_certificate(&ctx)?;
        let reductions = self
            .reductions
            .iter()
            .map(|r| {
                if r.tiling.p != self.p {
                    return Err(DocumentError::RadicandMismatch(self.p.clone(), r.tiling.p.clone()));
                }
                Ok((r.shape_index, r.tiling.to_tiling()?))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(CertificateBundle {
            k: self.k,
            core,
            reductions,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::int;

    #[test]
    fn problem_parsing() {
        let spec = parse_problem(
            r#"{"p":"2","shapes":[{"e":"1","f":"1"}],"target":{"e":"0","f":"1"}}"#,
        )
        .unwrap();
        let c = spec.ctx().clone();
        assert_eq!(*spec.target(), Quad::from_ints(&c, 0, 1));
        assert_eq!(spec.shapes(), &[Quad::from_ints(&c, 1, 1)]);
    }

    #[test]
    fn problem_errors() {
        let err = parse_problem(r#"{"p":"9/4","shapes":[{"e":"1","f":"1"}],"target":{"e":"1","f":"0"}}"#)
            .unwrap_err();
        assert!(matches!(err, DocumentError::Field(FieldError::RationalSquareRoot(_))));

        let err = parse_problem(r#"{"p":"2","shapes":[{"e":"-3","f":"1"}],"target":{"e":"1","f":"0"}}"#)
            .unwrap_err();
        assert!(matches!(
            err,
            DocumentError::Criteria(CriteriaError::DegenerateShape { index: 0, .. })
        ));

        let err = parse_problem(r#"{"p":"2","shapes":[{"e":"1.5","f":"1"}],"target":{"e":"1","f":"0"}}"#)
            .unwrap_err();
        assert_eq!(err.to_string(), "shapes[0].e: malformed rational \"1.5\"");

        let err = parse_problem("{\"p\":\"2\",\n\"shapes\":[}").unwrap_err();
        assert!(matches!(err, DocumentError::Json { line: 2, .. }), "{err}");

        let err = parse_problem(r#"{"p":"-2","shapes":[],"target":{"e":"1","f":"0"}}"#).unwrap_err();
        assert!(matches!(err, DocumentError::Field(FieldError::NonPositiveRadicand(_))));
    }

    #[test]
    fn tiling_round_trip() {
        let c = FieldContext::new(int(2)).unwrap();
        let spec = ShapeSpec::new(&c, vec![Quad::from_ints(&c, 3, 1)], Quad::one(&c)).unwrap();
        let t = crate::constructor::construct(&spec).unwrap();
        let text = serde_json::to_string(&TilingDoc::from_tiling(&t)).unwrap();
        let back = TilingDoc::parse(&text).unwrap().to_tiling().unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn bundle_round_trip() {
        let c = FieldContext::new(int(2)).unwrap();
        let shapes = [Quad::from_ints(&c, 3, 1), Quad::from_ints(&c, 4, 1)];
        let bundle = crate::tiling::make_bundle(&Quad::from_ints(&c, 1, 1), &shapes).unwrap();
        let doc = BundleDoc::from_bundle(&bundle);
        assert_eq!(doc.core.quarter_discriminant, "-56");
        let text = serde_json::to_string_pretty(&doc).unwrap();
        assert_eq!(BundleDoc::parse(&text).unwrap().to_bundle().unwrap(), bundle);
    }
}
