//! JSON documents for the core data types.
//!
//! The core crate stays free of serde, so each type has a plain mirror here
//! with `from_core` / `to_core` conversions. Conversions back into core
//! types run the same validation as the core constructors.

use bromwich_core::{
    Complex64, Contour, FunctionSpec, InverseKind, Pole, QuadratureSpec, Shape, TransformExpr,
    TransformKind,
};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::parse::{kind_from_name, kind_name};

/// `{kind, params, alphas?}`
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecDoc {
    pub kind: String,
    #[serde(default)]
    pub params: Vec<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub alphas: Vec<f64>,
}

impl SpecDoc {
    pub fn from_core(spec: &FunctionSpec) -> Self {
        SpecDoc {
            kind: kind_name(spec.kind()).to_string(),
            params: spec.params(),
            alphas: spec.alphas().to_vec(),
        }
    }

    pub fn to_core(&self) -> Result<FunctionSpec> {
        let kind = kind_from_name(&self.kind)
            .ok_or_else(|| Error::Invalid(format!("unknown function kind '{}'", self.kind)))?;
        Ok(FunctionSpec::from_params(kind, &self.params)?.with_alphas(self.alphas.clone())?)
    }
}

/// `{panel_order, rel_tol, abs_tol, max_panels, tail_growth}`; missing
/// fields take the defaults.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct QuadDoc {
    pub panel_order: usize,
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_panels: usize,
    pub tail_growth: f64,
}

impl Default for QuadDoc {
    fn default() -> Self {
        QuadDoc::from_core(&QuadratureSpec::default())
    }
}

impl QuadDoc {
    pub fn from_core(q: &QuadratureSpec) -> Self {
        QuadDoc {
            panel_order: q.panel_order,
            rel_tol: q.rel_tol,
            abs_tol: q.abs_tol,
            max_panels: q.max_panels,
            tail_growth: q.tail_growth,
        }
    }

    pub fn to_core(&self) -> Result<QuadratureSpec> {
        let q = QuadratureSpec {
            panel_order: self.panel_order,
            rel_tol: self.rel_tol,
            abs_tol: self.abs_tol,
            max_panels: self.max_panels,
            tail_growth: self.tail_growth,
        };
        q.validate()?;
        Ok(q)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PoleDoc {
    pub re: f64,
    pub im: f64,
    pub res_re: f64,
    pub res_im: f64,
}

/// Transform kind names shared by JSON and the CLI.
pub fn transform_kind_name(kind: TransformKind) -> &'static str {
    match kind {
        TransformKind::Laplace => "laplace",
        TransformKind::Moment => "moment",
        TransformKind::Mellin => "mellin",
    }
}

pub fn transform_kind_from_name(name: &str) -> Result<TransformKind> {
    match name {
        "laplace" => Ok(TransformKind::Laplace),
        "moment" => Ok(TransformKind::Moment),
        "mellin" => Ok(TransformKind::Mellin),
        other => Err(Error::Invalid(format!("unknown transform kind '{other}'"))),
    }
}

/// `{form:"rational", poles}` | `{form:"numeric", source, kind}` | `{form:"gamma"}`
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "form", rename_all = "lowercase", deny_unknown_fields)]
pub enum TransformDoc {
    Rational { poles: Vec<PoleDoc> },
    Numeric { source: SpecDoc, kind: String },
    Gamma,
}

impl TransformDoc {
    pub fn from_core(t: &TransformExpr) -> Self {
        match t {
            TransformExpr::Rational(r) => TransformDoc::Rational {
                poles: r
                    .poles()
                    .iter()
                    .map(|p| PoleDoc {
                        re: p.location.re,
                        im: p.location.im,
                        res_re: p.residue.re,
                        res_im: p.residue.im,
                    })
                    .collect(),
            },
            TransformExpr::Numeric { source, kind } => TransformDoc::Numeric {
                source: SpecDoc::from_core(source),
                kind: transform_kind_name(*kind).to_string(),
            },
            TransformExpr::Gamma => TransformDoc::Gamma,
        }
    }

    pub fn to_core(&self) -> Result<TransformExpr> {
        match self {
            TransformDoc::Rational { poles } => Ok(TransformExpr::rational(
                poles
                    .iter()
                    .map(|p| {
                        Pole::new(
                            Complex64::new(p.re, p.im),
                            Complex64::new(p.res_re, p.res_im),
                        )
                    })
                    .collect(),
            )?),
            TransformDoc::Numeric { source, kind } => Ok(TransformExpr::Numeric {
                source: source.to_core()?,
                kind: transform_kind_from_name(kind)?,
            }),
            TransformDoc::Gamma => Ok(TransformExpr::Gamma),
        }
    }
}

/// Compact pole list `[[re, im, res_re, res_im], ...]`.
pub fn parse_pole_list(s: &str) -> Result<TransformExpr> {
    let rows: Vec<[f64; 4]> = serde_json::from_str(s)?;
    let poles = rows
        .iter()
        .map(|r| Pole::new(Complex64::new(r[0], r[1]), Complex64::new(r[2], r[3])))
        .collect();
    Ok(TransformExpr::rational(poles)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ShapeDoc {
    Bromwich,
    Rectangle,
}

/// `{shape, c_right, c_left?, half_height, delta}`
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ContourDoc {
    pub shape: ShapeDoc,
    pub c_right: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c_left: Option<f64>,
    pub half_height: f64,
    pub delta: f64,
}

impl ContourDoc {
    pub fn from_core(c: &Contour) -> Self {
        ContourDoc {
            shape: match c.shape() {
                Shape::BromwichLine => ShapeDoc::Bromwich,
                Shape::Rectangle => ShapeDoc::Rectangle,
            },
            c_right: c.c_right(),
            c_left: c.c_left(),
            half_height: c.half_height(),
            delta: c.delta(),
        }
    }

    pub fn to_core(&self) -> Result<Contour> {
        let c = match (self.shape, self.c_left) {
            (ShapeDoc::Bromwich, None) => {
                Contour::bromwich(self.c_right, self.half_height, self.delta)?
            }
            (ShapeDoc::Rectangle, Some(left)) => {
                Contour::rectangle(left, self.c_right, self.half_height, self.delta)?
            }
            (ShapeDoc::Bromwich, Some(_)) => {
                return Err(Error::Invalid("a bromwich line has no c_left".into()))
            }
            (ShapeDoc::Rectangle, None) => {
                return Err(Error::Invalid("a rectangle needs c_left".into()))
            }
        };
        Ok(c)
    }
}

pub fn inverse_kind_name(kind: InverseKind) -> &'static str {
    match kind {
        InverseKind::LaplaceKernel => "laplace",
        InverseKind::MellinKernel => "mellin",
    }
}
