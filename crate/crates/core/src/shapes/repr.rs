//! JSON form of shapes.
//!
//! ```json
//! {"quantization": 64,
//!  "shape": {"kind": "so",
//!            "left":  {"kind": "disc", "anchor": [0,0,0], "magnitude": 6},
//!            "right": {"kind": "disc", "anchor": [0,0,0], "magnitude": 3}}}
//! ```
//!
//! Angles are integers in `[0, 6 * quantization)`.

use serde::{Deserialize, Serialize};

use crate::hexcore::{HexCoord, Quantization, QuantizedAngle};

use super::{Foundational, HexPolygon, Shape, ShapeError, SimpleShape};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum ShapeRepr {
    Point {
        anchor: HexCoord,
    },
    Ray {
        anchor: HexCoord,
        magnitude: u64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        start: Option<u32>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        end: Option<u32>,
    },
    Wedge {
        anchor: HexCoord,
        magnitude: u64,
        start: u32,
        end: u32,
    },
    Disc {
        anchor: HexCoord,
        magnitude: u64,
    },
    Simple {
        first: Box<ShapeRepr>,
        second: Box<ShapeRepr>,
    },
    Polygon {
        vertices: Vec<HexCoord>,
    },
    Ao {
        left: Box<ShapeRepr>,
        right: Box<ShapeRepr>,
    },
    So {
        left: Box<ShapeRepr>,
        right: Box<ShapeRepr>,
    },
    Union {
        left: Box<ShapeRepr>,
        right: Box<ShapeRepr>,
    },
}

/// A shape together with the angular resolution of its angles.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ShapeDocument {
    /// Levels per wedge.
    pub quantization: u32,
    pub shape: ShapeRepr,
}

fn finest(shape: &Shape) -> Option<Quantization> {
    match shape {
        Shape::Foundational(f) => f.quantization(),
        Shape::Simple(s) => s.first().quantization().max(s.second().quantization()),
        Shape::Polygon(p) => Some(p.quantization()),
        Shape::Ao(a, b) | Shape::So(a, b) | Shape::Union(a, b) => finest(a).max(finest(b)),
    }
}

fn leaf_repr(f: &Foundational, quant: Quantization) -> ShapeRepr {
    let v = |a: QuantizedAngle| a.requantize(quant).value();
    let anchor = f.anchor();
    match (f.magnitude(), f.start(), f.end()) {
        (None, _, _) => ShapeRepr::Point { anchor },
        (Some(magnitude), None, None) => ShapeRepr::Disc { anchor, magnitude },
        (Some(magnitude), Some(s), Some(e)) => ShapeRepr::Wedge {
            anchor,
            magnitude,
            start: v(s),
            end: v(e),
        },
        (Some(magnitude), start, end) => ShapeRepr::Ray {
            anchor,
            magnitude,
            start: start.map(v),
            end: end.map(v),
        },
    }
}

impl ShapeRepr {
    pub fn from_shape(shape: &Shape, quant: Quantization) -> ShapeRepr {
        let pair = |a: &Shape, b: &Shape| {
            (
                Box::new(ShapeRepr::from_shape(a, quant)),
                Box::new(ShapeRepr::from_shape(b, quant)),
            )
        };
        match shape {
            Shape::Foundational(f) => leaf_repr(f, quant),
            Shape::Simple(s) => ShapeRepr::Simple {
                first: Box::new(leaf_repr(s.first(), quant)),
                second: Box::new(leaf_repr(s.second(), quant)),
            },
            Shape::Polygon(p) => ShapeRepr::Polygon {
                vertices: p.vertices().to_vec(),
            },
            Shape::Ao(a, b) => {
                let (left, right) = pair(a, b);
                ShapeRepr::Ao { left, right }
            }
            Shape::So(a, b) => {
                let (left, right) = pair(a, b);
                ShapeRepr::So { left, right }
            }
            Shape::Union(a, b) => {
                let (left, right) = pair(a, b);
                ShapeRepr::Union { left, right }
            }
        }
    }

    fn to_leaf(&self, quant: Quantization) -> Result<Foundational, ShapeError> {
        let angle = |v: u32| QuantizedAngle::new(v, quant).map_err(ShapeError::from);
        let opt = |v: Option<u32>| v.map(angle).transpose();
        match self {
            ShapeRepr::Point { anchor } => Ok(Foundational::point(*anchor)),
            ShapeRepr::Disc { anchor, magnitude } => Ok(Foundational::disc(*anchor, *magnitude)),
            ShapeRepr::Ray {
                anchor,
                magnitude,
                start,
                end,
            } => {
                if start.is_some() == end.is_some() {
                    return Err(ShapeError::Schema(
                        "a ray has exactly one of start and end".into(),
                    ));
                }
                Foundational::new(*anchor, Some(*magnitude), opt(*start)?, opt(*end)?)
            }
            ShapeRepr::Wedge {
                anchor,
                magnitude,
                start,
                end,
            } => Foundational::wedge(*anchor, *magnitude, angle(*start)?, angle(*end)?),
            _ => Err(ShapeError::Schema(
                "simple shapes combine two foundational shapes".into(),
            )),
        }
    }

    pub fn to_shape(&self, quant: Quantization) -> Result<Shape, ShapeError> {
        let pair = |a: &ShapeRepr, b: &ShapeRepr| -> Result<(Shape, Shape), ShapeError> {
            Ok((a.to_shape(quant)?, b.to_shape(quant)?))
        };
        Ok(match self {
            ShapeRepr::Simple { first, second } => Shape::Simple(SimpleShape::new(
                first.to_leaf(quant)?,
                second.to_leaf(quant)?,
            )),
            ShapeRepr::Polygon { vertices } => {
                Shape::Polygon(HexPolygon::new(vertices.clone(), quant)?)
            }
            ShapeRepr::Ao { left, right } => {
                let (a, b) = pair(left, right)?;
                Shape::ao(a, b)
            }
            ShapeRepr::So { left, right } => {
                let (a, b) = pair(left, right)?;
                Shape::so(a, b)
            }
            ShapeRepr::Union { left, right } => {
                let (a, b) = pair(left, right)?;
                Shape::union(a, b)
            }
            leaf => Shape::Foundational(leaf.to_leaf(quant)?),
        })
    }
}

impl ShapeDocument {
    /// Encodes `shape` at the finest resolution used by any of its angles,
    /// or the default resolution when it has none.
    pub fn new(shape: &Shape) -> ShapeDocument {
        let quant = finest(shape).unwrap_or_default();
        ShapeDocument {
            quantization: quant.levels(),
            shape: ShapeRepr::from_shape(shape, quant),
        }
    }

    pub fn quantization(&self) -> Result<Quantization, ShapeError> {
        Ok(Quantization::from_levels(self.quantization as u64)?)
    }

    pub fn to_shape(&self) -> Result<Shape, ShapeError> {
        self.shape.to_shape(self.quantization()?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("shape documents always serialize")
    }

    pub fn from_json(text: &str) -> Result<ShapeDocument, ShapeError> {
        serde_json::from_str(text).map_err(|e| ShapeError::Schema(e.to_string()))
    }
}
