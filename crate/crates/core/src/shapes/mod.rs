//! Shapes built from anchors, magnitudes and quantized angles.
//!
//! Membership is decided with orientation predicates (angle comparisons) and
//! hex distance tests only. [`Shape`] is the tagged tree used everywhere
//! else: foundational leaves, two-way intersections, polygons and boolean
//! combinations.

mod foundational;
mod polygon;
mod repr;
mod transform;

use std::collections::BTreeSet;

use thiserror::Error;

use crate::hexcore::{disc_cells, Alu, Exact, HexCoord, HexError, Quantization, QuantizedAngle};

pub use foundational::{
    angle_in_arc, orientation_predicate, orientation_predicate_with, Foundational,
    FoundationalKind, Side, SimpleShape,
};
pub use polygon::HexPolygon;
pub use repr::{ShapeDocument, ShapeRepr};
pub use transform::{rotate_shape, scale_shape, translate_shape, ScaleDirection};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ShapeError {
    #[error(transparent)]
    Hex(#[from] HexError),
    #[error("orientation is undefined at the anchor itself")]
    DegenerateAtAnchor,
    #[error("rays and wedges need a magnitude")]
    UnboundedShape,
    #[error("angles use different quantizations")]
    MixedQuantization,
    #[error("degenerate polygon: {0}")]
    DegeneratePolygon(&'static str),
    #[error("invalid shape document: {0}")]
    Schema(String),
}

/// Any shape the library can test membership for.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Shape {
    Foundational(Foundational),
    Simple(SimpleShape),
    Polygon(HexPolygon),
    /// Additive overlap: in both.
    Ao(Box<Shape>, Box<Shape>),
    /// Subtractive overlap: in the left, not in the right.
    So(Box<Shape>, Box<Shape>),
    Union(Box<Shape>, Box<Shape>),
}

impl From<Foundational> for Shape {
    fn from(f: Foundational) -> Self {
        Shape::Foundational(f)
    }
}

impl From<SimpleShape> for Shape {
    fn from(s: SimpleShape) -> Self {
        Shape::Simple(s)
    }
}

impl From<HexPolygon> for Shape {
    fn from(p: HexPolygon) -> Self {
        Shape::Polygon(p)
    }
}

impl Shape {
    pub fn ao(a: impl Into<Shape>, b: impl Into<Shape>) -> Shape {
        Shape::Ao(Box::new(a.into()), Box::new(b.into()))
    }

    pub fn so(a: impl Into<Shape>, b: impl Into<Shape>) -> Shape {
        Shape::So(Box::new(a.into()), Box::new(b.into()))
    }

    pub fn union(a: impl Into<Shape>, b: impl Into<Shape>) -> Shape {
        Shape::Union(Box::new(a.into()), Box::new(b.into()))
    }

    /// Ring band `inner < d <= outer` around `center`.
    pub fn donut(center: HexCoord, outer: u64, inner: u64) -> Shape {
        Shape::so(
            Foundational::disc(center, outer),
            Foundational::disc(center, inner),
        )
    }

    /// One-cell-thick circular arc: AO of a donut and a wedge.
    pub fn arc(
        center: HexCoord,
        radius: u64,
        start: QuantizedAngle,
        end: QuantizedAngle,
    ) -> Result<Shape, ShapeError> {
        let band = if radius == 0 {
            Shape::from(Foundational::disc(center, 0))
        } else {
            Shape::donut(center, radius, radius - 1)
        };
        Ok(Shape::ao(
            band,
            Foundational::wedge(center, radius, start, end)?,
        ))
    }

    pub fn contains(&self, p: HexCoord) -> bool {
        self.contains_with(p, &mut Exact)
    }

    /// Short-circuiting left-to-right evaluation of the tree.
    pub fn contains_with(&self, p: HexCoord, alu: &mut impl Alu) -> bool {
        match self {
            Shape::Foundational(f) => f.contains_with(p, alu),
            Shape::Simple(s) => s.contains_with(p, alu),
            Shape::Polygon(poly) => poly.contains_with(p, alu),
            Shape::Ao(a, b) => a.contains_with(p, alu) && b.contains_with(p, alu),
            Shape::So(a, b) => a.contains_with(p, alu) && !b.contains_with(p, alu),
            Shape::Union(a, b) => a.contains_with(p, alu) || b.contains_with(p, alu),
        }
    }

    /// The anchor of the leftmost leaf; for polygons the first vertex.
    pub fn anchor(&self) -> HexCoord {
        match self {
            Shape::Foundational(f) => f.anchor(),
            Shape::Simple(s) => s.first().anchor(),
            Shape::Polygon(p) => p.vertices()[0],
            Shape::Ao(a, _) | Shape::So(a, _) | Shape::Union(a, _) => a.anchor(),
        }
    }

    /// Angular resolution used by the shape, if any angle is present.
    pub fn quantization(&self) -> Option<Quantization> {
        match self {
            Shape::Foundational(f) => f.quantization(),
            Shape::Simple(s) => s.first().quantization().or(s.second().quantization()),
            Shape::Polygon(p) => Some(p.quantization()),
            Shape::Ao(a, b) | Shape::So(a, b) | Shape::Union(a, b) => {
                a.quantization().or(b.quantization())
            }
        }
    }

    /// A disc `(center, radius)` covering every member cell.
    pub fn extent(&self) -> (HexCoord, u64) {
        match self {
            Shape::Foundational(f) => (f.anchor(), f.magnitude().unwrap_or(0)),
            Shape::Simple(s) => {
                let a = Shape::from(*s.first()).extent();
                let b = Shape::from(*s.second()).extent();
                if a.1 <= b.1 {
                    a
                } else {
                    b
                }
            }
            Shape::Polygon(p) => {
                let v0 = p.vertices()[0];
                let reach = p
                    .vertices()
                    .iter()
                    .map(|v| v.distance(v0))
                    .max()
                    .unwrap_or(0);
                (v0, reach)
            }
            Shape::Ao(a, b) => {
                let (ea, eb) = (a.extent(), b.extent());
                if ea.1 <= eb.1 {
                    ea
                } else {
                    eb
                }
            }
            Shape::So(a, _) => a.extent(),
            Shape::Union(a, b) => {
                let (ca, ra) = a.extent();
                let (cb, rb) = b.extent();
                (ca, ra.max(ca.distance(cb) + rb))
            }
        }
    }

    /// Members within hex distance `radius` of the anchor.
    pub fn rasterize(&self, radius: u64) -> BTreeSet<HexCoord> {
        let anchor = self.anchor();
        disc_cells(radius)
            .into_iter()
            .map(|c| c + anchor)
            .filter(|&c| self.contains(c))
            .collect()
    }

    /// Every member cell.
    pub fn cells(&self) -> BTreeSet<HexCoord> {
        let (center, radius) = self.extent();
        disc_cells(radius)
            .into_iter()
            .map(|c| c + center)
            .filter(|&c| self.contains(c))
            .collect()
    }

    /// Number of foundational, simple and polygon leaves.
    pub fn leaf_count(&self) -> usize {
        match self {
            Shape::Foundational(_) | Shape::Simple(_) | Shape::Polygon(_) => 1,
            Shape::Ao(a, b) | Shape::So(a, b) | Shape::Union(a, b) => {
                a.leaf_count() + b.leaf_count()
            }
        }
    }
}

/// Membership for each cell in the disc of `radius` around the anchor.
pub fn rasterize(shape: &Shape, radius: u64) -> BTreeSet<HexCoord> {
    shape.rasterize(radius)
}

pub fn contains(shape: &Shape, p: HexCoord) -> bool {
    shape.contains(p)
}
