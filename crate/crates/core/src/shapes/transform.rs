use crate::hexcore::{coarsen, refine, rotate_about, HexCoord, HexError, QuantizedAngle};

use super::{Foundational, HexPolygon, Shape, ShapeError, SimpleShape};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScaleDirection {
    Up,
    Down,
}

fn map_shape(
    shape: &Shape,
    point: &impl Fn(HexCoord) -> Result<HexCoord, HexError>,
    angle: &impl Fn(QuantizedAngle) -> QuantizedAngle,
    magnitude: &impl Fn(u64) -> u64,
) -> Result<Shape, ShapeError> {
    let leaf = |f: &Foundational| -> Result<Foundational, ShapeError> {
        Ok(f.with_parts(
            point(f.anchor())?,
            f.magnitude().map(magnitude),
            f.start().map(angle),
            f.end().map(angle),
        ))
    };
    Ok(match shape {
        Shape::Foundational(f) => Shape::Foundational(leaf(f)?),
        Shape::Simple(s) => Shape::Simple(SimpleShape::new(leaf(s.first())?, leaf(s.second())?)),
        Shape::Polygon(p) => {
            let vertices = p
                .vertices()
                .iter()
                .map(|&v| point(v))
                .collect::<Result<Vec<_>, _>>()?;
            Shape::Polygon(HexPolygon::new(vertices, p.quantization())?)
        }
        Shape::Ao(a, b) => Shape::ao(
            map_shape(a, point, angle, magnitude)?,
            map_shape(b, point, angle, magnitude)?,
        ),
        Shape::So(a, b) => Shape::so(
            map_shape(a, point, angle, magnitude)?,
            map_shape(b, point, angle, magnitude)?,
        ),
        Shape::Union(a, b) => Shape::union(
            map_shape(a, point, angle, magnitude)?,
            map_shape(b, point, angle, magnitude)?,
        ),
    })
}

/// Moves every anchor by `delta`; angles and magnitudes are untouched.
pub fn translate_shape(shape: &Shape, delta: HexCoord) -> Shape {
    map_shape(shape, &|p| Ok(p + delta), &|a| a, &|m| m)
        .expect("translation preserves polygon validity")
}

/// Rotates anchors about `pivot` and adds `rot` to every angle.
pub fn rotate_shape(
    shape: &Shape,
    pivot: HexCoord,
    rot: QuantizedAngle,
) -> Result<Shape, ShapeError> {
    map_shape(
        shape,
        &|p| Ok(rotate_about(p, pivot, rot)),
        &|a| a.rotated_by(rot),
        &|m| m,
    )
}

/// Scales anchors and magnitudes by the power of two `k`.
pub fn scale_shape(shape: &Shape, k: i64, direction: ScaleDirection) -> Result<Shape, ShapeError> {
    let bits = if k >= 2 && k.count_ones() == 1 {
        k.trailing_zeros()
    } else {
        return Err(HexError::InvalidScale(k).into());
    };
    match direction {
        ScaleDirection::Up => map_shape(shape, &|p| refine(p, k), &|a| a, &|m| m << bits),
        ScaleDirection::Down => map_shape(shape, &|p| coarsen(p, k), &|a| a, &|m| m >> bits),
    }
}
