use crate::hexcore::{disc_cells, HexCoord, QuantizedAngle};
use crate::shapes::{Foundational, FoundationalKind, Shape};

use super::{
    angle_direction, boundary_distance, cart_in_polygon, cart_in_sector, hex_to_plane,
    segment_distance, PlanePoint,
};

/// Continuous plane region denoted by a shape.
///
/// A hex ball of radius `m` denotes the hexagon with corners
/// `(m + 1/2) d[k]` (halfway between ring `m` and ring `m + 1`); a wedge
/// denotes that hexagon cut by the two boundary rays; polygons denote
/// themselves; points and rays have no interior.
#[derive(Debug, Clone, PartialEq)]
pub enum Region {
    Empty(Vec<[PlanePoint; 2]>),
    Polygon(Vec<PlanePoint>),
    Sector {
        apex: PlanePoint,
        /// Counterclockwise from `theta1` to `theta2`.
        theta1: f64,
        theta2: f64,
        reach: f64,
    },
    And(Box<Region>, Box<Region>),
    AndNot(Box<Region>, Box<Region>),
    Or(Box<Region>, Box<Region>),
}

fn ball(center: HexCoord, magnitude: u64) -> Vec<PlanePoint> {
    let c = hex_to_plane(center);
    let k = magnitude as f64 + 0.5;
    // clockwise corners
    HexCoord::DIRECTIONS
        .iter()
        .map(|&d| c.add(hex_to_plane(d).scale(k)))
        .collect()
}

fn theta(a: QuantizedAngle) -> f64 {
    let d = angle_direction(a);
    d.y.atan2(d.x)
}

fn denote_leaf(f: &Foundational) -> Region {
    let apex = hex_to_plane(f.anchor());
    match f.kind() {
        FoundationalKind::Point => Region::Empty(vec![[apex, apex]]),
        FoundationalKind::Disc => Region::Polygon(ball(f.anchor(), f.magnitude().unwrap_or(0))),
        FoundationalKind::Ray => {
            let a = f.start().or(f.end()).expect("rays have an angle");
            let reach = f.magnitude().unwrap_or(0) as f64 * super::CELL_PITCH;
            let dir = angle_direction(a);
            let tip = apex.add(dir.scale(reach / dir.norm()));
            Region::Empty(vec![[apex, tip]])
        }
        FoundationalKind::Wedge => {
            let m = f.magnitude().unwrap_or(0);
            let hexagon = ball(f.anchor(), m);
            let reach = (m as f64 + 1.0) * super::CELL_PITCH;
            Region::And(
                Box::new(Region::Sector {
                    apex,
                    theta1: theta(f.end().expect("wedge end")),
                    theta2: theta(f.start().expect("wedge start")),
                    reach,
                }),
                Box::new(Region::Polygon(hexagon)),
            )
        }
    }
}

/// The Cartesian region a shape stands for.
pub fn denote(shape: &Shape) -> Region {
    match shape {
        Shape::Foundational(f) => denote_leaf(f),
        Shape::Simple(s) => Region::And(
            Box::new(denote_leaf(s.first())),
            Box::new(denote_leaf(s.second())),
        ),
        Shape::Polygon(p) => {
            Region::Polygon(p.vertices().iter().map(|&v| hex_to_plane(v)).collect())
        }
        Shape::Ao(a, b) => Region::And(Box::new(denote(a)), Box::new(denote(b))),
        Shape::So(a, b) => Region::AndNot(Box::new(denote(a)), Box::new(denote(b))),
        Shape::Union(a, b) => Region::Or(Box::new(denote(a)), Box::new(denote(b))),
    }
}

impl Region {
    pub fn contains(&self, p: PlanePoint) -> bool {
        match self {
            Region::Empty(_) => false,
            Region::Polygon(v) => cart_in_polygon(p, v).unwrap_or(false),
            Region::Sector {
                apex,
                theta1,
                theta2,
                reach,
            } => cart_in_sector(p, *apex, *theta1, *theta2, *reach).unwrap_or(false),
            Region::And(a, b) => a.contains(p) && b.contains(p),
            Region::AndNot(a, b) => a.contains(p) && !b.contains(p),
            Region::Or(a, b) => a.contains(p) || b.contains(p),
        }
    }

    /// Distance to the nearest boundary piece of any component region. The
    /// true boundary of a combination is a subset, so this never
    /// overestimates.
    pub fn boundary_distance(&self, p: PlanePoint) -> f64 {
        match self {
            Region::Empty(segments) => segments
                .iter()
                .map(|[a, b]| segment_distance(p, *a, *b))
                .fold(f64::INFINITY, f64::min),
            Region::Polygon(v) => boundary_distance(p, v),
            Region::Sector {
                apex,
                theta1,
                theta2,
                reach,
            } => {
                let ray = |t: f64| apex.add(PlanePoint::new(t.cos(), t.sin()).scale(*reach));
                segment_distance(p, *apex, ray(*theta1)).min(segment_distance(
                    p,
                    *apex,
                    ray(*theta2),
                ))
            }
            Region::And(a, b) | Region::AndNot(a, b) | Region::Or(a, b) => {
                a.boundary_distance(p).min(b.boundary_distance(p))
            }
        }
    }
}

/// Outcome of comparing a shape's cells with its denoted region.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Agreement {
    pub compared: usize,
    pub excluded: usize,
    pub mismatches: Vec<HexCoord>,
}

impl Agreement {
    pub fn is_exact(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compares membership cell by cell over the shape's extent plus a margin
/// ring, skipping cells whose centre lies within `band` of the region
/// boundary.
pub fn check_agreement(shape: &Shape, band: f64) -> Agreement {
    let region = denote(shape);
    let (center, radius) = shape.extent();
    let mut out = Agreement::default();
    for offset in disc_cells(radius + 2) {
        let cell = center + offset;
        let pt = hex_to_plane(cell);
        if region.boundary_distance(pt) <= band {
            out.excluded += 1;
            continue;
        }
        out.compared += 1;
        if shape.contains(cell) != region.contains(pt) {
            out.mismatches.push(cell);
        }
    }
    out
}
