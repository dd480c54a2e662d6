//! Replacement of feature geometry by a few hex-native primitives.
//!
//! Polylines become chains of straight segments (two facing rays) and
//! circular arcs. Polygons become a disc when nearly round; otherwise the
//! oriented minimum-area bounding rectangle seeds a greedy search that adds
//! or subtracts rectangles, triangles and discs over the largest
//! misclassified region until the error target or the primitive budget is
//! reached. Error is measured on a sample raster against the plane regions
//! the primitives denote.

use std::collections::VecDeque;

use neurohex::hexcore::direction_of;
use neurohex::oracle::{cart_in_polygon, denote, hex_to_plane, PlanePoint, Region, CELL_PITCH};
use neurohex::{Foundational, HexCoord, Quantization, Shape, ShapeError, SimpleShape};
use serde::{Deserialize, Serialize};

use crate::model::{Class, Classified, FeatureKind, LonLat, ResolutionPolicy, Tier};
use crate::project::Grid;
use crate::PipelineError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PrimitiveKind {
    Point,
    Segment,
    Arc,
    Rectangle,
    Triangle,
    Circle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Op {
    Add,
    Subtract,
}

/// One palette element. `vertices` are the defining cells: the point, the
/// segment ends, the arc's centre and ends, the corners, or the disc centre.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Primitive {
    pub kind: PrimitiveKind,
    pub op: Op,
    pub vertices: Vec<HexCoord>,
    pub shape: Shape,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MosaicObject {
    pub source_id: i64,
    pub kind: FeatureKind,
    pub class: Class,
    pub tier: Tier,
    pub primitives: Vec<Primitive>,
    pub grid: Grid,
    /// Polygons: symmetric difference over source area. Polylines: largest
    /// deviation of a source vertex from its fitted run, in cells. Nodes: 0.
    pub error: f64,
    /// Whether the error target was met within the primitive budget.
    pub accurate: bool,
}

impl MosaicObject {
    /// Union of the added primitives minus the subtracted ones, in order.
    pub fn combined(&self) -> Option<Shape> {
        combine(&self.primitives)
    }
}

pub fn combine(primitives: &[Primitive]) -> Option<Shape> {
    let mut iter = primitives.iter();
    let first = iter.next()?.shape.clone();
    Some(iter.fold(first, |acc, p| match p.op {
        Op::Add => Shape::union(acc, p.shape.clone()),
        Op::Subtract => Shape::so(acc, p.shape.clone()),
    }))
}

fn point_primitive(c: HexCoord) -> Primitive {
    Primitive {
        kind: PrimitiveKind::Point,
        op: Op::Add,
        vertices: vec![c],
        shape: Foundational::point(c).into(),
    }
}

fn segment_primitive(
    a: HexCoord,
    b: HexCoord,
    quant: Quantization,
) -> Result<Primitive, ShapeError> {
    Ok(Primitive {
        kind: PrimitiveKind::Segment,
        op: Op::Add,
        vertices: vec![a, b],
        shape: SimpleShape::segment(a, b, quant)?.into(),
    })
}

fn disc_primitive(c: HexCoord, radius: u64, op: Op) -> Primitive {
    Primitive {
        kind: PrimitiveKind::Circle,
        op,
        vertices: vec![c],
        shape: Foundational::disc(c, radius).into(),
    }
}

fn distinct(cells: &[HexCoord]) -> bool {
    (0..cells.len()).all(|i| (i + 1..cells.len()).all(|j| cells[i] != cells[j]))
}

fn quad_primitive(c: [HexCoord; 4], op: Op, quant: Quantization) -> Option<Primitive> {
    if !distinct(&c) {
        return None;
    }
    let shape = SimpleShape::quadrilateral(c[0], c[1], c[2], c[3], quant).ok()?;
    Some(Primitive {
        kind: PrimitiveKind::Rectangle,
        op,
        vertices: c.to_vec(),
        shape: shape.into(),
    })
}

fn triangle_primitive(c: [HexCoord; 3], op: Op, quant: Quantization) -> Option<Primitive> {
    if !distinct(&c) {
        return None;
    }
    let shape = SimpleShape::triangle(c[0], c[1], c[2], quant).ok()?;
    Some(Primitive {
        kind: PrimitiveKind::Triangle,
        op,
        vertices: c.to_vec(),
        shape: shape.into(),
    })
}

/// Disc whose denoted hexagon has area `area` (plane units).
fn disc_radius(area: f64) -> u64 {
    // a radius-m ball denotes a hexagon of area 4.5 sqrt(3) (m + 1/2)^2
    let k = (area / (4.5 * 3f64.sqrt())).sqrt() - 0.5;
    k.round().max(0.0) as u64
}

// ----- plane helpers -------------------------------------------------------

fn sub(a: PlanePoint, b: PlanePoint) -> PlanePoint {
    a.sub(b)
}

fn cross3(o: PlanePoint, a: PlanePoint, b: PlanePoint) -> f64 {
    sub(a, o).cross(sub(b, o))
}

fn polygon_area(pts: &[PlanePoint]) -> f64 {
    let n = pts.len();
    (0..n).map(|i| pts[i].cross(pts[(i + 1) % n])).sum::<f64>() / 2.0
}

fn perimeter(pts: &[PlanePoint]) -> f64 {
    let n = pts.len();
    (0..n).map(|i| sub(pts[(i + 1) % n], pts[i]).norm()).sum()
}

fn centroid(pts: &[PlanePoint]) -> PlanePoint {
    let a = polygon_area(pts);
    if a.abs() < 1e-12 {
        let n = pts.len() as f64;
        let s = pts.iter().fold(PlanePoint::default(), |acc, p| acc.add(*p));
        return s.scale(1.0 / n);
    }
    let n = pts.len();
    let (mut cx, mut cy) = (0.0, 0.0);
    for i in 0..n {
        let (p, q) = (pts[i], pts[(i + 1) % n]);
        let c = p.cross(q);
        cx += (p.x + q.x) * c;
        cy += (p.y + q.y) * c;
    }
    PlanePoint::new(cx / (6.0 * a), cy / (6.0 * a))
}

/// Andrew's monotone chain; counterclockwise, no repeated point.
fn convex_hull(points: &[PlanePoint]) -> Vec<PlanePoint> {
    let mut pts = points.to_vec();
    pts.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut hull: Vec<PlanePoint> = Vec::with_capacity(2 * pts.len());
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &PlanePoint>> = if pass == 0 {
            Box::new(pts.iter())
        } else {
            Box::new(pts.iter().rev())
        };
        for &p in iter {
            while hull.len() >= start + 2
                && cross3(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0
            {
                hull.pop();
            }
            hull.push(p);
        }
        hull.pop();
    }
    hull
}

/// Oriented minimum-area bounding rectangle of a point set, corners in
/// order. Tests every hull edge direction.
pub fn min_area_rect(points: &[PlanePoint]) -> Option<[PlanePoint; 4]> {
    let hull = convex_hull(points);
    if hull.len() < 3 {
        return None;
    }
    let mut best: Option<(f64, [PlanePoint; 4])> = None;
    for i in 0..hull.len() {
        let e = sub(hull[(i + 1) % hull.len()], hull[i]);
        let len = e.norm();
        if len == 0.0 {
            continue;
        }
        let u = e.scale(1.0 / len);
        let v = PlanePoint::new(-u.y, u.x);
        let (mut u0, mut u1, mut v0, mut v1) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
        for p in &hull {
            let (a, b) = (p.dot(u), p.dot(v));
            u0 = u0.min(a);
            u1 = u1.max(a);
            v0 = v0.min(b);
            v1 = v1.max(b);
        }
        let area = (u1 - u0) * (v1 - v0);
        if best.as_ref().is_none_or(|(a, _)| area < *a) {
            let at = |a: f64, b: f64| u.scale(a).add(v.scale(b));
            best = Some((area, [at(u0, v0), at(u1, v0), at(u1, v1), at(u0, v1)]));
        }
    }
    best.map(|(_, r)| r)
}

/// Largest triangle with corners on the hull (subsampled to 24 points).
fn max_area_triangle(points: &[PlanePoint]) -> Option<[PlanePoint; 3]> {
    let hull = convex_hull(points);
    if hull.len() < 3 {
        return None;
    }
    let step = hull.len().div_ceil(24);
    let h: Vec<PlanePoint> = hull.iter().step_by(step).copied().collect();
    let mut best = (0.0, None);
    for i in 0..h.len() {
        for j in i + 1..h.len() {
            for k in j + 1..h.len() {
                let a = cross3(h[i], h[j], h[k]).abs();
                if a > best.0 {
                    best = (a, Some([h[i], h[j], h[k]]));
                }
            }
        }
    }
    best.1
}

fn snap(p: PlanePoint) -> HexCoord {
    neurohex::oracle::plane_to_hex(p)
}

// ----- polylines -----------------------------------------------------------

#[derive(Debug, Clone, Copy)]
enum Run {
    Straight(usize, usize),
    Arc(usize, usize, PlanePoint),
}

impl Run {
    fn end(self) -> usize {
        match self {
            Run::Straight(_, j) | Run::Arc(_, j, _) => j,
        }
    }
}

fn straight_deviation(pts: &[PlanePoint], i: usize, j: usize) -> f64 {
    let (a, b) = (pts[i], pts[j]);
    let ab = sub(b, a);
    let len2 = ab.dot(ab);
    pts[i + 1..j]
        .iter()
        .map(|&p| {
            let t = if len2 == 0.0 {
                0.0
            } else {
                (sub(p, a).dot(ab) / len2).clamp(0.0, 1.0)
            };
            sub(p, a.add(ab.scale(t))).norm()
        })
        .fold(0.0, f64::max)
}

/// Circle through three points, `None` when they are collinear.
fn circumcenter(a: PlanePoint, b: PlanePoint, c: PlanePoint) -> Option<PlanePoint> {
    let d = 2.0 * (a.x * (b.y - c.y) + b.x * (c.y - a.y) + c.x * (a.y - b.y));
    if d.abs() < 1e-12 {
        return None;
    }
    let (a2, b2, c2) = (a.dot(a), b.dot(b), c.dot(c));
    let ux = (a2 * (b.y - c.y) + b2 * (c.y - a.y) + c2 * (a.y - b.y)) / d;
    let uy = (a2 * (c.x - b.x) + b2 * (a.x - c.x) + c2 * (b.x - a.x)) / d;
    Some(PlanePoint::new(ux, uy))
}

/// Arcs wider than this many cells are treated as straight.
const MAX_ARC_RADIUS: f64 = 512.0;

/// Circle through the run's ends and middle. Accepted only when the
/// snapped run cells lie within two adjacent hex rings of the snapped
/// centre, since hex rings are hexagons rather than circles.
fn arc_fit(pts: &[PlanePoint], i: usize, j: usize) -> Option<(PlanePoint, f64)> {
    let c = circumcenter(pts[i], pts[(i + j) / 2], pts[j])?;
    let r = sub(pts[i], c).norm();
    if r > MAX_ARC_RADIUS * CELL_PITCH {
        return None;
    }
    let (inner, outer) = hex_band(&pts[i..=j], c)?;
    if outer - inner > 2 {
        return None;
    }
    let dev = pts[i..=j]
        .iter()
        .map(|&p| (sub(p, c).norm() - r).abs())
        .fold(0.0, f64::max);
    Some((c, dev))
}

/// `(inner, outer)` such that every snapped point `p` satisfies
/// `inner < d(centre, p) <= outer`; `None` if a point snaps onto the centre.
fn hex_band(pts: &[PlanePoint], c: PlanePoint) -> Option<(u64, u64)> {
    let centre = snap(c);
    let d: Vec<u64> = pts.iter().map(|&p| snap(p).distance(centre)).collect();
    let (lo, hi) = (*d.iter().min()?, *d.iter().max()?);
    (lo > 0).then(|| (lo - 1, hi))
}

fn fit_runs(pts: &[PlanePoint], tol: f64) -> (Vec<Run>, f64) {
    let mut runs = Vec::new();
    let mut worst: f64 = 0.0;
    let mut i = 0;
    while i + 1 < pts.len() {
        let mut best = (Run::Straight(i, i + 1), 0.0);
        for j in i + 2..pts.len() {
            let dev = straight_deviation(pts, i, j);
            if dev < tol {
                best = (Run::Straight(i, j), dev);
                continue;
            }
            match arc_fit(pts, i, j) {
                Some((c, dev)) if dev < tol => best = (Run::Arc(i, j, c), dev),
                _ => break,
            }
        }
        worst = worst.max(best.1);
        runs.push(best.0);
        i = best.0.end();
    }
    (runs, worst)
}

fn run_primitive(pts: &[PlanePoint], run: Run, quant: Quantization) -> Option<Primitive> {
    match run {
        Run::Straight(i, j) => {
            let (a, b) = (snap(pts[i]), snap(pts[j]));
            (a != b)
                .then(|| segment_primitive(a, b, quant).ok())
                .flatten()
        }
        Run::Arc(i, j, c) => {
            let centre = snap(c);
            let (a, b) = (snap(pts[i]), snap(pts[j]));
            let (inner, outer) = hex_band(&pts[i..=j], c)?;
            if a == b {
                return None;
            }
            let (da, db) = (
                direction_of(a - centre, quant).ok()?,
                direction_of(b - centre, quant).ok()?,
            );
            // the wedge runs clockwise from start to end
            let mid = pts[(i + j) / 2];
            let clockwise = cross3(pts[i], mid, pts[j]) < 0.0;
            let (start, end) = if clockwise { (da, db) } else { (db, da) };
            let wedge = Foundational::wedge(centre, outer, start, end).ok()?;
            Some(Primitive {
                kind: PrimitiveKind::Arc,
                op: Op::Add,
                vertices: vec![centre, a, b],
                shape: Shape::ao(Shape::donut(centre, outer, inner), wedge),
            })
        }
    }
}

fn fit_polyline(
    pts: &[PlanePoint],
    budget: usize,
    quant: Quantization,
) -> (Vec<Primitive>, f64, bool) {
    let mut tol = CELL_PITCH;
    let mut accurate = true;
    loop {
        let (runs, dev) = fit_runs(pts, tol);
        let prims: Vec<Primitive> = runs
            .iter()
            .filter_map(|&r| run_primitive(pts, r, quant))
            .collect();
        if prims.len() <= budget {
            let prims = if prims.is_empty() {
                vec![point_primitive(snap(pts[0]))]
            } else {
                prims
            };
            return (prims, dev / CELL_PITCH, accurate);
        }
        accurate = false;
        tol *= 2.0;
    }
}

// ----- polygons ------------------------------------------------------------

/// Regular sample grid over a window around the polygon.
struct Raster {
    nx: usize,
    ny: usize,
    points: Vec<PlanePoint>,
    inside: Vec<bool>,
    inside_count: usize,
}

const TARGET_SAMPLES: f64 = 1600.0;

impl Raster {
    fn new(ring: &[PlanePoint]) -> Raster {
        let margin = CELL_PITCH;
        let (mut x0, mut y0, mut x1, mut y1) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
        for p in ring {
            x0 = x0.min(p.x);
            y0 = y0.min(p.y);
            x1 = x1.max(p.x);
            y1 = y1.max(p.y);
        }
        let (x0, y0, x1, y1) = (x0 - margin, y0 - margin, x1 + margin, y1 + margin);
        let step = ((x1 - x0) * (y1 - y0) / TARGET_SAMPLES).sqrt();
        let nx = ((x1 - x0) / step).ceil().max(1.0) as usize;
        let ny = ((y1 - y0) / step).ceil().max(1.0) as usize;
        let mut points = Vec::with_capacity(nx * ny);
        for iy in 0..ny {
            for ix in 0..nx {
                points.push(PlanePoint::new(
                    x0 + (ix as f64 + 0.5) * step,
                    y0 + (iy as f64 + 0.5) * step,
                ));
            }
        }
        let inside: Vec<bool> = points
            .iter()
            .map(|&p| cart_in_polygon(p, ring).unwrap_or(false))
            .collect();
        let inside_count = inside.iter().filter(|&&b| b).count();
        Raster {
            nx,
            ny,
            points,
            inside,
            inside_count,
        }
    }

    fn members(&self, region: &Region) -> Vec<bool> {
        self.points.iter().map(|&p| region.contains(p)).collect()
    }

    fn error(&self, current: &[bool]) -> f64 {
        if self.inside_count == 0 {
            return 0.0;
        }
        let wrong = self
            .inside
            .iter()
            .zip(current)
            .filter(|(a, b)| a != b)
            .count();
        wrong as f64 / self.inside_count as f64
    }

    /// Largest 4-connected set of flagged samples.
    fn largest_component(&self, flags: &[bool]) -> Vec<PlanePoint> {
        let mut seen = vec![false; flags.len()];
        let mut best: Vec<usize> = Vec::new();
        for start in 0..flags.len() {
            if !flags[start] || seen[start] {
                continue;
            }
            let mut comp = Vec::new();
            let mut queue = VecDeque::from([start]);
            seen[start] = true;
            while let Some(k) = queue.pop_front() {
                comp.push(k);
                let (ix, iy) = (k % self.nx, k / self.nx);
                let mut push = |n: usize| {
                    if flags[n] && !seen[n] {
                        seen[n] = true;
                        queue.push_back(n);
                    }
                };
                if ix > 0 {
                    push(k - 1);
                }
                if ix + 1 < self.nx {
                    push(k + 1);
                }
                if iy > 0 {
                    push(k - self.nx);
                }
                if iy + 1 < self.ny {
                    push(k + self.nx);
                }
            }
            if comp.len() > best.len() {
                best = comp;
            }
        }
        best.into_iter().map(|k| self.points[k]).collect()
    }
}

fn apply(current: &[bool], members: &[bool], op: Op) -> Vec<bool> {
    current
        .iter()
        .zip(members)
        .map(|(&c, &m)| match op {
            Op::Add => c || m,
            Op::Subtract => c && !m,
        })
        .collect()
}

fn candidates(region: &[PlanePoint], op: Op, quant: Quantization) -> Vec<Primitive> {
    let mut out = Vec::new();
    if region.len() < 3 {
        return out;
    }
    if let Some(r) = min_area_rect(region) {
        if let Some(p) = quad_primitive(r.map(snap), op, quant) {
            out.push(p);
        }
    }
    if let Some(t) = max_area_triangle(region) {
        if let Some(p) = triangle_primitive(t.map(snap), op, quant) {
            out.push(p);
        }
    }
    let hull = convex_hull(region);
    let c = centroid(&hull);
    out.push(disc_primitive(
        snap(c),
        disc_radius(polygon_area(&hull).abs()),
        op,
    ));
    out
}

fn seed(ring: &[PlanePoint], quant: Quantization) -> Primitive {
    let area = polygon_area(ring).abs();
    let c = snap(centroid(ring));
    min_area_rect(ring)
        .and_then(|r| quad_primitive(r.map(snap), Op::Add, quant))
        .unwrap_or_else(|| disc_primitive(c, disc_radius(area), Op::Add))
}

fn fit_polygon(
    ring: &[PlanePoint],
    budget: usize,
    target: f64,
    quant: Quantization,
) -> (Vec<Primitive>, f64) {
    let area = polygon_area(ring).abs();
    let per = perimeter(ring);
    let raster = Raster::new(ring);
    let round = per > 0.0 && 4.0 * std::f64::consts::PI * area / (per * per) > 0.9;
    if round {
        let disc = disc_primitive(snap(centroid(ring)), disc_radius(area), Op::Add);
        let err = raster.error(&raster.members(&denote(&disc.shape)));
        return (vec![disc], err);
    }
    let first = seed(ring, quant);
    let mut current = raster.members(&denote(&first.shape));
    let mut err = raster.error(&current);
    let mut prims = vec![first];
    while err > target && prims.len() < budget {
        let missing: Vec<bool> = raster
            .inside
            .iter()
            .zip(&current)
            .map(|(&i, &c)| i && !c)
            .collect();
        let extra: Vec<bool> = raster
            .inside
            .iter()
            .zip(&current)
            .map(|(&i, &c)| !i && c)
            .collect();
        let mut best: Option<(f64, Primitive, Vec<bool>)> = None;
        for (flags, op) in [(missing, Op::Add), (extra, Op::Subtract)] {
            let comp = raster.largest_component(&flags);
            for cand in candidates(&comp, op, quant) {
                let next = apply(&current, &raster.members(&denote(&cand.shape)), op);
                let e = raster.error(&next);
                if best.as_ref().is_none_or(|(b, _, _)| e < *b) {
                    best = Some((e, cand, next));
                }
            }
        }
        match best {
            Some((e, cand, next)) if e < err => {
                err = e;
                current = next;
                prims.push(cand);
            }
            _ => break,
        }
    }
    (prims, err)
}

/// Fits the primitive mosaic for one filtered feature.
pub fn fit_mosaic(
    feature: &Classified,
    grid: &Grid,
    policy: &ResolutionPolicy,
    quant: Quantization,
) -> Result<MosaicObject, PipelineError> {
    let f = &feature.feature;
    for &p in &f.coords {
        if !grid.in_range(p) {
            return Err(PipelineError::OutOfGridRange {
                lon: p[0],
                lat: p[1],
            });
        }
    }
    let pts: Vec<PlanePoint> = f
        .coords
        .iter()
        .map(|&p: &LonLat| grid.to_plane(p))
        .collect();
    let budget = policy
        .primitive_budget(feature.class.class)
        .min(f.coords.len())
        .max(1);
    let (primitives, error, accurate) = match f.kind {
        FeatureKind::Node => (vec![point_primitive(snap(pts[0]))], 0.0, true),
        FeatureKind::Polyline => fit_polyline(&pts, budget, quant),
        FeatureKind::Polygon => {
            let ring = &pts[..pts.len() - 1];
            let (prims, err) = fit_polygon(ring, budget, policy.mosaic_error, quant);
            (prims, err, err <= policy.mosaic_error)
        }
    };
    Ok(MosaicObject {
        source_id: f.id,
        kind: f.kind,
        class: feature.class.class,
        tier: feature.class.tier,
        primitives,
        grid: *grid,
        error,
        accurate,
    })
}

/// Plane positions of a primitive's defining cells, for rendering.
pub fn vertex_points(p: &Primitive) -> Vec<PlanePoint> {
    p.vertices.iter().map(|&c| hex_to_plane(c)).collect()
}
