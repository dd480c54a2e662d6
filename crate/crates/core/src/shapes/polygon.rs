use crate::hexcore::{
    direction_of, normalize_angle_with, polar_angle_with, translate_with, Alu, Exact, HexCoord,
    Quantization, QuantizedAngle,
};

use super::ShapeError;

/// Polygon with lattice vertices, stored clockwise.
///
/// Convex polygons are tested with one orientation predicate per edge.
/// Non-convex polygons are ear-clipped into convex triangles at construction
/// and tested as their union.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HexPolygon {
    vertices: Vec<HexCoord>,
    quant: Quantization,
    edges: Vec<QuantizedAngle>,
    pieces: Vec<HexPolygon>,
}

fn cross(o: HexCoord, a: HexCoord, b: HexCoord) -> i128 {
    // axial cross product; the axial -> plane map has positive determinant
    let (ax, ay) = ((a.q() - o.q()) as i128, (a.r() - o.r()) as i128);
    let (bx, by) = ((b.q() - o.q()) as i128, (b.r() - o.r()) as i128);
    ax * by - ay * bx
}

fn twice_area(v: &[HexCoord]) -> i128 {
    let n = v.len();
    (0..n)
        .map(|i| {
            let (a, b) = (v[i], v[(i + 1) % n]);
            a.q() as i128 * b.r() as i128 - b.q() as i128 * a.r() as i128
        })
        .sum()
}

fn on_segment(a: HexCoord, b: HexCoord, p: HexCoord) -> bool {
    cross(a, b, p) == 0
        && p.q() >= a.q().min(b.q())
        && p.q() <= a.q().max(b.q())
        && p.r() >= a.r().min(b.r())
        && p.r() <= a.r().max(b.r())
}

fn segments_touch(a: HexCoord, b: HexCoord, c: HexCoord, d: HexCoord) -> bool {
    let d1 = cross(c, d, a).signum();
    let d2 = cross(c, d, b).signum();
    let d3 = cross(a, b, c).signum();
    let d4 = cross(a, b, d).signum();
    if d1 * d2 < 0 && d3 * d4 < 0 {
        return true;
    }
    on_segment(c, d, a) || on_segment(c, d, b) || on_segment(a, b, c) || on_segment(a, b, d)
}

impl HexPolygon {
    /// Builds a polygon from at least three vertices in either winding. A
    /// repeated closing vertex is dropped.
    pub fn new(vertices: Vec<HexCoord>, quant: Quantization) -> Result<Self, ShapeError> {
        let mut v = vertices;
        if v.len() > 1 && v.first() == v.last() {
            v.pop();
        }
        if v.len() < 3 {
            return Err(ShapeError::DegeneratePolygon("fewer than three vertices"));
        }
        let n = v.len();
        if (0..n).any(|i| v[i] == v[(i + 1) % n]) {
            return Err(ShapeError::DegeneratePolygon("repeated consecutive vertex"));
        }
        let area = twice_area(&v);
        if area == 0 {
            return Err(ShapeError::DegeneratePolygon("zero area"));
        }
        if area > 0 {
            v.reverse();
        }
        check_simple(&v)?;
        let convex = (0..n).all(|i| cross(v[i], v[(i + 1) % n], v[(i + 2) % n]) <= 0);
        let pieces = if convex {
            Vec::new()
        } else {
            ear_clip(&v)?
                .into_iter()
                .map(|t| Self::convex(t.to_vec(), quant))
                .collect::<Result<_, _>>()?
        };
        let mut poly = Self::convex(v, quant)?;
        poly.pieces = pieces;
        Ok(poly)
    }

    fn convex(vertices: Vec<HexCoord>, quant: Quantization) -> Result<Self, ShapeError> {
        let n = vertices.len();
        let edges = (0..n)
            .map(|i| direction_of(vertices[(i + 1) % n] - vertices[i], quant))
            .collect::<Result<_, _>>()?;
        Ok(HexPolygon {
            vertices,
            quant,
            edges,
            pieces: Vec::new(),
        })
    }

    /// Vertices in clockwise order.
    pub fn vertices(&self) -> &[HexCoord] {
        &self.vertices
    }

    pub fn quantization(&self) -> Quantization {
        self.quant
    }

    pub fn is_convex(&self) -> bool {
        self.pieces.is_empty()
    }

    /// Triangles used for non-convex membership; empty when convex.
    pub fn pieces(&self) -> &[HexPolygon] {
        &self.pieces
    }

    pub fn contains(&self, p: HexCoord) -> bool {
        self.contains_with(p, &mut Exact)
    }

    pub fn contains_with(&self, p: HexCoord, alu: &mut impl Alu) -> bool {
        if !self.pieces.is_empty() {
            return self.pieces.iter().any(|t| t.contains_with(p, alu));
        }
        let half_turn = self.quant.full_turn() / 2;
        let turn = self.quant.full_turn();
        let mut inside = true;
        // every edge is evaluated so the predicate count is exactly n
        for (vertex, edge) in self.vertices.iter().zip(&self.edges) {
            let delta = translate_with(p, *vertex, alu);
            let right_of_edge = match polar_angle_with(delta, alu) {
                Err(_) => true,
                Ok(phi) => {
                    let a = normalize_angle_with(phi, self.quant, alu);
                    (a.value() + turn - edge.value()) % turn <= half_turn
                }
            };
            alu.predicate();
            inside &= right_of_edge;
        }
        inside
    }
}

fn check_simple(v: &[HexCoord]) -> Result<(), ShapeError> {
    let n = v.len();
    for i in 0..n {
        let (a, b, c) = (v[i], v[(i + 1) % n], v[(i + 2) % n]);
        // adjacent edges may only share their common vertex
        if cross(a, b, c) == 0 {
            let dot = (b.q() - a.q()) * (c.q() - b.q()) + (b.r() - a.r()) * (c.r() - b.r());
            if dot < 0 {
                return Err(ShapeError::DegeneratePolygon("self-intersecting"));
            }
        }
        for j in (i + 2)..n {
            if (j + 1) % n == i {
                continue;
            }
            if segments_touch(a, b, v[j], v[(j + 1) % n]) {
                return Err(ShapeError::DegeneratePolygon("self-intersecting"));
            }
        }
    }
    Ok(())
}

fn in_triangle(t: [HexCoord; 3], p: HexCoord) -> bool {
    // clockwise triangle: inside or on when no edge has p strictly to its left
    (0..3).all(|k| cross(t[k], t[(k + 1) % 3], p) <= 0)
}

/// Ear clipping on a simple clockwise polygon.
fn ear_clip(v: &[HexCoord]) -> Result<Vec<[HexCoord; 3]>, ShapeError> {
    let mut ring: Vec<HexCoord> = v.to_vec();
    let mut out = Vec::with_capacity(v.len().saturating_sub(2));
    while ring.len() > 3 {
        let n = ring.len();
        let mut clipped = false;
        for i in 0..n {
            let (prev, cur, next) = (ring[(i + n - 1) % n], ring[i], ring[(i + 1) % n]);
            let turn = cross(prev, cur, next);
            if turn == 0 {
                ring.remove(i);
                clipped = true;
                break;
            }
            if turn > 0 {
                continue;
            }
            let tri = [prev, cur, next];
            let blocked = ring
                .iter()
                .any(|&p| p != prev && p != cur && p != next && in_triangle(tri, p));
            if !blocked {
                out.push(tri);
                ring.remove(i);
                clipped = true;
                break;
            }
        }
        if !clipped {
            return Err(ShapeError::DegeneratePolygon("no ear found"));
        }
    }
    if cross(ring[0], ring[1], ring[2]) != 0 {
        out.push([ring[0], ring[1], ring[2]]);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hexcore::{disc_cells, OpClass};

    fn c(q: i64, r: i64) -> HexCoord {
        HexCoord::from_axial(q, r)
    }

    #[derive(Default)]
    struct Predicates(u64);

    impl Alu for Predicates {
        fn record(&mut self, class: OpClass, _result: i64) {
            if class == OpClass::Predicate {
                self.0 += 1;
            }
        }
    }

    #[test]
    fn rejects_degenerate_input() {
        let q = Quantization::DEFAULT;
        assert!(HexPolygon::new(vec![c(0, 0), c(1, 0)], q).is_err());
        assert!(HexPolygon::new(vec![c(0, 0), c(1, 0), c(2, 0)], q).is_err());
        assert!(HexPolygon::new(vec![c(0, 0), c(0, 0), c(2, 0), c(0, 3)], q).is_err());
        // bow tie
        let bow = vec![c(0, 0), c(4, 0), c(0, 4), c(4, 4)];
        assert!(HexPolygon::new(bow, q).is_err());
    }

    #[test]
    fn winding_is_normalised_to_clockwise() {
        let q = Quantization::DEFAULT;
        let ccw = vec![c(0, 0), c(5, 0), c(0, 5)];
        let p = HexPolygon::new(ccw.clone(), q).unwrap();
        assert!(twice_area(p.vertices()) < 0);
        let mut cw = ccw;
        cw.reverse();
        let p2 = HexPolygon::new(cw, q).unwrap();
        for cell in disc_cells(8) {
            assert_eq!(p.contains(cell), p2.contains(cell));
        }
    }

    #[test]
    fn vertices_and_edges_are_members() {
        let q = Quantization::DEFAULT;
        let poly = HexPolygon::new(vec![c(0, 0), c(6, 0), c(6, -6), c(-2, -3)], q).unwrap();
        assert!(poly.is_convex());
        for &v in poly.vertices() {
            assert!(poly.contains(v));
        }
        for k in 0..=6 {
            assert!(poly.contains(c(k, 0)));
        }
        assert!(!poly.contains(c(3, 2)));
    }

    #[test]
    fn predicate_count_equals_edge_count() {
        let q = Quantization::DEFAULT;
        let poly =
            HexPolygon::new(vec![c(0, 0), c(6, 0), c(6, -6), c(0, -4), c(-3, -1)], q).unwrap();
        for p in [c(1, -1), c(20, 20), c(0, 0)] {
            let mut alu = Predicates::default();
            poly.contains_with(p, &mut alu);
            assert_eq!(alu.0, 5);
        }
    }

    #[test]
    fn non_convex_l_shape() {
        let q = Quantization::DEFAULT;
        // an L in axial coordinates
        let l = vec![c(0, 0), c(8, 0), c(8, 3), c(3, 3), c(3, 8), c(0, 8)];
        let poly = HexPolygon::new(l, q).unwrap();
        assert!(!poly.is_convex());
        assert_eq!(poly.pieces().len(), 4);
        assert!(poly.contains(c(1, 1)));
        assert!(poly.contains(c(7, 1)));
        assert!(poly.contains(c(1, 7)));
        assert!(!poly.contains(c(6, 6)));
        assert!(!poly.contains(c(5, 5)));
    }

    #[test]
    fn collinear_vertices_are_accepted() {
        let q = Quantization::DEFAULT;
        let poly = HexPolygon::new(vec![c(0, 0), c(3, 0), c(6, 0), c(0, 6)], q).unwrap();
        assert!(poly.is_convex());
        assert!(poly.contains(c(1, 1)));
    }
}
