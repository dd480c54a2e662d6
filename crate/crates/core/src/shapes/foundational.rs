use crate::hexcore::{
    direction_of, normalize_angle_with, polar_angle_with, radial_distance_with, translate_with,
    Alu, Exact, HexCoord, Quantization, QuantizedAngle,
};

use super::ShapeError;

/// Kind implied by a foundational shape's null mask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FoundationalKind {
    Point,
    Ray,
    Wedge,
    Disc,
}

/// Anchor, optional radial extent and an optional clockwise angle pair.
///
/// | magnitude | start | end  | kind  |
/// |-----------|-------|------|-------|
/// | -         | -     | -    | point |
/// | m         | a     | -    | ray   |
/// | m         | -     | a    | ray   |
/// | m         | a     | b    | wedge |
/// | m         | -     | -    | disc  |
///
/// Rays and wedges without a magnitude are rejected: they would be
/// unbounded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Foundational {
    anchor: HexCoord,
    magnitude: Option<u64>,
    start: Option<QuantizedAngle>,
    end: Option<QuantizedAngle>,
}

/// Position of a point relative to a directed boundary, clockwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Before,
    On,
    After,
}

impl Foundational {
    pub fn new(
        anchor: HexCoord,
        magnitude: Option<u64>,
        start: Option<QuantizedAngle>,
        end: Option<QuantizedAngle>,
    ) -> Result<Self, ShapeError> {
        if magnitude.is_none() && (start.is_some() || end.is_some()) {
            return Err(ShapeError::UnboundedShape);
        }
        if let (Some(a), Some(b)) = (start, end) {
            if a.quantization() != b.quantization() {
                return Err(ShapeError::MixedQuantization);
            }
        }
        Ok(Foundational {
            anchor,
            magnitude,
            start,
            end,
        })
    }

    pub fn point(anchor: HexCoord) -> Self {
        Foundational {
            anchor,
            magnitude: None,
            start: None,
            end: None,
        }
    }

    pub fn disc(anchor: HexCoord, radius: u64) -> Self {
        Foundational {
            anchor,
            magnitude: Some(radius),
            start: None,
            end: None,
        }
    }

    pub fn ray(anchor: HexCoord, magnitude: u64, angle: QuantizedAngle) -> Self {
        Foundational {
            anchor,
            magnitude: Some(magnitude),
            start: Some(angle),
            end: None,
        }
    }

    pub fn wedge(
        anchor: HexCoord,
        magnitude: u64,
        start: QuantizedAngle,
        end: QuantizedAngle,
    ) -> Result<Self, ShapeError> {
        Self::new(anchor, Some(magnitude), Some(start), Some(end))
    }

    /// Wedge at `anchor` spanning the interior (at most half-turn) angle
    /// between the directions to `toward_a` and `toward_b`.
    pub fn interior_wedge(
        anchor: HexCoord,
        toward_a: HexCoord,
        toward_b: HexCoord,
        magnitude: u64,
        quant: Quantization,
    ) -> Result<Self, ShapeError> {
        let a = direction_of(toward_a - anchor, quant)?;
        let b = direction_of(toward_b - anchor, quant)?;
        let turn = quant.full_turn();
        let span = (b.value() + turn - a.value()) % turn;
        if span <= turn / 2 {
            Self::wedge(anchor, magnitude, a, b)
        } else {
            Self::wedge(anchor, magnitude, b, a)
        }
    }

    pub fn kind(&self) -> FoundationalKind {
        match (self.magnitude, self.start, self.end) {
            (None, _, _) => FoundationalKind::Point,
            (Some(_), None, None) => FoundationalKind::Disc,
            (Some(_), Some(_), Some(_)) => FoundationalKind::Wedge,
            (Some(_), _, _) => FoundationalKind::Ray,
        }
    }

    pub fn anchor(&self) -> HexCoord {
        self.anchor
    }

    pub fn magnitude(&self) -> Option<u64> {
        self.magnitude
    }

    pub fn start(&self) -> Option<QuantizedAngle> {
        self.start
    }

    pub fn end(&self) -> Option<QuantizedAngle> {
        self.end
    }

    pub fn quantization(&self) -> Option<Quantization> {
        self.start.or(self.end).map(|a| a.quantization())
    }

    pub(crate) fn with_parts(
        &self,
        anchor: HexCoord,
        magnitude: Option<u64>,
        start: Option<QuantizedAngle>,
        end: Option<QuantizedAngle>,
    ) -> Self {
        Foundational {
            anchor,
            magnitude,
            start,
            end,
        }
    }

    pub fn contains(&self, p: HexCoord) -> bool {
        self.contains_with(p, &mut Exact)
    }

    /// Membership test. Wedges are two orientation predicates plus one
    /// radial test; the anchor belongs to every shape with a magnitude.
    pub fn contains_with(&self, p: HexCoord, alu: &mut impl Alu) -> bool {
        let magnitude = match self.magnitude {
            None => return p == self.anchor,
            Some(m) => m,
        };
        let delta = translate_with(p, self.anchor, alu);
        let ring = radial_distance_with(delta, alu);
        if ring > magnitude {
            return false;
        }
        if ring == 0 {
            return true;
        }
        match (self.start, self.end) {
            (None, None) => true,
            (Some(a), None) | (None, Some(a)) => on_ray(delta, a, alu),
            (Some(start), Some(end)) => {
                let phi = polar_angle_with(delta, alu).expect("delta is not the origin");
                let a = normalize_angle_with(phi, start.quantization(), alu);
                let after = compare(a, start, alu) != Side::Before;
                let before = compare(a, end, alu) != Side::After;
                if start.value() <= end.value() {
                    after && before
                } else {
                    after || before
                }
            }
        }
    }
}

/// `phi_1 < phi_2` style comparison of two angles in `[0, 6Q)`.
fn compare(a: QuantizedAngle, boundary: QuantizedAngle, alu: &mut impl Alu) -> Side {
    alu.predicate();
    match a.value().cmp(&boundary.value()) {
        std::cmp::Ordering::Less => Side::Before,
        std::cmp::Ordering::Equal => Side::On,
        std::cmp::Ordering::Greater => Side::After,
    }
}

/// A cell is on a ray when its ring-local angle lies strictly within one
/// ring quantum of the ray direction, i.e. it is one of the (at most two)
/// ring cells bracketing the ray: `|phi * Q - angle * RI| < Q` modulo a turn.
fn on_ray(delta: HexCoord, angle: QuantizedAngle, alu: &mut impl Alu) -> bool {
    let phi = polar_angle_with(delta, alu).expect("delta is not the origin");
    let levels = angle.quantization().levels() as i64;
    let ring = phi.ring_index() as i64;
    let cell = alu.shl(phi.phi() as i64, angle.quantization().bits());
    let ray = alu.mul(angle.value() as i64, ring);
    let turn = 6 * ring * levels;
    let gap = alu.sub(cell, ray).rem_euclid(turn);
    alu.predicate();
    gap < levels || turn - gap < levels
}

/// Where `p` falls relative to the direction `boundary` drawn from `anchor`.
pub fn orientation_predicate(
    p: HexCoord,
    anchor: HexCoord,
    boundary: QuantizedAngle,
) -> Result<Side, ShapeError> {
    orientation_predicate_with(p, anchor, boundary, &mut Exact)
}

pub fn orientation_predicate_with(
    p: HexCoord,
    anchor: HexCoord,
    boundary: QuantizedAngle,
    alu: &mut impl Alu,
) -> Result<Side, ShapeError> {
    if p == anchor {
        return Err(ShapeError::DegenerateAtAnchor);
    }
    let delta = translate_with(p, anchor, alu);
    let phi = polar_angle_with(delta, alu)?;
    let a = normalize_angle_with(phi, boundary.quantization(), alu);
    Ok(compare(a, boundary, alu))
}

/// Whether `a` lies on the clockwise arc from `start` to `end`, endpoints
/// included, wrapping at a full turn.
pub fn angle_in_arc(a: QuantizedAngle, start: QuantizedAngle, end: QuantizedAngle) -> bool {
    let turn = start.quantization().full_turn();
    let a = a.requantize(start.quantization()).value();
    let end = end.requantize(start.quantization()).value();
    let offset = (a + turn - start.value()) % turn;
    let span = (end + turn - start.value()) % turn;
    offset <= span
}

/// Intersection of two foundational shapes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SimpleShape {
    first: Foundational,
    second: Foundational,
}

impl SimpleShape {
    pub fn new(first: Foundational, second: Foundational) -> Self {
        SimpleShape { first, second }
    }

    pub fn first(&self) -> &Foundational {
        &self.first
    }

    pub fn second(&self) -> &Foundational {
        &self.second
    }

    pub fn contains(&self, p: HexCoord) -> bool {
        self.contains_with(p, &mut Exact)
    }

    pub fn contains_with(&self, p: HexCoord, alu: &mut impl Alu) -> bool {
        self.first.contains_with(p, alu) && self.second.contains_with(p, alu)
    }

    /// Two rays facing each other.
    pub fn segment(a: HexCoord, b: HexCoord, quant: Quantization) -> Result<Self, ShapeError> {
        if a == b {
            return Err(ShapeError::DegeneratePolygon("segment endpoints coincide"));
        }
        let length = a.distance(b);
        Ok(SimpleShape::new(
            Foundational::ray(a, length, direction_of(b - a, quant)?),
            Foundational::ray(b, length, direction_of(a - b, quant)?),
        ))
    }

    /// Two wedges sharing the edge `ab`.
    pub fn triangle(
        a: HexCoord,
        b: HexCoord,
        c: HexCoord,
        quant: Quantization,
    ) -> Result<Self, ShapeError> {
        if a == b || b == c || a == c {
            return Err(ShapeError::DegeneratePolygon("triangle vertices coincide"));
        }
        let reach_a = a.distance(b).max(a.distance(c));
        let reach_b = b.distance(a).max(b.distance(c));
        Ok(SimpleShape::new(
            Foundational::interior_wedge(a, b, c, reach_a, quant)?,
            Foundational::interior_wedge(b, c, a, reach_b, quant)?,
        ))
    }

    /// Two opposing wedges at the diagonal corners `a` and `c` of the convex
    /// quadrilateral `abcd`.
    pub fn quadrilateral(
        a: HexCoord,
        b: HexCoord,
        c: HexCoord,
        d: HexCoord,
        quant: Quantization,
    ) -> Result<Self, ShapeError> {
        if a == c || b == d || a == b || a == d || c == b || c == d {
            return Err(ShapeError::DegeneratePolygon(
                "quadrilateral corners coincide",
            ));
        }
        let reach_a = a.distance(b).max(a.distance(c)).max(a.distance(d));
        let reach_c = c.distance(b).max(c.distance(a)).max(c.distance(d));
        Ok(SimpleShape::new(
            Foundational::interior_wedge(a, b, d, reach_a, quant)?,
            Foundational::interior_wedge(c, d, b, reach_c, quant)?,
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hexcore::{decode_ring, disc_cells, RingPosition};

    fn q64() -> Quantization {
        Quantization::DEFAULT
    }

    fn angle(v: u32) -> QuantizedAngle {
        QuantizedAngle::new(v, q64()).unwrap()
    }

    #[test]
    fn null_mask_kinds() {
        let o = HexCoord::ORIGIN;
        assert_eq!(Foundational::point(o).kind(), FoundationalKind::Point);
        assert_eq!(Foundational::disc(o, 3).kind(), FoundationalKind::Disc);
        assert_eq!(
            Foundational::ray(o, 3, angle(5)).kind(),
            FoundationalKind::Ray
        );
        let end_only = Foundational::new(o, Some(3), None, Some(angle(5))).unwrap();
        assert_eq!(end_only.kind(), FoundationalKind::Ray);
        assert_eq!(
            Foundational::wedge(o, 3, angle(5), angle(9))
                .unwrap()
                .kind(),
            FoundationalKind::Wedge
        );
        assert_eq!(
            Foundational::new(o, None, Some(angle(1)), None),
            Err(ShapeError::UnboundedShape)
        );
    }

    #[test]
    fn orientation_examples() {
        let q = q64();
        let boundary = QuantizedAngle::from_parts(1, 0, q).unwrap();
        // one step clockwise past the boundary direction at ring 4
        let past = decode_ring(RingPosition::new(4, 1, 1).unwrap());
        assert_eq!(
            orientation_predicate(past, HexCoord::ORIGIN, boundary).unwrap(),
            Side::After
        );
        let before = decode_ring(RingPosition::new(4, 0, 3).unwrap());
        assert_eq!(
            orientation_predicate(before, HexCoord::ORIGIN, boundary).unwrap(),
            Side::Before
        );
        // exactly along the boundary at RI = Q
        let b2 = QuantizedAngle::from_parts(3, 17, q).unwrap();
        let along = decode_ring(RingPosition::new(64, 3, 17).unwrap());
        assert_eq!(
            orientation_predicate(along, HexCoord::ORIGIN, b2).unwrap(),
            Side::On
        );
        assert_eq!(
            orientation_predicate(along, along, b2),
            Err(ShapeError::DegenerateAtAnchor)
        );
    }

    #[test]
    fn arc_examples() {
        let a = angle(100);
        assert!(angle_in_arc(a, a, a));
        assert!(angle_in_arc(angle(0), angle(383), angle(1)));
        assert!(!angle_in_arc(angle(2), angle(383), angle(1)));
        assert!(angle_in_arc(angle(50), angle(10), angle(60)));
        assert!(!angle_in_arc(angle(61), angle(10), angle(60)));
    }

    #[test]
    fn arc_matches_brute_force_at_q8() {
        let q = Quantization::from_levels(8).unwrap();
        let turn = q.full_turn();
        for s in 0..turn {
            for e in 0..turn {
                // walk clockwise from s to e collecting members
                let mut members = vec![false; turn as usize];
                let mut v = s;
                loop {
                    members[v as usize] = true;
                    if v == e {
                        break;
                    }
                    v = (v + 1) % turn;
                }
                for a in 0..turn {
                    let qa = |v| QuantizedAngle::new(v, q).unwrap();
                    assert_eq!(angle_in_arc(qa(a), qa(s), qa(e)), members[a as usize]);
                }
            }
        }
    }

    #[test]
    fn wedge_uses_arc_semantics() {
        let q = Quantization::from_levels(8).unwrap();
        let turn = q.full_turn();
        let qa = |v| QuantizedAngle::new(v, q).unwrap();
        for (s, e) in [(0, 7), (40, 3), (10, 10), (47, 0), (5, 30)] {
            let w = Foundational::wedge(HexCoord::ORIGIN, 6, qa(s), qa(e)).unwrap();
            for p in disc_cells(6).into_iter().skip(1) {
                let a = direction_of(p, q).unwrap();
                assert_eq!(w.contains(p), angle_in_arc(a, qa(s), qa(e)), "{s} {e} {p}");
            }
            assert!(s < turn && e < turn);
        }
    }

    #[test]
    fn wedge_zero_exact() {
        let q = q64();
        let o = HexCoord::ORIGIN;
        let segment_cells: Vec<HexCoord> = (1..=4u64)
            .flat_map(|ri| {
                (0..ri).map(move |spot| decode_ring(RingPosition::new(ri, 0, spot).unwrap()))
            })
            .collect();

        let exact = Foundational::wedge(o, 4, angle(0), angle(63)).unwrap();
        let got: Vec<HexCoord> = disc_cells(6)
            .into_iter()
            .filter(|c| exact.contains(*c))
            .collect();
        let mut want = segment_cells.clone();
        want.push(o);
        assert_eq!(sorted(got), sorted(want.clone()));

        // inclusive end at the start of wedge 1 picks up the corner cells too
        let closed = Foundational::wedge(o, 4, angle(0), QuantizedAngle::sextants(1, q)).unwrap();
        let got: Vec<HexCoord> = disc_cells(6)
            .into_iter()
            .filter(|c| closed.contains(*c))
            .collect();
        for ri in 1..=4 {
            want.push(HexCoord::DIRECTIONS[1] * ri);
        }
        assert_eq!(sorted(got), sorted(want));
    }

    fn sorted(mut v: Vec<HexCoord>) -> Vec<HexCoord> {
        v.sort();
        v
    }

    #[test]
    fn ray_along_wedge_boundary_is_straight() {
        let q = q64();
        let anchor = HexCoord::new(3, -1, -2).unwrap();
        let ray = Foundational::ray(anchor, 5, QuantizedAngle::sextants(4, q));
        let cells: Vec<HexCoord> = disc_cells(8)
            .into_iter()
            .map(|c| c + anchor)
            .filter(|c| ray.contains(*c))
            .collect();
        assert_eq!(cells.len(), 6);
        for k in 0..=5 {
            assert!(cells.contains(&(anchor + HexCoord::DIRECTIONS[4] * k)));
        }
    }

    #[test]
    fn facing_rays_form_a_connected_segment() {
        let q = q64();
        let a = HexCoord::new(-7, 2, 5).unwrap();
        for b in [
            HexCoord::new(6, -1, -5).unwrap(),
            HexCoord::new(1, 9, -10).unwrap(),
            HexCoord::new(-20, 13, 7).unwrap(),
        ] {
            let seg = SimpleShape::segment(a, b, q).unwrap();
            let d = a.distance(b);
            let cells: Vec<HexCoord> = disc_cells(d)
                .into_iter()
                .map(|c| c + a)
                .filter(|c| seg.contains(*c))
                .collect();
            // every distance step from a to b is represented
            for k in 0..=d {
                assert!(
                    cells
                        .iter()
                        .any(|c| c.distance(a) == k && c.distance(b) == d - k),
                    "b={b} k={k}"
                );
            }
            assert!(cells.iter().all(|c| c.distance(a) + c.distance(b) == d));
        }
    }

    #[test]
    fn anchor_always_member_with_magnitude() {
        let a = HexCoord::new(2, 2, -4).unwrap();
        assert!(Foundational::wedge(a, 0, angle(3), angle(3))
            .unwrap()
            .contains(a));
        assert!(Foundational::ray(a, 0, angle(9)).contains(a));
        assert!(Foundational::disc(a, 0).contains(a));
        assert!(Foundational::point(a).contains(a));
        assert!(!Foundational::point(a).contains(HexCoord::ORIGIN));
    }
}
