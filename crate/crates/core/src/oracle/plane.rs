use crate::hexcore::{HexCoord, QuantizedAngle};

const SQRT3: f64 = 1.732_050_807_568_877_2;

/// A point in the embedding plane; one unit is one cell circumradius.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default)]
pub struct PlanePoint {
    pub x: f64,
    pub y: f64,
}

impl PlanePoint {
    pub const fn new(x: f64, y: f64) -> Self {
        PlanePoint { x, y }
    }

    pub fn sub(self, o: PlanePoint) -> PlanePoint {
        PlanePoint::new(self.x - o.x, self.y - o.y)
    }

    pub fn add(self, o: PlanePoint) -> PlanePoint {
        PlanePoint::new(self.x + o.x, self.y + o.y)
    }

    pub fn scale(self, k: f64) -> PlanePoint {
        PlanePoint::new(self.x * k, self.y * k)
    }

    pub fn cross(self, o: PlanePoint) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn dot(self, o: PlanePoint) -> f64 {
        self.x * o.x + self.y * o.y
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }
}

/// Distance between neighbouring cell centres.
pub const CELL_PITCH: f64 = SQRT3;

/// Flat-top centre of `p`: `x = 1.5 q`, `y = sqrt(3) (r + q / 2)`.
pub fn hex_to_plane(p: HexCoord) -> PlanePoint {
    let (q, r) = (p.q() as f64, p.r() as f64);
    PlanePoint::new(1.5 * q, SQRT3 * (r + q / 2.0))
}

/// Fractional cube coordinates of a plane point.
pub fn plane_to_cube(pt: PlanePoint) -> [f64; 3] {
    let q = pt.x / 1.5;
    let r = pt.y / SQRT3 - q / 2.0;
    [q, r, -q - r]
}

/// Nearest cell: round each component, then repair the one with the
/// largest rounding error so the sum is zero.
pub fn cube_round(f: [f64; 3]) -> HexCoord {
    let mut rounded = f.map(f64::round);
    let err = [0, 1, 2].map(|i| (rounded[i] - f[i]).abs());
    let worst = if err[0] > err[1] && err[0] > err[2] {
        0
    } else if err[1] > err[2] {
        1
    } else {
        2
    };
    let others: f64 = (0..3).filter(|&i| i != worst).map(|i| rounded[i]).sum();
    rounded[worst] = -others;
    HexCoord::new(rounded[0] as i64, rounded[1] as i64, rounded[2] as i64)
        .expect("repaired components sum to zero")
}

pub fn plane_to_hex(pt: PlanePoint) -> HexCoord {
    cube_round(plane_to_cube(pt))
}

/// Plane direction of a quantized angle: the point on the unit ring
/// boundary at fraction `local / Q` from corner `d[w]` to corner `d[w+1]`.
pub fn angle_direction(a: QuantizedAngle) -> PlanePoint {
    let w = a.wedge() as usize;
    let t = a.local() as f64 / a.quantization().levels() as f64;
    let from = hex_to_plane(HexCoord::DIRECTIONS[w]);
    let to = hex_to_plane(HexCoord::DIRECTIONS[(w + 1) % 6]);
    from.add(to.sub(from).scale(t))
}

/// Continuous clockwise hex angle of `v`, in units of `1/Q` wedge, in
/// `[0, 6Q)`. Inverse of [`angle_direction`] up to scale.
pub fn hex_angle_of(v: PlanePoint, levels: u32) -> f64 {
    // corner d[w] sits at 30 - 60 w degrees (counterclockwise from +x)
    let theta = v.y.atan2(v.x).to_degrees();
    let cw = (30.0 - theta).rem_euclid(360.0);
    let w = ((cw / 60.0).floor() as usize).min(5);
    let from = hex_to_plane(HexCoord::DIRECTIONS[w]);
    let to = hex_to_plane(HexCoord::DIRECTIONS[(w + 1) % 6]);
    let edge = to.sub(from);
    let t = (-v.cross(from) / v.cross(edge)).clamp(0.0, 1.0);
    let turn = 6.0 * levels as f64;
    let value = ((w as f64 + t) * levels as f64).rem_euclid(turn);
    if turn - value < 1e-9 {
        0.0
    } else {
        value
    }
}

/// Signed shortest difference `a - b` between two hex angles on a turn of
/// `turn` units.
pub fn angle_gap(a: f64, b: f64, turn: f64) -> f64 {
    let d = (a - b).rem_euclid(turn);
    if d > turn / 2.0 {
        d - turn
    } else {
        d
    }
}
