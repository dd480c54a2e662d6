use super::{FloatAlu, OracleError, PlainFloat, PlanePoint};

/// `sqrt((x - x')^2 + (y - y')^2)`.
pub fn cart_distance_with(a: PlanePoint, b: PlanePoint, fpu: &mut impl FloatAlu) -> f64 {
    let (ax, ay) = (fpu.observe(a.x), fpu.observe(a.y));
    let (bx, by) = (fpu.observe(b.x), fpu.observe(b.y));
    let dx = fpu.sub(ax, bx);
    let dy = fpu.sub(ay, by);
    let (dx2, dy2) = (fpu.mul(dx, dx), fpu.mul(dy, dy));
    let sq = fpu.add(dx2, dy2);
    fpu.sqrt(sq)
}

pub fn cart_distance(a: PlanePoint, b: PlanePoint) -> f64 {
    cart_distance_with(a, b, &mut PlainFloat)
}

/// Edge function `(P.x - V0.x)(V1.y - V0.y) - (P.y - V0.y)(V1.x - V0.x)`:
/// positive when `p` is to the right of `v0 -> v1`.
pub fn edge_function_with(
    p: PlanePoint,
    v0: PlanePoint,
    v1: PlanePoint,
    fpu: &mut impl FloatAlu,
) -> f64 {
    let px = fpu.sub(p.x, v0.x);
    let ey = fpu.sub(v1.y, v0.y);
    let py = fpu.sub(p.y, v0.y);
    let ex = fpu.sub(v1.x, v0.x);
    let l = fpu.mul(px, ey);
    let r = fpu.mul(py, ex);
    fpu.sub(l, r)
}

/// Sign of `det [[x1 - x0, y1 - y0], [x - x0, y - y0]]`: `+1` when `p` is
/// left of `v0 -> v1`, `-1` for a right turn, `0` when collinear.
pub fn cart_orientation_with(
    p: PlanePoint,
    v0: PlanePoint,
    v1: PlanePoint,
    fpu: &mut impl FloatAlu,
) -> i8 {
    let det = -edge_function_with(p, v0, v1, fpu);
    fpu.compare();
    if det > 0.0 {
        1
    } else if det < 0.0 {
        -1
    } else {
        0
    }
}

pub fn cart_orientation(p: PlanePoint, v0: PlanePoint, v1: PlanePoint) -> i8 {
    cart_orientation_with(p, v0, v1, &mut PlainFloat)
}

fn cross_with(u: PlanePoint, w: PlanePoint, fpu: &mut impl FloatAlu) -> f64 {
    let l = fpu.mul(u.x, w.y);
    let r = fpu.mul(u.y, w.x);
    fpu.sub(l, r)
}

/// Sector with apex `o`, radius `r`, swept counterclockwise from `theta1`
/// to `theta2` (radians): `|v|^2 <= R^2`, `cross(a, v) >= 0`,
/// `cross(v, b) >= 0`. Sectors wider than a half turn are the complement
/// of the opposite sector.
pub fn cart_in_sector_with(
    p: PlanePoint,
    o: PlanePoint,
    theta1: f64,
    theta2: f64,
    r: f64,
    fpu: &mut impl FloatAlu,
) -> Result<bool, OracleError> {
    if !(r > 0.0) {
        return Err(OracleError::DegenerateGeometry(
            "sector radius must be positive",
        ));
    }
    let (vx, vy) = (fpu.sub(p.x, o.x), fpu.sub(p.y, o.y));
    let v = PlanePoint::new(vx, vy);
    let a = PlanePoint::new(fpu.cos(theta1), fpu.sin(theta1));
    let b = PlanePoint::new(fpu.cos(theta2), fpu.sin(theta2));
    let (vx2, vy2) = (fpu.mul(v.x, v.x), fpu.mul(v.y, v.y));
    let len2 = fpu.add(vx2, vy2);
    let r2 = fpu.mul(r, r);
    let av = cross_with(a, v, fpu);
    let vb = cross_with(v, b, fpu);
    fpu.compare();
    fpu.compare();
    fpu.compare();
    if len2 > r2 {
        return Ok(false);
    }
    let span = (theta2 - theta1).rem_euclid(std::f64::consts::TAU);
    if span <= std::f64::consts::PI {
        Ok(av >= 0.0 && vb >= 0.0)
    } else {
        // reflex sector: outside the open opposite sector
        Ok(!(av < 0.0 && vb < 0.0))
    }
}

pub fn cart_in_sector(
    p: PlanePoint,
    o: PlanePoint,
    theta1: f64,
    theta2: f64,
    r: f64,
) -> Result<bool, OracleError> {
    cart_in_sector_with(p, o, theta1, theta2, r, &mut PlainFloat)
}

/// `E_AB >= 0 && E_BC >= 0 && E_CA >= 0` after putting the triangle in
/// clockwise order.
pub fn cart_in_triangle_with(
    p: PlanePoint,
    tri: [PlanePoint; 3],
    fpu: &mut impl FloatAlu,
) -> Result<bool, OracleError> {
    let [a, mut b, mut c] = tri;
    let area = b.sub(a).cross(c.sub(a));
    if area == 0.0 || a == b || b == c || a == c {
        return Err(OracleError::DegenerateGeometry("zero-area triangle"));
    }
    if area > 0.0 {
        std::mem::swap(&mut b, &mut c);
    }
    let ab = edge_function_with(p, a, b, fpu);
    let bc = edge_function_with(p, b, c, fpu);
    let ca = edge_function_with(p, c, a, fpu);
    fpu.compare();
    fpu.compare();
    fpu.compare();
    Ok(ab >= 0.0 && bc >= 0.0 && ca >= 0.0)
}

pub fn cart_in_triangle(p: PlanePoint, tri: [PlanePoint; 3]) -> Result<bool, OracleError> {
    cart_in_triangle_with(p, tri, &mut PlainFloat)
}

/// Winding number with half-open edge rules:
/// `+1` if `y_i <= y < y_{i+1}` and `E > 0`, `-1` if `y_{i+1} <= y < y_i`
/// and `E < 0`. Inside when the sum is non-zero.
pub fn winding_number_with(p: PlanePoint, poly: &[PlanePoint], fpu: &mut impl FloatAlu) -> i64 {
    let n = poly.len();
    let mut w = 0i64;
    for i in 0..n {
        let (v0, v1) = (poly[i], poly[(i + 1) % n]);
        let e = edge_function_with(p, v0, v1, fpu);
        fpu.compare();
        if v0.y <= p.y && p.y < v1.y && e > 0.0 {
            w += 1;
        } else if v1.y <= p.y && p.y < v0.y && e < 0.0 {
            w -= 1;
        }
    }
    w
}

pub fn cart_in_polygon_with(
    p: PlanePoint,
    poly: &[PlanePoint],
    fpu: &mut impl FloatAlu,
) -> Result<bool, OracleError> {
    if poly.len() < 3 {
        return Err(OracleError::DegenerateGeometry(
            "polygon needs three vertices",
        ));
    }
    if (0..poly.len()).any(|i| poly[i] == poly[(i + 1) % poly.len()]) {
        return Err(OracleError::DegenerateGeometry("repeated vertex"));
    }
    Ok(winding_number_with(p, poly, fpu) != 0)
}

pub fn cart_in_polygon(p: PlanePoint, poly: &[PlanePoint]) -> Result<bool, OracleError> {
    cart_in_polygon_with(p, poly, &mut PlainFloat)
}

/// Rotation by `theta` radians clockwise:
/// `x' = x cos t + y sin t`, `y' = -x sin t + y cos t`.
pub fn cart_rotate_cw_with(p: PlanePoint, theta: f64, fpu: &mut impl FloatAlu) -> PlanePoint {
    let (c, s) = (fpu.cos(theta), fpu.sin(theta));
    let (xc, ys) = (fpu.mul(p.x, c), fpu.mul(p.y, s));
    let (xs, yc) = (fpu.mul(p.x, s), fpu.mul(p.y, c));
    let x = fpu.add(xc, ys);
    let y = fpu.sub(yc, xs);
    PlanePoint::new(x, y)
}

pub fn cart_rotate_cw(p: PlanePoint, theta: f64) -> PlanePoint {
    cart_rotate_cw_with(p, theta, &mut PlainFloat)
}

/// Distance from `p` to the segment `ab`.
pub fn segment_distance(p: PlanePoint, a: PlanePoint, b: PlanePoint) -> f64 {
    let ab = b.sub(a);
    let len2 = ab.dot(ab);
    let t = if len2 == 0.0 {
        0.0
    } else {
        (p.sub(a).dot(ab) / len2).clamp(0.0, 1.0)
    };
    p.sub(a.add(ab.scale(t))).norm()
}

/// Distance from `p` to the boundary of a closed polygon.
pub fn boundary_distance(p: PlanePoint, poly: &[PlanePoint]) -> f64 {
    let n = poly.len();
    (0..n)
        .map(|i| segment_distance(p, poly[i], poly[(i + 1) % n]))
        .fold(f64::INFINITY, f64::min)
}
