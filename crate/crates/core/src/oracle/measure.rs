use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::hexcore::{
    decode_ring_with, distance_with, encode_ring, normalize_angle_with, polar_angle,
    polar_angle_with, radial_distance_with, rotate_point_with, translate_with, Alu, HexCoord,
    OpClass, Quantization, QuantizedAngle,
};
use crate::shapes::{orientation_predicate_with, Foundational, HexPolygon, SimpleShape};

use super::{
    cart_distance_with, cart_in_polygon_with, cart_in_sector_with, cart_in_triangle_with,
    cart_orientation_with, cart_rotate_cw_with, FloatAlu, FloatOp, PlanePoint,
};

/// Operation tallies for one measured scope.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct OpCounter {
    pub adds: u64,
    pub muls: u64,
    pub divs: u64,
    pub trig_calls: u64,
    pub predicates: u64,
    /// Magnitude bits of the largest value seen.
    pub max_bit_width: u32,
}

fn int_bits(v: i64) -> u32 {
    64 - v.unsigned_abs().leading_zeros()
}

fn float_bits(v: f64) -> u32 {
    if !v.is_finite() {
        return 0;
    }
    let m = v.abs().ceil();
    if m >= u64::MAX as f64 {
        64
    } else {
        64 - (m as u64).leading_zeros()
    }
}

impl OpCounter {
    fn track(&mut self, bits: u32) {
        self.max_bit_width = self.max_bit_width.max(bits);
    }

    /// Elementwise maximum.
    pub fn max(self, o: OpCounter) -> OpCounter {
        OpCounter {
            adds: self.adds.max(o.adds),
            muls: self.muls.max(o.muls),
            divs: self.divs.max(o.divs),
            trig_calls: self.trig_calls.max(o.trig_calls),
            predicates: self.predicates.max(o.predicates),
            max_bit_width: self.max_bit_width.max(o.max_bit_width),
        }
    }
}

impl Alu for OpCounter {
    fn record(&mut self, class: OpClass, result: i64) {
        match class {
            OpClass::Add => self.adds += 1,
            OpClass::Mul => self.muls += 1,
            OpClass::Div => self.divs += 1,
            OpClass::Predicate => self.predicates += 1,
            OpClass::Shift | OpClass::Sign | OpClass::Observe => {}
        }
        self.track(int_bits(result));
    }
}

impl FloatAlu for OpCounter {
    fn record_float(&mut self, op: FloatOp, result: f64) {
        match op {
            FloatOp::Add => self.adds += 1,
            FloatOp::Mul => self.muls += 1,
            FloatOp::Div => self.divs += 1,
            FloatOp::Trig => self.trig_calls += 1,
            FloatOp::Compare => self.predicates += 1,
            FloatOp::Observe => {}
        }
        self.track(float_bits(result));
    }
}

/// Rows of the complexity comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Operation {
    Distance,
    RadialDistance,
    Normalization,
    PolarAngle,
    SignDecoding,
    OrientationPredicate,
    PointTranslation,
    PointRotation,
    PointInSector,
    PointInTriangle,
    PointInPolygon,
}

impl Operation {
    pub const ALL: [Operation; 11] = [
        Operation::Distance,
        Operation::RadialDistance,
        Operation::Normalization,
        Operation::PolarAngle,
        Operation::SignDecoding,
        Operation::OrientationPredicate,
        Operation::PointTranslation,
        Operation::PointRotation,
        Operation::PointInSector,
        Operation::PointInTriangle,
        Operation::PointInPolygon,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Operation::Distance => "distance",
            Operation::RadialDistance => "radial_distance",
            Operation::Normalization => "normalization",
            Operation::PolarAngle => "polar_angle",
            Operation::SignDecoding => "sign_decoding",
            Operation::OrientationPredicate => "orientation_predicate",
            Operation::PointTranslation => "point_translation",
            Operation::PointRotation => "point_rotation",
            Operation::PointInSector => "point_in_sector",
            Operation::PointInTriangle => "point_in_triangle",
            Operation::PointInPolygon => "point_in_polygon",
        }
    }

    /// Whether the operation is a `hexcore` routine rather than a shape
    /// predicate built on top of them.
    pub fn is_hexcore_op(self) -> bool {
        !matches!(
            self,
            Operation::OrientationPredicate
                | Operation::PointInSector
                | Operation::PointInTriangle
                | Operation::PointInPolygon
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    NeuroHex,
    Cartesian,
}

impl Engine {
    pub fn name(self) -> &'static str {
        match self {
            Engine::NeuroHex => "neurohex",
            Engine::Cartesian => "cartesian",
        }
    }
}

/// Random inputs whose components are all below `2^bits` in magnitude.
#[derive(Debug, Clone)]
pub struct Workload {
    pub bits: u32,
    pub quant: Quantization,
    pub points: Vec<HexCoord>,
    pub rotation: QuantizedAngle,
    pub boundary: QuantizedAngle,
}

impl Workload {
    pub fn random(count: usize, bits: u32, quant: Quantization, seed: u64) -> Workload {
        assert!((3..=40).contains(&bits), "workload bit width out of range");
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let limit = (1i64 << bits) - 1;
        let mut points = Vec::with_capacity(count);
        while points.len() < count {
            let q = rng.gen_range(-limit..=limit);
            let r = rng.gen_range(-limit..=limit);
            if (q + r).abs() <= limit {
                points.push(HexCoord::from_axial(q, r));
            }
        }
        let turn = quant.full_turn();
        Workload {
            bits,
            quant,
            points,
            rotation: QuantizedAngle::new(rng.gen_range(1..turn), quant).expect("in range"),
            boundary: QuantizedAngle::new(rng.gen_range(0..turn), quant).expect("in range"),
        }
    }

    fn pairs(&self) -> impl Iterator<Item = (HexCoord, HexCoord)> + '_ {
        let n = self.points.len();
        (0..n).map(move |i| (self.points[i], self.points[(i + 1) % n]))
    }
}

fn plane(p: HexCoord) -> PlanePoint {
    // integer-valued inputs of the same width as the lattice inputs
    PlanePoint::new(p.q() as f64, p.r() as f64)
}

fn measure_neurohex(op: Operation, w: &Workload, p: HexCoord, other: HexCoord) -> OpCounter {
    let mut c = OpCounter::default();
    let reach = 1u64 << (w.bits - 2);
    let quant = w.quant;
    let offset = |k: usize| other + HexCoord::DIRECTIONS[k] * reach as i64;
    match op {
        Operation::Distance => {
            distance_with(p, other, &mut c);
        }
        Operation::RadialDistance => {
            radial_distance_with(p, &mut c);
        }
        Operation::Normalization => {
            if let Ok(phi) = polar_angle(p) {
                normalize_angle_with(phi, quant, &mut c);
            }
        }
        Operation::PolarAngle => {
            let _ = polar_angle_with(p, &mut c);
        }
        Operation::SignDecoding => {
            decode_ring_with(encode_ring(p), &mut c);
        }
        Operation::OrientationPredicate => {
            let _ = orientation_predicate_with(p, other, w.boundary, &mut c);
        }
        Operation::PointTranslation => {
            translate_with(p, other, &mut c);
        }
        Operation::PointRotation => {
            rotate_point_with(p, w.rotation, &mut c);
        }
        Operation::PointInSector => {
            let end = w.boundary.rotated_by(QuantizedAngle::sextants(1, quant));
            let wedge = Foundational::wedge(other, reach, w.boundary, end).expect("bounded wedge");
            wedge.contains_with(p, &mut c);
        }
        Operation::PointInTriangle => {
            let tri =
                SimpleShape::triangle(other, offset(0), offset(2), quant).expect("valid triangle");
            tri.contains_with(p, &mut c);
        }
        Operation::PointInPolygon => {
            let poly = HexPolygon::new((0..6).map(offset).collect(), quant).expect("hexagon");
            poly.contains_with(p, &mut c);
        }
    }
    c
}

fn measure_cartesian(op: Operation, w: &Workload, p: HexCoord, other: HexCoord) -> OpCounter {
    let mut c = OpCounter::default();
    let (pp, po) = (plane(p), plane(other));
    let reach = (1u64 << (w.bits - 2)) as f64;
    let theta = |a: QuantizedAngle| {
        a.value() as f64 / a.quantization().full_turn() as f64 * std::f64::consts::TAU
    };
    match op {
        Operation::Distance => {
            cart_distance_with(pp, po, &mut c);
        }
        Operation::RadialDistance => {
            cart_distance_with(pp, PlanePoint::default(), &mut c);
        }
        Operation::Normalization => {
            let phi = FloatAlu::observe(&mut c, pp.y.atan2(pp.x));
            let wedge = FloatAlu::observe(&mut c, std::f64::consts::FRAC_PI_3);
            let ratio = FloatAlu::div(&mut c, phi, wedge);
            FloatAlu::mul(&mut c, ratio, w.quant.levels() as f64);
        }
        Operation::PolarAngle => {
            let (x, y) = (
                FloatAlu::observe(&mut c, pp.x),
                FloatAlu::observe(&mut c, pp.y),
            );
            c.atan2(x, y);
        }
        Operation::SignDecoding => {
            // x = s_x |x|, y = s_y |y|: sign muxes only
            FloatAlu::observe(&mut c, pp.x.abs());
            FloatAlu::observe(&mut c, pp.y.abs());
        }
        Operation::OrientationPredicate => {
            let dir = PlanePoint::new(theta(w.boundary).cos(), theta(w.boundary).sin());
            let v1 = PlanePoint::new(po.x + dir.x * reach, po.y + dir.y * reach);
            cart_orientation_with(pp, po, v1, &mut c);
        }
        Operation::PointTranslation => {
            FloatAlu::sub(&mut c, pp.x, po.x);
            FloatAlu::sub(&mut c, pp.y, po.y);
        }
        Operation::PointRotation => {
            cart_rotate_cw_with(pp, theta(w.rotation), &mut c);
        }
        Operation::PointInSector => {
            let t1 = theta(w.boundary);
            let _ =
                cart_in_sector_with(pp, po, t1, t1 + std::f64::consts::FRAC_PI_3, reach, &mut c);
        }
        Operation::PointInTriangle => {
            let tri = [
                po,
                po.add(PlanePoint::new(reach, 0.0)),
                po.add(PlanePoint::new(0.0, reach)),
            ];
            let _ = cart_in_triangle_with(pp, tri, &mut c);
        }
        Operation::PointInPolygon => {
            let poly: Vec<PlanePoint> = (0..6)
                .map(|k| {
                    let t = k as f64 * std::f64::consts::FRAC_PI_3;
                    po.add(PlanePoint::new(reach * t.cos(), reach * t.sin()))
                })
                .collect();
            let _ = cart_in_polygon_with(pp, &poly, &mut c);
        }
    }
    c
}

/// Worst-case per-call counts of `op` over the workload.
pub fn measure(op: Operation, engine: Engine, workload: &Workload) -> OpCounter {
    workload
        .pairs()
        .map(|(p, other)| match engine {
            Engine::NeuroHex => measure_neurohex(op, workload, p, other),
            Engine::Cartesian => measure_cartesian(op, workload, p, other),
        })
        .fold(OpCounter::default(), OpCounter::max)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BenchRow {
    pub operation: Operation,
    pub engine: Engine,
    pub counter: OpCounter,
}

/// Every operation on both engines.
pub fn bench(workload: &Workload) -> Vec<BenchRow> {
    Operation::ALL
        .iter()
        .flat_map(|&op| {
            [Engine::NeuroHex, Engine::Cartesian].map(|engine| BenchRow {
                operation: op,
                engine,
                counter: measure(op, engine, workload),
            })
        })
        .collect()
}

pub fn bench_csv(rows: &[BenchRow]) -> String {
    let mut out = String::from("operation,side,adds,muls,divs,trig,max_bits\n");
    for row in rows {
        let c = row.counter;
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            row.operation.name(),
            row.engine.name(),
            c.adds,
            c.muls,
            c.divs,
            c.trig_calls,
            c.max_bit_width
        )
        .expect("writing to a string");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn workload() -> Workload {
        Workload::random(2000, 16, Quantization::DEFAULT, 42)
    }

    #[test]
    fn rotation_cost() {
        let w = workload();
        let hex = measure(Operation::PointRotation, Engine::NeuroHex, &w);
        assert!(hex.muls <= 1 && hex.adds <= 4 && hex.adds >= 3, "{hex:?}");
        assert_eq!(hex.trig_calls, 0);
        let cart = measure(Operation::PointRotation, Engine::Cartesian, &w);
        assert!(cart.trig_calls >= 2);
    }

    #[test]
    fn distance_bit_widths() {
        let w = workload();
        let hex = measure(Operation::Distance, Engine::NeuroHex, &w);
        assert!(hex.max_bit_width <= 17);
        let cart = measure(Operation::Distance, Engine::Cartesian, &w);
        assert!(cart.max_bit_width >= 31);
    }

    #[test]
    fn polygon_predicates_match_sides() {
        let w = workload();
        let hex = measure(Operation::PointInPolygon, Engine::NeuroHex, &w);
        assert_eq!(hex.predicates, 6);
    }

    #[test]
    fn csv_layout() {
        let w = Workload::random(50, 8, Quantization::DEFAULT, 1);
        let csv = bench_csv(&bench(&w));
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "operation,side,adds,muls,divs,trig,max_bits");
        assert_eq!(lines.len(), 1 + 2 * Operation::ALL.len());
        assert!(lines.iter().skip(1).all(|l| l.split(',').count() == 7));
    }
}
