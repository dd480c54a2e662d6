//! Cartesian reference geometry and operation counting.
//!
//! The predicates here are straight transcriptions of the classic plane
//! formulas (distance, determinant orientation, sector, edge function,
//! winding number). They serve two purposes: ground truth for the lattice
//! routines, and the "other column" when counting arithmetic.

mod measure;
mod plane;
mod predicates;
mod region;

use thiserror::Error;

pub use measure::{bench, bench_csv, measure, BenchRow, Engine, OpCounter, Operation, Workload};
pub use plane::{
    angle_direction, angle_gap, cube_round, hex_angle_of, hex_to_plane, plane_to_cube,
    plane_to_hex, PlanePoint, CELL_PITCH,
};
pub use predicates::{
    boundary_distance, cart_distance, cart_distance_with, cart_in_polygon, cart_in_polygon_with,
    cart_in_sector, cart_in_sector_with, cart_in_triangle, cart_in_triangle_with, cart_orientation,
    cart_orientation_with, cart_rotate_cw, cart_rotate_cw_with, edge_function_with,
    segment_distance, winding_number_with,
};
pub use region::{check_agreement, denote, Agreement, Region};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("degenerate geometry: {0}")]
    DegenerateGeometry(&'static str),
}

/// Instruction class of a floating point operation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FloatOp {
    Add,
    Mul,
    /// Division and square root.
    Div,
    Trig,
    Compare,
    Observe,
}

/// Floating point arithmetic with an observation hook.
pub trait FloatAlu {
    #[inline]
    fn record_float(&mut self, op: FloatOp, result: f64) {
        let _ = (op, result);
    }

    #[inline]
    fn observe(&mut self, v: f64) -> f64 {
        self.record_float(FloatOp::Observe, v);
        v
    }

    #[inline]
    fn add(&mut self, a: f64, b: f64) -> f64 {
        let v = a + b;
        self.record_float(FloatOp::Add, v);
        v
    }

    #[inline]
    fn sub(&mut self, a: f64, b: f64) -> f64 {
        let v = a - b;
        self.record_float(FloatOp::Add, v);
        v
    }

    #[inline]
    fn mul(&mut self, a: f64, b: f64) -> f64 {
        let v = a * b;
        self.record_float(FloatOp::Mul, v);
        v
    }

    #[inline]
    fn div(&mut self, a: f64, b: f64) -> f64 {
        let v = a / b;
        self.record_float(FloatOp::Div, v);
        v
    }

    #[inline]
    fn sqrt(&mut self, a: f64) -> f64 {
        let v = a.sqrt();
        self.record_float(FloatOp::Div, v);
        v
    }

    #[inline]
    fn sin(&mut self, a: f64) -> f64 {
        let v = a.sin();
        self.record_float(FloatOp::Trig, v);
        v
    }

    #[inline]
    fn cos(&mut self, a: f64) -> f64 {
        let v = a.cos();
        self.record_float(FloatOp::Trig, v);
        v
    }

    #[inline]
    fn atan2(&mut self, y: f64, x: f64) -> f64 {
        let v = y.atan2(x);
        self.record_float(FloatOp::Trig, v);
        v
    }

    #[inline]
    fn compare(&mut self) {
        self.record_float(FloatOp::Compare, 0.0);
    }
}

/// Plain `f64` arithmetic.
#[derive(Debug, Clone, Copy, Default)]
pub struct PlainFloat;

impl FloatAlu for PlainFloat {}
