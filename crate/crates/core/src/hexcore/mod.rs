//! Cubic hexagonal lattice arithmetic.
//!
//! All values are immutable and every operation is a pure function. The
//! `*_with` variants take an [`Alu`] so the same code can be run under the
//! oracle's operation counter.

mod alu;
mod angle;
mod coord;
mod resolution;
mod ring;

use thiserror::Error;

pub use alu::{Alu, Exact, OpClass};
pub use angle::{
    denormalize_angle, denormalize_angle_with, normalize_angle, normalize_angle_with, Quantization,
    QuantizedAngle, RingLocalAngle,
};
pub use coord::{distance_with, radial_distance_with, translate_with, HexCoord};
pub use resolution::{coarsen, coarsen_with, refine, refine_with};
pub use ring::{
    decode_ring, decode_ring_with, direction_of, disc_cells, encode_ring, encode_ring_with,
    from_polar, from_polar_with, polar_angle, polar_angle_with, ring_cells, rotate_about,
    rotate_point, rotate_point_with, RingPosition, SignPattern, Slot, SIGN_PATTERNS,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HexError {
    #[error("coordinate ({q}, {r}, {s}) violates q + r + s = 0")]
    ZeroSumViolation { q: i64, r: i64, s: i64 },
    #[error("invalid ring position (ring {ring_index}, wedge {wedge}, spot {spot})")]
    InvalidRingPosition {
        ring_index: u64,
        wedge: u8,
        spot: u64,
    },
    #[error("polar angle is undefined at the origin")]
    UndefinedAtOrigin,
    #[error("scale factor {0} is not a power of two >= 2")]
    InvalidScale(i64),
    #[error("angle {value} is not a valid encoding for {levels} levels per wedge")]
    InvalidAngle { value: u64, levels: u32 },
    #[error("unsupported angular quantization {0}")]
    InvalidQuantization(u32),
    #[error("malformed coordinate literal {0:?}")]
    ParseCoord(String),
}

pub fn make_coord(q: i64, r: i64, s: i64) -> Result<HexCoord, HexError> {
    HexCoord::new(q, r, s)
}

pub fn distance(a: HexCoord, b: HexCoord) -> u64 {
    a.distance(b)
}

pub fn radial_distance(p: HexCoord) -> u64 {
    p.radial_distance()
}

/// `p` re-expressed relative to the origin `delta`, i.e. `p - delta`.
pub fn translate(p: HexCoord, delta: HexCoord) -> HexCoord {
    translate_with(p, delta, &mut Exact)
}
