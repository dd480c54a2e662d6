//! NeuroHex: integer cubic hexagonal coordinates with ring encoding,
//! shift-friendly quantized angles and a shape library built on angle
//! comparisons instead of trigonometry.
//!
//! The crate is split into three layers:
//!
//! * [`hexcore`]: the lattice itself: [`HexCoord`], ring positions,
//!   quantized angles, rotation, translation and power-of-two resolution
//!   changes.
//! * [`shapes`]: foundational / simple / complex shapes and polygons with
//!   membership tests, rasterization and transforms.
//! * [`oracle`]: a floating point Cartesian reference used to check the
//!   lattice routines and to count the arithmetic both sides perform.
//!
//! Conventions:
//!
//! ```text
//!  ring corner directions, clockwise, wedge w spans d[w] -> d[w+1]
//!
//!      d0 = ( 1, 0,-1)   d1 = ( 1,-1, 0)   d2 = ( 0,-1, 1)
//!      d3 = (-1, 0, 1)   d4 = (-1, 1, 0)   d5 = ( 0, 1,-1)
//!
//!  plane embedding (flat-top cells, circumradius 1, y up):
//!      x = 1.5 q        y = sqrt(3) (r + q/2)
//!
//!  wedge 0 is centred on +x, which is "up" on a rendered map (north).
//!  Angles grow clockwise; a quantized angle with wedge w and local part l
//!  points through the unit ring boundary at fraction l/Q along d[w] -> d[w+1].
//! ```

pub mod hexcore;
pub mod oracle;
pub mod shapes;

pub use hexcore::{
    Alu, Exact, HexCoord, HexError, OpClass, Quantization, QuantizedAngle, RingLocalAngle,
    RingPosition,
};
pub use shapes::{Foundational, FoundationalKind, HexPolygon, Shape, ShapeError, SimpleShape};
