//! Local equirectangular projection onto the hex lattice.
//!
//! North maps to the plane's `+x` axis (the centre of wedge 0) and east to
//! `-y`, so clockwise hex angles read like compass bearings. One cell pitch
//! equals `cell_size` meters.

use neurohex::oracle::{hex_to_plane, plane_to_hex, PlanePoint, CELL_PITCH};
use neurohex::HexCoord;
use serde::{Deserialize, Serialize};

use crate::model::LonLat;
use crate::PipelineError;

/// Mean Earth radius, meters.
pub const EARTH_RADIUS: f64 = 6_371_008.8;

/// Largest offset from the origin, in degrees, the projection accepts.
pub const MAX_OFFSET_DEG: f64 = 2.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Grid {
    pub origin: LonLat,
    /// Cell pitch, meters.
    pub cell_size: f64,
}

impl Grid {
    pub fn new(origin: LonLat, cell_size: f64) -> Self {
        Grid { origin, cell_size }
    }

    fn plane_per_meter(&self) -> f64 {
        CELL_PITCH / self.cell_size
    }

    fn meters_per_degree(&self) -> (f64, f64) {
        let per_deg = EARTH_RADIUS * std::f64::consts::PI / 180.0;
        (per_deg * self.origin[1].to_radians().cos(), per_deg)
    }

    pub fn in_range(&self, p: LonLat) -> bool {
        (p[0] - self.origin[0]).abs() <= MAX_OFFSET_DEG
            && (p[1] - self.origin[1]).abs() <= MAX_OFFSET_DEG
    }

    /// Continuous plane position; no range check.
    pub fn to_plane(&self, p: LonLat) -> PlanePoint {
        let (mx, my) = self.meters_per_degree();
        let east = (p[0] - self.origin[0]) * mx;
        let north = (p[1] - self.origin[1]) * my;
        let k = self.plane_per_meter();
        PlanePoint::new(north * k, -east * k)
    }

    pub fn from_plane(&self, pt: PlanePoint) -> LonLat {
        let (mx, my) = self.meters_per_degree();
        let k = self.plane_per_meter();
        let north = pt.x / k;
        let east = -pt.y / k;
        [self.origin[0] + east / mx, self.origin[1] + north / my]
    }

    pub fn geo_to_hex(&self, p: LonLat) -> Result<HexCoord, PipelineError> {
        if !self.in_range(p) {
            return Err(PipelineError::OutOfGridRange {
                lon: p[0],
                lat: p[1],
            });
        }
        Ok(plane_to_hex(self.to_plane(p)))
    }

    /// Geographic position of a cell centre.
    pub fn hex_to_geo(&self, c: HexCoord) -> LonLat {
        self.from_plane(hex_to_plane(c))
    }
}

/// Nearest cell to `p` on `grid`.
pub fn geo_to_hex(p: LonLat, grid: &Grid) -> Result<HexCoord, PipelineError> {
    grid.geo_to_hex(p)
}
