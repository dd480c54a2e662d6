//! Ring encoding: every cell is (ring index, wedge, spot within the wedge's
//! ring segment), and decoding is a component permutation plus sign mux.

use super::{
    denormalize_angle_with, normalize_angle_with, radial_distance_with, Alu, Exact, HexCoord,
    HexError, Quantization, QuantizedAngle, RingLocalAngle,
};

/// Polar-like position of a cell relative to an origin.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RingPosition {
    ring_index: u64,
    wedge: u8,
    spot: u64,
}

impl RingPosition {
    pub const ORIGIN: RingPosition = RingPosition {
        ring_index: 0,
        wedge: 0,
        spot: 0,
    };

    pub fn new(ring_index: u64, wedge: u8, spot: u64) -> Result<Self, HexError> {
        let valid = if ring_index == 0 {
            wedge == 0 && spot == 0
        } else {
            wedge < 6 && spot < ring_index
        };
        if !valid {
            return Err(HexError::InvalidRingPosition {
                ring_index,
                wedge,
                spot,
            });
        }
        Ok(RingPosition {
            ring_index,
            wedge,
            spot,
        })
    }

    #[inline]
    pub const fn ring_index(self) -> u64 {
        self.ring_index
    }

    #[inline]
    pub const fn wedge(self) -> u8 {
        self.wedge
    }

    #[inline]
    pub const fn spot(self) -> u64 {
        self.spot
    }
}

/// Which of `(RI, Rws, RI - Rws)` fills a cubic component.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Slot {
    Ring,
    Spot,
    Rest,
}

/// Sign and permutation that turn `(RI, Rws, RI - Rws)` into `(q, r, s)`
/// for one wedge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SignPattern {
    pub signs: [i8; 3],
    pub slots: [Slot; 3],
}

/// Frozen from the ring walk `RI * d[w] + Rws * d[w + 2]`; the
/// `sign_patterns_match_ring_walk` test re-derives it.
pub const SIGN_PATTERNS: [SignPattern; 6] = {
    use Slot::*;
    [
        SignPattern {
            signs: [1, -1, -1],
            slots: [Ring, Spot, Rest],
        },
        SignPattern {
            signs: [1, -1, 1],
            slots: [Rest, Ring, Spot],
        },
        SignPattern {
            signs: [-1, -1, 1],
            slots: [Spot, Rest, Ring],
        },
        SignPattern {
            signs: [-1, 1, 1],
            slots: [Ring, Spot, Rest],
        },
        SignPattern {
            signs: [-1, 1, -1],
            slots: [Rest, Ring, Spot],
        },
        SignPattern {
            signs: [1, 1, -1],
            slots: [Spot, Rest, Ring],
        },
    ]
};

pub fn encode_ring_with(p: HexCoord, alu: &mut impl Alu) -> RingPosition {
    let ring = radial_distance_with(p, alu) as i64;
    if ring == 0 {
        return RingPosition::ORIGIN;
    }
    let comps = p.components();
    for (wedge, pattern) in SIGN_PATTERNS.iter().enumerate() {
        let mut ring_ok = false;
        let mut spot = -1;
        for axis in 0..3 {
            match pattern.slots[axis] {
                Slot::Ring => ring_ok = alu.apply_sign(pattern.signs[axis], comps[axis]) == ring,
                Slot::Spot => spot = alu.apply_sign(pattern.signs[axis], comps[axis]),
                Slot::Rest => {}
            }
        }
        if ring_ok && (0..ring).contains(&spot) {
            return RingPosition {
                ring_index: ring as u64,
                wedge: wedge as u8,
                spot: spot as u64,
            };
        }
    }
    unreachable!("every non-origin cell lies on exactly one wedge segment")
}

pub fn encode_ring(p: HexCoord) -> RingPosition {
    encode_ring_with(p, &mut Exact)
}

/// Permutation of `(RI, Rws, RI - Rws)` plus the wedge's sign pattern; the
/// only arithmetic is the one subtraction.
pub fn decode_ring_with(rp: RingPosition, alu: &mut impl Alu) -> HexCoord {
    if rp.ring_index == 0 {
        return HexCoord::ORIGIN;
    }
    let ring = alu.observe(rp.ring_index as i64);
    let spot = alu.observe(rp.spot as i64);
    let rest = alu.sub(ring, spot);
    let pattern = &SIGN_PATTERNS[rp.wedge as usize];
    let mut out = [0i64; 3];
    for axis in 0..3 {
        let magnitude = match pattern.slots[axis] {
            Slot::Ring => ring,
            Slot::Spot => spot,
            Slot::Rest => rest,
        };
        out[axis] = alu.apply_sign(pattern.signs[axis], magnitude);
    }
    HexCoord::from_parts_unchecked(out[0], out[1], out[2])
}

pub fn decode_ring(rp: RingPosition) -> HexCoord {
    decode_ring_with(rp, &mut Exact)
}

pub fn polar_angle_with(p: HexCoord, alu: &mut impl Alu) -> Result<RingLocalAngle, HexError> {
    let rp = encode_ring_with(p, alu);
    if rp.ring_index == 0 {
        return Err(HexError::UndefinedAtOrigin);
    }
    Ok(RingLocalAngle::from_parts_unchecked(
        rp.ring_index,
        rp.wedge,
        rp.spot,
    ))
}

/// Clockwise ring-local angle `Rws + Wi * RI` of `p` about the origin.
pub fn polar_angle(p: HexCoord) -> Result<RingLocalAngle, HexError> {
    polar_angle_with(p, &mut Exact)
}

/// Global quantized direction of `p` about the origin.
pub fn direction_of(p: HexCoord, quant: Quantization) -> Result<QuantizedAngle, HexError> {
    Ok(normalize_angle_with(polar_angle(p)?, quant, &mut Exact))
}

/// The cell at ring `magnitude` in direction `angle`.
pub fn from_polar_with(magnitude: u64, angle: QuantizedAngle, alu: &mut impl Alu) -> HexCoord {
    if magnitude == 0 {
        return HexCoord::ORIGIN;
    }
    let phi = denormalize_angle_with(angle, magnitude, alu).expect("magnitude is non-zero");
    decode_ring_with(
        RingPosition {
            ring_index: magnitude,
            wedge: phi.wedge(),
            spot: phi.spot(),
        },
        alu,
    )
}

pub fn from_polar(magnitude: u64, angle: QuantizedAngle) -> HexCoord {
    from_polar_with(magnitude, angle, &mut Exact)
}

/// Clockwise rotation about the origin.
///
/// Works in mixed radix (wedge, spot): the rotation is brought to ring
/// resolution with one multiplication, the spots are added with a single
/// conditional wrap that carries into the wedge index, and the result is
/// decoded through the sign pattern. Equivalent to adding
/// `phi_rot = (rot * RI) >> B` to `Rws + Wi * RI` modulo `6 * RI`.
pub fn rotate_point_with(p: HexCoord, rot: QuantizedAngle, alu: &mut impl Alu) -> HexCoord {
    let rp = encode_ring_with(p, alu);
    if rp.ring_index == 0 {
        return p;
    }
    let ring = rp.ring_index as i64;
    let rot_spot = {
        let product = alu.mul(rot.local() as i64, ring);
        alu.shr(product, rot.quantization().bits())
    };
    let mut spot = alu.add(rp.spot as i64, rot_spot);
    let carry = spot >= ring;
    if carry {
        spot = alu.sub(spot, ring);
    }
    let wedge = alu.wedge_add(rp.wedge, rot.wedge(), carry);
    decode_ring_with(
        RingPosition {
            ring_index: rp.ring_index,
            wedge,
            spot: spot as u64,
        },
        alu,
    )
}

pub fn rotate_point(p: HexCoord, rot: QuantizedAngle) -> HexCoord {
    rotate_point_with(p, rot, &mut Exact)
}

/// Rotation about an arbitrary pivot.
pub fn rotate_about(p: HexCoord, pivot: HexCoord, rot: QuantizedAngle) -> HexCoord {
    rotate_point(p - pivot, rot) + pivot
}

/// Cells of ring `ring_index` in clockwise order from `(Wi = 0, Rws = 0)`,
/// produced by walking the lattice with unit steps.
pub fn ring_cells(ring_index: u64) -> Vec<HexCoord> {
    if ring_index == 0 {
        return vec![HexCoord::ORIGIN];
    }
    let mut cells = Vec::with_capacity(6 * ring_index as usize);
    let mut cur = HexCoord::DIRECTIONS[0] * ring_index as i64;
    for wedge in 0..6 {
        let step = HexCoord::DIRECTIONS[(wedge + 2) % 6];
        for _ in 0..ring_index {
            cells.push(cur);
            cur = cur + step;
        }
    }
    cells
}

/// All cells with radial distance at most `radius`, ring by ring.
pub fn disc_cells(radius: u64) -> Vec<HexCoord> {
    (0..=radius).flat_map(ring_cells).collect()
}
