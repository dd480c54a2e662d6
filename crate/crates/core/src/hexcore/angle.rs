use std::fmt;

use super::{Alu, Exact, HexError};

/// Global per-wedge angular resolution `Q = 2^B`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Quantization {
    bits: u32,
}

impl Quantization {
    pub const MAX_BITS: u32 = 24;
    /// 64 levels per wedge.
    pub const DEFAULT: Quantization = Quantization { bits: 6 };

    pub fn from_bits(bits: u32) -> Result<Self, HexError> {
        if bits > Self::MAX_BITS {
            return Err(HexError::InvalidQuantization(bits));
        }
        Ok(Quantization { bits })
    }

    /// From a level count, which must be a power of two.
    pub fn from_levels(levels: u64) -> Result<Self, HexError> {
        if !levels.is_power_of_two() {
            return Err(HexError::InvalidQuantization(levels as u32));
        }
        Self::from_bits(levels.trailing_zeros())
    }

    #[inline]
    pub const fn bits(self) -> u32 {
        self.bits
    }

    /// Levels per wedge, `Q`.
    #[inline]
    pub const fn levels(self) -> u32 {
        1 << self.bits
    }

    /// Levels per full turn, `6Q`.
    #[inline]
    pub const fn full_turn(self) -> u32 {
        6 << self.bits
    }
}

impl Default for Quantization {
    fn default() -> Self {
        Self::DEFAULT
    }
}

/// A clockwise angle in `[0, 6Q)`; the bits above `B` hold the wedge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuantizedAngle {
    value: u32,
    quant: Quantization,
}

impl QuantizedAngle {
    pub fn new(value: u32, quant: Quantization) -> Result<Self, HexError> {
        if value >= quant.full_turn() {
            return Err(HexError::InvalidAngle {
                value: value as u64,
                levels: quant.levels(),
            });
        }
        Ok(QuantizedAngle { value, quant })
    }

    pub fn from_parts(wedge: u8, local: u32, quant: Quantization) -> Result<Self, HexError> {
        if wedge >= 6 || local >= quant.levels() {
            return Err(HexError::InvalidAngle {
                value: ((wedge as u64) << quant.bits()) | local as u64,
                levels: quant.levels(),
            });
        }
        Ok(QuantizedAngle {
            value: ((wedge as u32) << quant.bits()) | local,
            quant,
        })
    }

    /// `k` sixths of a turn.
    pub fn sextants(k: u32, quant: Quantization) -> Self {
        QuantizedAngle {
            value: (k % 6) << quant.bits(),
            quant,
        }
    }

    pub fn zero(quant: Quantization) -> Self {
        QuantizedAngle { value: 0, quant }
    }

    #[inline]
    pub const fn value(self) -> u32 {
        self.value
    }

    #[inline]
    pub const fn quantization(self) -> Quantization {
        self.quant
    }

    #[inline]
    pub const fn wedge(self) -> u8 {
        (self.value >> self.quant.bits()) as u8
    }

    #[inline]
    pub const fn local(self) -> u32 {
        self.value & (self.quant.levels() - 1)
    }

    /// Clockwise sum modulo a full turn.
    pub fn rotated_by(self, rot: QuantizedAngle) -> Self {
        let rot = rot.requantize(self.quant);
        QuantizedAngle {
            value: (self.value + rot.value) % self.quant.full_turn(),
            quant: self.quant,
        }
    }

    /// Re-expresses the angle at another resolution, flooring when coarsening.
    pub fn requantize(self, quant: Quantization) -> Self {
        let value = if quant.bits() >= self.quant.bits() {
            self.value << (quant.bits() - self.quant.bits())
        } else {
            self.value >> (self.quant.bits() - quant.bits())
        };
        QuantizedAngle { value, quant }
    }
}

impl fmt::Display for QuantizedAngle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.value, self.quant.full_turn())
    }
}

/// A clockwise angle at the resolution of one ring: `phi = Rws + Wi * RI`,
/// `6 * RI` steps per turn. Stored in mixed radix (wedge, spot).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RingLocalAngle {
    ring_index: u64,
    wedge: u8,
    spot: u64,
}

impl RingLocalAngle {
    pub fn new(ring_index: u64, wedge: u8, spot: u64) -> Result<Self, HexError> {
        if ring_index == 0 || wedge >= 6 || spot >= ring_index {
            return Err(HexError::InvalidRingPosition {
                ring_index,
                wedge,
                spot,
            });
        }
        Ok(RingLocalAngle {
            ring_index,
            wedge,
            spot,
        })
    }

    pub fn from_phi(phi: u64, ring_index: u64) -> Result<Self, HexError> {
        if ring_index == 0 || phi >= 6 * ring_index {
            return Err(HexError::InvalidRingPosition {
                ring_index,
                wedge: (phi / ring_index.max(1)).min(255) as u8,
                spot: phi % ring_index.max(1),
            });
        }
        Ok(RingLocalAngle {
            ring_index,
            wedge: (phi / ring_index) as u8,
            spot: phi % ring_index,
        })
    }

    pub(crate) const fn from_parts_unchecked(ring_index: u64, wedge: u8, spot: u64) -> Self {
        RingLocalAngle {
            ring_index,
            wedge,
            spot,
        }
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

    /// `Rws + Wi * RI`.
    pub fn phi(self) -> u64 {
        self.spot + self.wedge as u64 * self.ring_index
    }
}

/// Scales the ring-local position into the global `B`-bit resolution:
/// wedge kept, local part `floor(Rws * Q / RI)`.
pub fn normalize_angle_with(
    phi: RingLocalAngle,
    quant: Quantization,
    alu: &mut impl Alu,
) -> QuantizedAngle {
    let spot = alu.observe(phi.spot as i64);
    let ring = alu.observe(phi.ring_index as i64);
    let scaled = alu.shl(spot, quant.bits());
    let local = alu.div_floor(scaled, ring) as u32;
    QuantizedAngle {
        value: ((phi.wedge as u32) << quant.bits()) | local,
        quant,
    }
}

pub fn normalize_angle(phi: RingLocalAngle, quant: Quantization) -> QuantizedAngle {
    normalize_angle_with(phi, quant, &mut Exact)
}

/// Inverse of [`normalize_angle`] at ring `ring_index`:
/// wedge kept, spot `(local * RI) >> B`. One multiplication.
pub fn denormalize_angle_with(
    angle: QuantizedAngle,
    ring_index: u64,
    alu: &mut impl Alu,
) -> Result<RingLocalAngle, HexError> {
    if ring_index == 0 {
        return Err(HexError::UndefinedAtOrigin);
    }
    let ring = alu.observe(ring_index as i64);
    let product = alu.mul(angle.local() as i64, ring);
    let spot = alu.shr(product, angle.quantization().bits()) as u64;
    Ok(RingLocalAngle {
        ring_index,
        wedge: angle.wedge(),
        spot,
    })
}

pub fn denormalize_angle(
    angle: QuantizedAngle,
    ring_index: u64,
) -> Result<RingLocalAngle, HexError> {
    denormalize_angle_with(angle, ring_index, &mut Exact)
}
