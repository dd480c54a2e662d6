use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Alu, Exact, HexError};

/// A cell of the hexagonal lattice in cubic coordinates, `q + r + s = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct HexCoord {
    q: i64,
    r: i64,
    s: i64,
}

impl HexCoord {
    pub const ORIGIN: HexCoord = HexCoord { q: 0, r: 0, s: 0 };

    /// Ring corner directions in clockwise order; wedge `w` runs from
    /// `DIRECTIONS[w]` to `DIRECTIONS[(w + 1) % 6]`.
    pub const DIRECTIONS: [HexCoord; 6] = [
        HexCoord { q: 1, r: 0, s: -1 },
        HexCoord { q: 1, r: -1, s: 0 },
        HexCoord { q: 0, r: -1, s: 1 },
        HexCoord { q: -1, r: 0, s: 1 },
        HexCoord { q: -1, r: 1, s: 0 },
        HexCoord { q: 0, r: 1, s: -1 },
    ];

    pub fn new(q: i64, r: i64, s: i64) -> Result<Self, HexError> {
        if q.checked_add(r).and_then(|v| v.checked_add(s)) != Some(0) {
            return Err(HexError::ZeroSumViolation { q, r, s });
        }
        Ok(HexCoord { q, r, s })
    }

    /// Builds a coordinate from its first two components.
    pub const fn from_axial(q: i64, r: i64) -> Self {
        HexCoord { q, r, s: -q - r }
    }

    pub(crate) const fn from_parts_unchecked(q: i64, r: i64, s: i64) -> Self {
        HexCoord { q, r, s }
    }

    #[inline]
    pub const fn q(self) -> i64 {
        self.q
    }

    #[inline]
    pub const fn r(self) -> i64 {
        self.r
    }

    #[inline]
    pub const fn s(self) -> i64 {
        self.s
    }

    pub const fn components(self) -> [i64; 3] {
        [self.q, self.r, self.s]
    }

    pub fn is_origin(self) -> bool {
        self == Self::ORIGIN
    }

    pub fn distance(self, other: HexCoord) -> u64 {
        distance_with(self, other, &mut Exact)
    }

    pub fn radial_distance(self) -> u64 {
        radial_distance_with(self, &mut Exact)
    }

    pub fn neighbors(self) -> [HexCoord; 6] {
        Self::DIRECTIONS.map(|d| self + d)
    }
}

/// `max(|q - q'|, |r - r'|, |s - s'|)`.
pub fn distance_with(a: HexCoord, b: HexCoord, alu: &mut impl Alu) -> u64 {
    let dq = alu.sub(a.q, b.q);
    let dr = alu.sub(a.r, b.r);
    let ds = alu.sub(a.s, b.s);
    let (dq, dr, ds) = (alu.abs(dq), alu.abs(dr), alu.abs(ds));
    dq.max(dr).max(ds) as u64
}

/// `max(|q|, |r|, |s|)`, which is also the ring index of `p`.
pub fn radial_distance_with(p: HexCoord, alu: &mut impl Alu) -> u64 {
    let (q, r, s) = (alu.abs(p.q), alu.abs(p.r), alu.abs(p.s));
    q.max(r).max(s) as u64
}

/// Re-expresses `p` relative to `delta`: `(q - dq, r - dr, s - ds)`.
pub fn translate_with(p: HexCoord, delta: HexCoord, alu: &mut impl Alu) -> HexCoord {
    HexCoord {
        q: alu.sub(p.q, delta.q),
        r: alu.sub(p.r, delta.r),
        s: alu.sub(p.s, delta.s),
    }
}

impl Add for HexCoord {
    type Output = HexCoord;

    fn add(self, o: HexCoord) -> HexCoord {
        HexCoord {
            q: self.q + o.q,
            r: self.r + o.r,
            s: self.s + o.s,
        }
    }
}

impl Sub for HexCoord {
    type Output = HexCoord;

    fn sub(self, o: HexCoord) -> HexCoord {
        HexCoord {
            q: self.q - o.q,
            r: self.r - o.r,
            s: self.s - o.s,
        }
    }
}

impl Neg for HexCoord {
    type Output = HexCoord;

    fn neg(self) -> HexCoord {
        HexCoord {
            q: -self.q,
            r: -self.r,
            s: -self.s,
        }
    }
}

impl Mul<i64> for HexCoord {
    type Output = HexCoord;

    fn mul(self, k: i64) -> HexCoord {
        HexCoord {
            q: self.q * k,
            r: self.r * k,
            s: self.s * k,
        }
    }
}

/// Literal form `q,r,s`.
impl fmt::Display for HexCoord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.q, self.r, self.s)
    }
}

impl FromStr for HexCoord {
    type Err = HexError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let bad = || HexError::ParseCoord(text.to_string());
        let parts: Vec<i64> = text
            .split(',')
            .map(|p| p.trim().parse::<i64>())
            .collect::<Result<_, _>>()
            .map_err(|_| bad())?;
        match parts.as_slice() {
            [q, r, s] => HexCoord::new(*q, *r, *s),
            _ => Err(bad()),
        }
    }
}

impl Serialize for HexCoord {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        [self.q, self.r, self.s].serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for HexCoord {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let [q, r, s] = <[i64; 3]>::deserialize(deserializer)?;
        HexCoord::new(q, r, s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn make_coord_examples() {
        assert_eq!(HexCoord::new(0, 0, 0).unwrap(), HexCoord::ORIGIN);
        let c = HexCoord::new(2, -1, -1).unwrap();
        assert_eq!(c.components(), [2, -1, -1]);
        assert_eq!(
            HexCoord::new(1, 1, 1),
            Err(HexError::ZeroSumViolation { q: 1, r: 1, s: 1 })
        );
    }

    #[test]
    fn overflowing_sum_is_rejected() {
        assert!(HexCoord::new(i64::MAX, 1, 0).is_err());
    }

    #[test]
    fn distance_examples() {
        let c = HexCoord::new(2, -1, -1).unwrap();
        assert_eq!(c.distance(c), 0);
        assert_eq!(c.distance(HexCoord::ORIGIN), 2);
        assert_eq!(HexCoord::ORIGIN.radial_distance(), 0);
        assert_eq!(HexCoord::new(3, 0, -3).unwrap().radial_distance(), 3);
    }

    #[test]
    fn translate_examples() {
        let p = HexCoord::new(3, -5, 2).unwrap();
        assert_eq!(translate_with(p, HexCoord::ORIGIN, &mut Exact), p);
        assert_eq!(translate_with(p, p, &mut Exact), HexCoord::ORIGIN);
    }

    #[test]
    fn literal_round_trip() {
        let c: HexCoord = "4,-1,-3".parse().unwrap();
        assert_eq!(c.to_string(), "4,-1,-3");
        assert!("1,1,1".parse::<HexCoord>().is_err());
        assert!("1,2".parse::<HexCoord>().is_err());
        assert!("a,b,c".parse::<HexCoord>().is_err());
    }

    #[test]
    fn json_form_is_a_triple() {
        let c = HexCoord::new(1, -2, 1).unwrap();
        assert_eq!(serde_json::to_string(&c).unwrap(), "[1,-2,1]");
        assert!(serde_json::from_str::<HexCoord>("[1,1,1]").is_err());
    }

    #[test]
    fn directions_are_unit_and_alternate() {
        for (w, d) in HexCoord::DIRECTIONS.iter().enumerate() {
            assert_eq!(d.radial_distance(), 1);
            // d[w] + d[w+2] = d[w+1]
            assert_eq!(
                *d + HexCoord::DIRECTIONS[(w + 2) % 6],
                HexCoord::DIRECTIONS[(w + 1) % 6]
            );
        }
    }
}
