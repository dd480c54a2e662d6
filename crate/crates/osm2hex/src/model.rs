use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

/// `(lon, lat)` in decimal degrees.
pub type LonLat = [f64; 2];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FeatureKind {
    Node,
    Polyline,
    Polygon,
}

/// A geometry candidate straight out of the OSM file.
///
/// Polygons are closed (first vertex repeated last); polylines have at
/// least two vertices; nodes exactly one.
#[derive(Debug, Clone, PartialEq)]
pub struct RawFeature {
    pub id: i64,
    pub kind: FeatureKind,
    pub coords: Vec<LonLat>,
    pub tags: BTreeMap<String, String>,
}

impl RawFeature {
    pub fn tag(&self, key: &str) -> Option<&str> {
        self.tags.get(key).map(String::as_str)
    }

    pub fn vertex_count(&self) -> usize {
        self.coords.len()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Class {
    River,
    Highway,
    Arterial,
    Building,
    Park,
    Water,
    Path,
    Landmark,
    Other,
}

impl Class {
    pub const ALL: [Class; 9] = [
        Class::River,
        Class::Highway,
        Class::Arterial,
        Class::Building,
        Class::Park,
        Class::Water,
        Class::Path,
        Class::Landmark,
        Class::Other,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Class::River => "river",
            Class::Highway => "highway",
            Class::Arterial => "arterial",
            Class::Building => "building",
            Class::Park => "park",
            Class::Water => "water",
            Class::Path => "path",
            Class::Landmark => "landmark",
            Class::Other => "other",
        }
    }

    pub fn base_tier(self) -> Tier {
        match self {
            Class::River => Tier::Identity,
            Class::Highway | Class::Arterial => Tier::Structural,
            Class::Building | Class::Park | Class::Water | Class::Path | Class::Landmark => {
                Tier::Contextual
            }
            Class::Other => Tier::Discard,
        }
    }
}

impl fmt::Display for Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Relevance tiers, most relevant first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Tier {
    Identity,
    Structural,
    Contextual,
    Discard,
}

impl Tier {
    pub const KEPT: [Tier; 3] = [Tier::Identity, Tier::Structural, Tier::Contextual];

    pub fn name(self) -> &'static str {
        match self {
            Tier::Identity => "identity",
            Tier::Structural => "structural",
            Tier::Contextual => "contextual",
            Tier::Discard => "discard",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FeatureClass {
    pub class: Class,
    pub tier: Tier,
}

/// A feature with its class and its tier under the active policy.
#[derive(Debug, Clone, PartialEq)]
pub struct Classified {
    pub feature: RawFeature,
    pub class: FeatureClass,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scale {
    Metro,
    Zoom,
}

impl std::str::FromStr for Scale {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "metro" => Ok(Scale::Metro),
            "zoom" => Ok(Scale::Zoom),
            other => Err(format!("unknown policy `{other}` (expected metro or zoom)")),
        }
    }
}

/// Knobs for one abstraction level.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResolutionPolicy {
    pub scale: Scale,
    /// Douglas-Peucker tolerance, degrees.
    pub dp_tolerance: f64,
    pub chaikin_iterations: u32,
    /// Smallest polygon kept, square degrees.
    pub area_threshold: f64,
    pub max_vertices: usize,
    /// Lowest tier kept.
    pub tier_cutoff: Tier,
    pub max_primitives_per_object: usize,
    pub max_primitives_per_park: usize,
    /// Largest acceptable symmetric difference, as a fraction of the
    /// source polygon area.
    pub mosaic_error: f64,
    /// Default cell pitch, meters.
    pub cell_size: f64,
}

impl ResolutionPolicy {
    pub fn metro() -> Self {
        ResolutionPolicy {
            scale: Scale::Metro,
            dp_tolerance: 1e-4,
            chaikin_iterations: 1,
            area_threshold: 2.5e-6,
            max_vertices: 64,
            tier_cutoff: Tier::Contextual,
            max_primitives_per_object: 8,
            max_primitives_per_park: 20,
            mosaic_error: 0.1,
            cell_size: 50.0,
        }
    }

    pub fn zoom() -> Self {
        ResolutionPolicy {
            scale: Scale::Zoom,
            dp_tolerance: 1e-5,
            chaikin_iterations: 2,
            area_threshold: 2.5e-9,
            max_vertices: 256,
            tier_cutoff: Tier::Contextual,
            max_primitives_per_object: 8,
            max_primitives_per_park: 20,
            mosaic_error: 0.1,
            cell_size: 5.0,
        }
    }

    pub fn for_scale(scale: Scale) -> Self {
        match scale {
            Scale::Metro => Self::metro(),
            Scale::Zoom => Self::zoom(),
        }
    }

    pub fn validate(&self) -> Result<(), String> {
        if !(self.dp_tolerance > 0.0 && self.dp_tolerance.is_finite()) {
            return Err("dp_tolerance must be positive".into());
        }
        if !(self.area_threshold >= 0.0 && self.area_threshold.is_finite()) {
            return Err("area_threshold must be non-negative".into());
        }
        if self.max_vertices < 4 {
            return Err("max_vertices must be at least 4".into());
        }
        if self.max_primitives_per_object == 0 || self.max_primitives_per_park == 0 {
            return Err("primitive budgets must be positive".into());
        }
        if !(self.mosaic_error >= 0.0 && self.mosaic_error.is_finite()) {
            return Err("mosaic_error must be non-negative".into());
        }
        if !(self.cell_size > 0.0 && self.cell_size.is_finite()) {
            return Err("cell_size must be positive".into());
        }
        if self.tier_cutoff == Tier::Discard {
            return Err("tier_cutoff cannot keep discard-tier features".into());
        }
        Ok(())
    }

    /// Tier under this policy. Metro views drop minor paths entirely.
    pub fn tier_of(&self, class: Class) -> Tier {
        let base = class.base_tier();
        if self.scale == Scale::Metro && class == Class::Path {
            Tier::Discard
        } else {
            base
        }
    }

    pub fn keeps(&self, tier: Tier) -> bool {
        tier != Tier::Discard && tier <= self.tier_cutoff
    }

    pub fn primitive_budget(&self, class: Class) -> usize {
        if class == Class::Park {
            self.max_primitives_per_park
        } else {
            self.max_primitives_per_object
        }
    }
}

/// Geographic bounding box.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BBox {
    pub west: f64,
    pub south: f64,
    pub east: f64,
    pub north: f64,
}

impl BBox {
    pub fn new(west: f64, south: f64, east: f64, north: f64) -> Result<Self, String> {
        let b = BBox {
            west,
            south,
            east,
            north,
        };
        if ![west, south, east, north].iter().all(|v| v.is_finite()) {
            return Err("bounding box values must be finite".into());
        }
        if !(-180.0..=180.0).contains(&west) || !(-180.0..=180.0).contains(&east) {
            return Err("longitudes must lie in [-180, 180]".into());
        }
        if !(-90.0..=90.0).contains(&south) || !(-90.0..=90.0).contains(&north) {
            return Err("latitudes must lie in [-90, 90]".into());
        }
        if west > east || south > north {
            return Err("bounding box must be given as W,S,E,N with W <= E and S <= N".into());
        }
        Ok(b)
    }

    pub fn contains(&self, p: LonLat) -> bool {
        p[0] >= self.west && p[0] <= self.east && p[1] >= self.south && p[1] <= self.north
    }

    pub fn is_empty(&self) -> bool {
        self.west >= self.east || self.south >= self.north
    }

    pub fn center(&self) -> LonLat {
        [
            (self.west + self.east) / 2.0,
            (self.south + self.north) / 2.0,
        ]
    }
}

impl std::str::FromStr for BBox {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<f64> = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<f64>()
                    .map_err(|e| format!("bad bbox value `{p}`: {e}"))
            })
            .collect::<Result<_, _>>()?;
        match parts[..] {
            [w, s, e, n] => BBox::new(w, s, e, n),
            _ => Err(format!(
                "bbox needs four values W,S,E,N, got {}",
                parts.len()
            )),
        }
    }
}
