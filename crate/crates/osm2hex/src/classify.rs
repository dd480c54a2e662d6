use crate::model::{Class, FeatureClass, FeatureKind, RawFeature};

const HIGHWAYS: [&str; 6] = [
    "motorway",
    "motorway_link",
    "trunk",
    "trunk_link",
    "primary",
    "primary_link",
];
const ARTERIALS: [&str; 4] = ["secondary", "secondary_link", "tertiary", "tertiary_link"];
const PATHS: [&str; 12] = [
    "residential",
    "unclassified",
    "living_street",
    "service",
    "pedestrian",
    "footway",
    "cycleway",
    "path",
    "steps",
    "track",
    "bridleway",
    "road",
];
const PARKS: [&str; 5] = [
    "park",
    "garden",
    "playground",
    "nature_reserve",
    "recreation_ground",
];
const GREEN_LANDUSE: [&str; 5] = [
    "grass",
    "forest",
    "meadow",
    "recreation_ground",
    "village_green",
];
const LANDMARK_TOURISM: [&str; 5] = ["attraction", "museum", "artwork", "viewpoint", "gallery"];
const LANDMARK_MAN_MADE: [&str; 3] = ["tower", "lighthouse", "bridge"];

/// Class from the tag set, first match wins; the tier is the class's
/// base tier (policies may demote it, see
/// [`ResolutionPolicy::tier_of`](crate::ResolutionPolicy::tier_of)).
pub fn classify(feature: &RawFeature) -> FeatureClass {
    let class = class_of(feature);
    FeatureClass {
        class,
        tier: class.base_tier(),
    }
}

fn class_of(f: &RawFeature) -> Class {
    let tag = |k: &str| f.tag(k);
    let line = f.kind == FeatureKind::Polyline;
    if line && matches!(tag("waterway"), Some("river")) {
        return Class::River;
    }
    if let Some(h) = tag("highway") {
        if f.kind != FeatureKind::Node {
            if HIGHWAYS.contains(&h) {
                return Class::Highway;
            }
            if ARTERIALS.contains(&h) {
                return Class::Arterial;
            }
            if PATHS.contains(&h) {
                return Class::Path;
            }
        }
    }
    if tag("historic").is_some()
        || tag("tourism").is_some_and(|t| LANDMARK_TOURISM.contains(&t))
        || tag("man_made").is_some_and(|t| LANDMARK_MAN_MADE.contains(&t))
        || tag("amenity") == Some("place_of_worship")
    {
        return Class::Landmark;
    }
    if f.kind == FeatureKind::Polygon {
        if tag("building").is_some() {
            return Class::Building;
        }
        if tag("leisure").is_some_and(|t| PARKS.contains(&t))
            || tag("landuse").is_some_and(|t| GREEN_LANDUSE.contains(&t))
        {
            return Class::Park;
        }
        if tag("natural") == Some("water")
            || tag("waterway") == Some("riverbank")
            || tag("landuse") == Some("reservoir")
            || tag("water").is_some()
        {
            return Class::Water;
        }
    }
    Class::Other
}
