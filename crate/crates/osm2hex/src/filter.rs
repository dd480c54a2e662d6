use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::model::{Class, Classified, FeatureKind, LonLat, ResolutionPolicy, Tier};
use crate::simplify::{douglas_peucker, segment_distance};

/// What the filter stage removed or changed.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FilterStats {
    /// River fragments absorbed into a neighbour.
    pub merged_fragments: usize,
    pub dropped_by_tier: usize,
    pub dropped_by_area: usize,
    /// Features re-simplified to respect the vertex cap.
    pub vertex_capped: usize,
}

/// Signed shoelace area; positive when counterclockwise. Works on open and
/// closed rings.
pub fn ring_area(ring: &[LonLat]) -> f64 {
    let n = ring.len();
    let twice: f64 = (0..n)
        .map(|i| {
            let (a, b) = (ring[i], ring[(i + 1) % n]);
            a[0] * b[1] - b[0] * a[1]
        })
        .sum();
    twice / 2.0
}

fn dist(a: LonLat, b: LonLat) -> f64 {
    (a[0] - b[0]).hypot(a[1] - b[1])
}

/// Appends `b` to `a` when an endpoint of one lies within `tol` of an
/// endpoint of the other; the shared endpoint appears once.
fn try_join(a: &[LonLat], b: &[LonLat], tol: f64) -> Option<Vec<LonLat>> {
    let (a0, a1) = (a[0], a[a.len() - 1]);
    let (b0, b1) = (b[0], b[b.len() - 1]);
    let rev = |v: &[LonLat]| v.iter().rev().copied().collect::<Vec<_>>();
    let (first, second) = if dist(a1, b0) <= tol {
        (a.to_vec(), b.to_vec())
    } else if dist(a1, b1) <= tol {
        (a.to_vec(), rev(b))
    } else if dist(a0, b1) <= tol {
        (b.to_vec(), a.to_vec())
    } else if dist(a0, b0) <= tol {
        (rev(b), a.to_vec())
    } else {
        return None;
    };
    let mut out = first;
    out.extend_from_slice(&second[1..]);
    Some(out)
}

/// Joins named river polylines end to end. The merged feature keeps the
/// smallest id of its fragments.
pub fn merge_rivers(features: Vec<Classified>, tol: f64) -> (Vec<Classified>, usize) {
    let mut groups: BTreeMap<String, Vec<Classified>> = BTreeMap::new();
    let mut out = Vec::with_capacity(features.len());
    for f in features {
        let name = f.feature.tag("name").map(str::to_owned);
        match name {
            Some(name)
                if f.class.class == Class::River && f.feature.kind == FeatureKind::Polyline =>
            {
                groups.entry(name).or_default().push(f)
            }
            _ => out.push(f),
        }
    }
    let mut absorbed = 0;
    for (_, mut frags) in groups {
        frags.sort_by_key(|f| f.feature.id);
        let mut done: Vec<Classified> = Vec::new();
        while let Some(mut cur) = (!frags.is_empty()).then(|| frags.remove(0)) {
            loop {
                let hit = frags.iter().enumerate().find_map(|(i, other)| {
                    try_join(&cur.feature.coords, &other.feature.coords, tol).map(|c| (i, c))
                });
                let Some((i, coords)) = hit else { break };
                let other = frags.remove(i);
                cur.feature.id = cur.feature.id.min(other.feature.id);
                cur.feature.coords = coords;
                absorbed += 1;
            }
            done.push(cur);
        }
        out.extend(done);
    }
    out.sort_by_key(|f| (f.feature.id, f.feature.kind));
    (out, absorbed)
}

/// Largest triangle anchored at the first vertex: a ring of four
/// coordinates that stands in for a polygon DP cannot keep valid.
fn fallback_triangle(ring: &[LonLat]) -> Vec<LonLat> {
    let v0 = ring[0];
    let far = |from: &dyn Fn(LonLat) -> f64| {
        ring.iter()
            .copied()
            .max_by(|a, b| from(*a).total_cmp(&from(*b)))
            .expect("non-empty ring")
    };
    let vk = far(&|p| dist(p, v0));
    let vj = far(&|p| segment_distance(p, v0, vk));
    vec![v0, vk, vj, v0]
}

/// Re-runs Douglas-Peucker with doubling tolerance until the vertex count
/// fits.
pub fn cap_vertices(
    coords: &[LonLat],
    kind: FeatureKind,
    max_vertices: usize,
    tolerance: f64,
) -> Vec<LonLat> {
    if coords.len() <= max_vertices || kind == FeatureKind::Node {
        return coords.to_vec();
    }
    let mut tol = tolerance;
    loop {
        tol *= 2.0;
        let r = douglas_peucker(coords, tol);
        if kind == FeatureKind::Polygon && r.len() < 4 {
            return fallback_triangle(coords);
        }
        if r.len() <= max_vertices {
            return r;
        }
    }
}

/// Retiers under `policy`, merges river fragments, then drops features by
/// tier and area and caps vertex counts. Identity-tier features are never
/// removed.
pub fn filter_features(
    features: Vec<Classified>,
    policy: &ResolutionPolicy,
) -> (Vec<Classified>, FilterStats) {
    let mut stats = FilterStats::default();
    let features: Vec<Classified> = features
        .into_iter()
        .map(|mut f| {
            f.class.tier = policy.tier_of(f.class.class);
            f
        })
        .collect();
    let (merged, absorbed) = merge_rivers(features, 2.0 * policy.dp_tolerance);
    stats.merged_fragments = absorbed;
    let mut kept = Vec::with_capacity(merged.len());
    for mut f in merged {
        let tier = f.class.tier;
        if !policy.keeps(tier) {
            stats.dropped_by_tier += 1;
            continue;
        }
        if tier != Tier::Identity
            && f.feature.kind == FeatureKind::Polygon
            && ring_area(&f.feature.coords).abs() < policy.area_threshold
        {
            stats.dropped_by_area += 1;
            continue;
        }
        if f.feature.coords.len() > policy.max_vertices {
            f.feature.coords = cap_vertices(
                &f.feature.coords,
                f.feature.kind,
                policy.max_vertices,
                policy.dp_tolerance,
            );
            stats.vertex_capped += 1;
        }
        kept.push(f);
    }
    (kept, stats)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{FeatureClass, RawFeature};

    fn classified(id: i64, kind: FeatureKind, class: Class, coords: Vec<LonLat>) -> Classified {
        Classified {
            feature: RawFeature {
                id,
                kind,
                coords,
                tags: Default::default(),
            },
            class: FeatureClass {
                class,
                tier: class.base_tier(),
            },
        }
    }

    fn square(id: i64, side: f64, class: Class) -> Classified {
        let c = vec![
            [0.0, 0.0],
            [side, 0.0],
            [side, side],
            [0.0, side],
            [0.0, 0.0],
        ];
        classified(id, FeatureKind::Polygon, class, c)
    }

    #[test]
    fn small_polygon_removed_under_metro() {
        let policy = ResolutionPolicy::metro();
        let (kept, stats) = filter_features(vec![square(1, 1e-3, Class::Building)], &policy);
        assert!(kept.is_empty());
        assert_eq!(stats.dropped_by_area, 1);
        let (kept, _) = filter_features(vec![square(1, 2e-3, Class::Building)], &policy);
        assert_eq!(kept.len(), 1);
    }

    #[test]
    fn identity_survives_any_policy() {
        let mut strict = ResolutionPolicy::metro();
        strict.area_threshold = 1e9;
        strict.tier_cutoff = Tier::Identity;
        let river = classified(
            2,
            FeatureKind::Polyline,
            Class::River,
            vec![[0.0, 0.0], [1.0, 1.0]],
        );
        let (kept, _) = filter_features(vec![river, square(3, 1.0, Class::Park)], &strict);
        assert_eq!(kept.len(), 1);
        assert_eq!(kept[0].class.tier, Tier::Identity);
    }

    #[test]
    fn paths_discarded_under_metro_only() {
        let path = classified(
            4,
            FeatureKind::Polyline,
            Class::Path,
            vec![[0.0, 0.0], [1.0, 0.0]],
        );
        let (kept, _) = filter_features(vec![path.clone()], &ResolutionPolicy::metro());
        assert!(kept.is_empty());
        let (kept, _) = filter_features(vec![path], &ResolutionPolicy::zoom());
        assert_eq!(kept.len(), 1);
    }

    #[test]
    fn river_fragments_merge_by_name() {
        let mut frags = vec![
            classified(
                9,
                FeatureKind::Polyline,
                Class::River,
                vec![[2.0, 0.0], [1.0, 0.0]],
            ),
            classified(
                5,
                FeatureKind::Polyline,
                Class::River,
                vec![[0.0, 0.0], [1.0, 0.0]],
            ),
            classified(
                7,
                FeatureKind::Polyline,
                Class::River,
                vec![[2.0, 0.0], [3.0, 0.0]],
            ),
            classified(
                8,
                FeatureKind::Polyline,
                Class::River,
                vec![[9.0, 0.0], [9.5, 0.0]],
            ),
        ];
        for f in &mut frags[..3] {
            f.feature.tags.insert("name".into(), "Vantaa".into());
        }
        let (out, absorbed) = merge_rivers(frags, 1e-9);
        assert_eq!(absorbed, 2);
        assert_eq!(out.len(), 2);
        assert_eq!(out[0].feature.id, 5);
        assert_eq!(
            out[0].feature.coords,
            vec![[0.0, 0.0], [1.0, 0.0], [2.0, 0.0], [3.0, 0.0]]
        );
    }

    #[test]
    fn vertex_cap_respected() {
        let mut ring: Vec<LonLat> = (0..100)
            .map(|i| {
                let t = i as f64 / 100.0 * std::f64::consts::TAU;
                [t.cos(), t.sin()]
            })
            .collect();
        ring.push(ring[0]);
        let capped = cap_vertices(&ring, FeatureKind::Polygon, 10, 1e-6);
        assert!(capped.len() <= 10 && capped.len() >= 4);
        assert_eq!(capped.first(), capped.last());
    }
}
