//! Douglas-Peucker reduction and Chaikin corner cutting.

use crate::model::{FeatureKind, LonLat, RawFeature, ResolutionPolicy};

/// Distance from `p` to the closed segment `ab`.
pub fn segment_distance(p: LonLat, a: LonLat, b: LonLat) -> f64 {
    let (dx, dy) = (b[0] - a[0], b[1] - a[1]);
    let len2 = dx * dx + dy * dy;
    let t = if len2 == 0.0 {
        0.0
    } else {
        (((p[0] - a[0]) * dx + (p[1] - a[1]) * dy) / len2).clamp(0.0, 1.0)
    };
    let (cx, cy) = (a[0] + t * dx, a[1] + t * dy);
    (p[0] - cx).hypot(p[1] - cy)
}

/// Indices kept by Douglas-Peucker; always includes both endpoints.
pub fn douglas_peucker_indices(line: &[LonLat], tolerance: f64) -> Vec<usize> {
    let n = line.len();
    if n <= 2 {
        return (0..n).collect();
    }
    let mut keep = vec![false; n];
    keep[0] = true;
    keep[n - 1] = true;
    let mut stack = vec![(0, n - 1)];
    while let Some((lo, hi)) = stack.pop() {
        let mut worst = (0, 0.0);
        for i in lo + 1..hi {
            let d = segment_distance(line[i], line[lo], line[hi]);
            if d > worst.1 {
                worst = (i, d);
            }
        }
        if worst.1 > tolerance {
            keep[worst.0] = true;
            stack.push((lo, worst.0));
            stack.push((worst.0, hi));
        }
    }
    (0..n).filter(|&i| keep[i]).collect()
}

pub fn douglas_peucker(line: &[LonLat], tolerance: f64) -> Vec<LonLat> {
    douglas_peucker_indices(line, tolerance)
        .into_iter()
        .map(|i| line[i])
        .collect()
}

fn lerp(a: LonLat, b: LonLat, t: f64) -> LonLat {
    [a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])]
}

/// Open-line corner cutting. Endpoints stay; each interior vertex is
/// replaced by the 3/4 and 1/4 points of its two segments, so `n` points
/// become `2n - 2`.
pub fn chaikin(line: &[LonLat], iterations: u32) -> Vec<LonLat> {
    let mut cur = line.to_vec();
    for _ in 0..iterations {
        let n = cur.len();
        if n < 3 {
            break;
        }
        let mut next = Vec::with_capacity(2 * n - 2);
        next.push(cur[0]);
        for i in 0..n - 1 {
            if i > 0 {
                next.push(lerp(cur[i], cur[i + 1], 0.25));
            }
            if i + 2 < n {
                next.push(lerp(cur[i], cur[i + 1], 0.75));
            }
        }
        next.push(cur[n - 1]);
        cur = next;
    }
    cur
}

/// Closed-ring corner cutting; `m` distinct vertices become `2m`. Input
/// and output repeat the first vertex at the end.
pub fn chaikin_closed(ring: &[LonLat], iterations: u32) -> Vec<LonLat> {
    let mut cur: Vec<LonLat> = ring[..ring.len().saturating_sub(1)].to_vec();
    for _ in 0..iterations {
        let m = cur.len();
        if m < 3 {
            break;
        }
        let mut next = Vec::with_capacity(2 * m);
        for i in 0..m {
            let (a, b) = (cur[i], cur[(i + 1) % m]);
            next.push(lerp(a, b, 0.25));
            next.push(lerp(a, b, 0.75));
        }
        cur = next;
    }
    if let Some(&first) = cur.first() {
        cur.push(first);
    }
    cur
}

/// Vertex count after `k` rounds of smoothing a line of `n` vertices.
fn smoothed_len(kind: FeatureKind, n: usize, k: u32) -> usize {
    match kind {
        FeatureKind::Node => n,
        FeatureKind::Polyline if n < 3 => n,
        FeatureKind::Polyline => ((n - 2) << k) + 2,
        FeatureKind::Polygon => ((n - 1) << k) + 1,
    }
}

/// Douglas-Peucker followed by Chaikin. Smoothing rounds are dropped as
/// needed so the result never has more vertices than the input.
pub fn simplify_feature(feature: &RawFeature, policy: &ResolutionPolicy) -> RawFeature {
    let n = feature.coords.len();
    let reduced = match feature.kind {
        FeatureKind::Node => return feature.clone(),
        FeatureKind::Polyline => douglas_peucker(&feature.coords, policy.dp_tolerance),
        FeatureKind::Polygon => {
            let r = douglas_peucker(&feature.coords, policy.dp_tolerance);
            if r.len() < 4 {
                feature.coords.clone()
            } else {
                r
            }
        }
    };
    let rounds = (0..=policy.chaikin_iterations)
        .rev()
        .find(|&k| smoothed_len(feature.kind, reduced.len(), k) <= n)
        .unwrap_or(0);
    let coords = match feature.kind {
        FeatureKind::Polygon => chaikin_closed(&reduced, rounds),
        _ => chaikin(&reduced, rounds),
    };
    RawFeature {
        coords,
        ..feature.clone()
    }
}
