//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs as a plain binary (`harness = false`) so the report is printed on
//! every `cargo test`. Exits nonzero if any criterion fails.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fs::File;
use std::io::{BufReader, Cursor};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use flate2::read::GzDecoder;
use neurohex::hexcore::{
    coarsen, decode_ring, disc_cells, distance, encode_ring, refine, rotate_point, Alu, HexCoord,
    OpClass, Quantization, QuantizedAngle,
};
use neurohex::oracle::{
    cart_rotate_cw, check_agreement, hex_to_plane, measure, plane_to_hex, Engine, OpCounter,
    Operation, Workload,
};
use neurohex::shapes::{Foundational, HexPolygon, Shape, ShapeDocument, SimpleShape};
use osm2hex::simplify::{chaikin, douglas_peucker_indices};
use osm2hex::{
    classify, parse_osm, read_model, run_pipeline, BBox, LonLat, Model, PipelineConfig,
    PipelineOutput, ResolutionPolicy, Tier,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const Q: Quantization = Quantization::DEFAULT;

// Pinned tolerances.
const BIJECTION_TIME: Duration = Duration::from_secs(1);
const INPUT_BITS: u32 = 16;
const HEXCORE_MAX_BITS: u32 = INPUT_BITS + 6;
const CARTESIAN_MIN_BITS: u32 = 31;
const BOUNDARY_BAND: f64 = 2.0;
const SHAPE_INSTANCES: usize = 240;
const DP_TOLERANCE_SLACK: f64 = 1e-12;
const MIN_FEATURES: usize = 5_000;
const REDUCTION_RANGE: (f64, f64) = (0.90, 0.995);
const METRO_EXTRACT_BYTES: f64 = 50e6;
const METRO_TIME_LIMIT: Duration = Duration::from_secs(120);

const MINI_BBOX: &str = "24.930,60.160,24.950,60.175";
const HELSINKI_BBOX: &str = "24.9351766,60.1641551,24.9534132,60.1791074";

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../osm2hex/tests/data")
        .join(name)
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_neurohex"))
}

fn random_cell(rng: &mut impl Rng, radius: i64) -> HexCoord {
    loop {
        let q = rng.gen_range(-radius..=radius);
        let r = rng.gen_range(-radius..=radius);
        if (q + r).abs() <= radius {
            return HexCoord::from_axial(q, r);
        }
    }
}

fn random_angle(rng: &mut impl Rng) -> QuantizedAngle {
    QuantizedAngle::new(rng.gen_range(0..Q.full_turn()), Q).unwrap()
}

fn c1_bijection() -> Outcome {
    let start = Instant::now();
    let cells = disc_cells(64);
    ensure(cells.len() == 12_481, || {
        format!("{} cells in the RI <= 64 disc", cells.len())
    })?;
    for &c in &cells {
        let back = decode_ring(encode_ring(c));
        ensure(back == c, || format!("{c} decoded as {back}"))?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < BIJECTION_TIME, || format!("took {elapsed:?}"))?;
    Ok(format!("{} cells exact in {elapsed:.2?}", cells.len()))
}

fn c2_distance() -> Outcome {
    let cells = disc_cells(8);
    let mut pairs = 0;
    for &a in &cells {
        let mut hops = HashMap::from([(a, 0u64)]);
        let mut queue = VecDeque::from([a]);
        while let Some(c) = queue.pop_front() {
            let d = hops[&c];
            for n in c.neighbors() {
                if n.radial_distance() <= 10 && !hops.contains_key(&n) {
                    hops.insert(n, d + 1);
                    queue.push_back(n);
                }
            }
        }
        for &b in &cells {
            ensure(distance(a, b) == hops[&b], || {
                format!("d({a}, {b}) = {} vs {} hops", distance(a, b), hops[&b])
            })?;
            pairs += 1;
        }
    }
    Ok(format!("{} cells, {pairs} pairs exact", cells.len()))
}

fn c3_rotation() -> Outcome {
    let step = QuantizedAngle::sextants(1, Q);
    let cells = disc_cells(32);
    for &c in &cells {
        let mut p = c;
        for k in 1..=6u32 {
            p = rotate_point(p, step);
            ensure(p.radial_distance() == c.radial_distance(), || {
                format!("{c} changed radius")
            })?;
            let theta = k as f64 * std::f64::consts::FRAC_PI_3;
            let want = plane_to_hex(cart_rotate_cw(hex_to_plane(c), theta));
            ensure(p == want, || {
                format!("{c} by {k} sextants: {p} vs oracle {want}")
            })?;
        }
        ensure(p == c, || format!("six steps moved {c} to {p}"))?;
        for v in 0..Q.full_turn() {
            let a = QuantizedAngle::new(v, Q).unwrap();
            let r = rotate_point(c, a);
            ensure(r.radial_distance() == c.radial_distance(), || {
                format!("{c} by {v}: radius changed")
            })?;
        }
    }
    Ok(format!(
        "{} cells, 6-step identity, radii preserved, oracle match",
        cells.len()
    ))
}

fn workload() -> Workload {
    Workload::random(2_000, INPUT_BITS, Q, 42)
}

fn c4_rotation_cost() -> Outcome {
    let w = workload();
    let hex = measure(Operation::PointRotation, Engine::NeuroHex, &w);
    let cart = measure(Operation::PointRotation, Engine::Cartesian, &w);
    ensure(
        hex.muls <= 1 && hex.adds <= 4 && hex.trig_calls == 0,
        || format!("neurohex {hex:?}"),
    )?;
    ensure(cart.trig_calls >= 2, || format!("cartesian {cart:?}"))?;
    Ok(format!(
        "neurohex {} adds {} mul; cartesian {} trig",
        hex.adds, hex.muls, cart.trig_calls
    ))
}

fn c5_bit_width() -> Outcome {
    let w = workload();
    let mut widest = (0, "");
    for op in Operation::ALL.into_iter().filter(|op| op.is_hexcore_op()) {
        let c = measure(op, Engine::NeuroHex, &w);
        ensure(c.max_bit_width <= HEXCORE_MAX_BITS, || {
            format!("{} uses {} bits", op.name(), c.max_bit_width)
        })?;
        if c.max_bit_width > widest.0 {
            widest = (c.max_bit_width, op.name());
        }
    }
    let cart = measure(Operation::Distance, Engine::Cartesian, &w);
    ensure(cart.max_bit_width >= CARTESIAN_MIN_BITS, || {
        format!("cartesian distance {} bits", cart.max_bit_width)
    })?;
    Ok(format!(
        "hexcore max {} bits ({}), cartesian distance {} bits",
        widest.0, widest.1, cart.max_bit_width
    ))
}

fn c6_tiling() -> Outcome {
    let cells = disc_cells(32);
    let mut report = Vec::new();
    for k in [2i64, 4] {
        let mut tiles: BTreeMap<HexCoord, usize> = BTreeMap::new();
        for &c in &cells {
            *tiles
                .entry(coarsen(c, k).map_err(|e| e.to_string())?)
                .or_default() += 1;
        }
        ensure(tiles.values().sum::<usize>() == cells.len(), || {
            "cells lost".into()
        })?;
        let mut complete = 0;
        for (&centre, &n) in &tiles {
            let [q, r, s] = centre.components();
            ensure(q + r + s == 0, || {
                format!("tile centre {centre} breaks zero sum")
            })?;
            let fine = refine(centre, k).map_err(|e| e.to_string())?;
            if fine.radial_distance() + 2 * k as u64 <= 32 {
                ensure(n as i64 == k * k, || {
                    format!("k={k}: tile {centre} has {n} cells")
                })?;
                complete += 1;
            }
        }
        report.push(format!(
            "k={k}: {} tiles, {complete} interior of {} cells",
            tiles.len(),
            k * k
        ));
    }
    Ok(report.join("; "))
}

fn cross(o: HexCoord, a: HexCoord, b: HexCoord) -> i64 {
    (a.q() - o.q()) * (b.r() - o.r()) - (a.r() - o.r()) * (b.q() - o.q())
}

fn convex_hull(mut pts: Vec<HexCoord>) -> Vec<HexCoord> {
    pts.sort_by_key(|p| (p.q(), p.r()));
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut hull: Vec<HexCoord> = Vec::new();
    for pass in [pts.clone(), pts.into_iter().rev().collect()] {
        let base = hull.len();
        for p in pass {
            while hull.len() >= base + 2
                && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0
            {
                hull.pop();
            }
            hull.push(p);
        }
        hull.pop();
    }
    hull
}

fn random_shape(rng: &mut impl Rng, kind: usize) -> Option<Shape> {
    let anchor = random_cell(rng, 8);
    Some(match kind {
        0 => Foundational::wedge(
            anchor,
            rng.gen_range(1..=32),
            random_angle(rng),
            random_angle(rng),
        )
        .ok()?
        .into(),
        1 => {
            let (b, c) = (anchor + random_cell(rng, 16), anchor + random_cell(rng, 16));
            if cross(anchor, b, c) == 0 {
                return None;
            }
            SimpleShape::triangle(anchor, b, c, Q).ok()?.into()
        }
        2 => {
            let pts = (0..rng.gen_range(3..10))
                .map(|_| anchor + random_cell(rng, 14))
                .collect();
            HexPolygon::new(convex_hull(pts), Q).ok()?.into()
        }
        3 => Foundational::disc(anchor, rng.gen_range(0..=32)).into(),
        4 => {
            let outer = rng.gen_range(2..=32);
            let inner = rng.gen_range(0..outer);
            Shape::so(
                Foundational::disc(anchor, outer),
                Foundational::disc(anchor, inner),
            )
        }
        _ => {
            let big = Foundational::disc(anchor, rng.gen_range(3..=20));
            let tip: Shape = Foundational::wedge(
                anchor,
                rng.gen_range(4..=32),
                random_angle(rng),
                random_angle(rng),
            )
            .ok()?
            .into();
            if rng.gen_bool(0.5) {
                Shape::union(big, tip)
            } else {
                Shape::ao(big, tip)
            }
        }
    })
}

fn random_shapes(seed: u64, count: usize) -> Vec<(usize, Shape)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let kind = out.len() % 6;
        if let Some(s) = random_shape(&mut rng, kind) {
            out.push((kind, s));
        }
    }
    out
}

fn c7_membership() -> Outcome {
    let (mut compared, mut excluded) = (0, 0);
    let shapes = random_shapes(2024, SHAPE_INSTANCES);
    for (kind, shape) in &shapes {
        let a = check_agreement(shape, BOUNDARY_BAND);
        ensure(a.is_exact(), || {
            format!(
                "kind {kind}: {} mismatches in {shape:?}",
                a.mismatches.len()
            )
        })?;
        compared += a.compared;
        excluded += a.excluded;
    }
    Ok(format!(
        "{} shapes, {compared} cells agree, {excluded} in boundary band",
        shapes.len()
    ))
}

fn c8_polygon_cost() -> Outcome {
    for n in 3..=12usize {
        let verts: Vec<HexCoord> = (0..n)
            .map(|k| {
                let a = QuantizedAngle::new((k as u32 * Q.full_turn()) / n as u32, Q).unwrap();
                neurohex::hexcore::from_polar(24, a)
            })
            .collect();
        let poly = HexPolygon::new(verts, Q).map_err(|e| e.to_string())?;
        ensure(poly.is_convex(), || format!("{n}-gon is not convex"))?;
        for p in disc_cells(30).into_iter().step_by(5) {
            let mut c = OpCounter::default();
            poly.contains_with(p, &mut c);
            ensure(c.predicates == n as u64, || {
                format!("{n}-gon at {p}: {} predicates", c.predicates)
            })?;
        }
    }
    // the counter sees every predicate the polygon evaluates
    struct Tally(u64);
    impl Alu for Tally {
        fn record(&mut self, class: OpClass, _: i64) {
            self.0 += (class == OpClass::Predicate) as u64;
        }
    }
    let square = HexPolygon::new(
        vec![
            HexCoord::from_axial(0, 0),
            HexCoord::from_axial(8, 0),
            HexCoord::from_axial(8, -8),
            HexCoord::from_axial(0, -8),
        ],
        Q,
    )
    .map_err(|e| e.to_string())?;
    let mut t = Tally(0);
    square.contains_with(HexCoord::from_axial(3, -3), &mut t);
    ensure(t.0 == 4, || format!("4-gon: {} predicates", t.0))?;
    Ok("n orientation predicates for every convex n-gon, n = 3..12".into())
}

fn point_segment(p: LonLat, a: LonLat, b: LonLat) -> f64 {
    let (dx, dy) = (b[0] - a[0], b[1] - a[1]);
    let len2 = dx * dx + dy * dy;
    let t = if len2 == 0.0 {
        0.0
    } else {
        (((p[0] - a[0]) * dx + (p[1] - a[1]) * dy) / len2).clamp(0.0, 1.0)
    };
    (p[0] - a[0] - t * dx).hypot(p[1] - a[1] - t * dy)
}

fn c9_dp_chaikin() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut removed = 0;
    for _ in 0..1_000 {
        let n = rng.gen_range(2..50);
        let line: Vec<LonLat> = (0..n)
            .map(|_| [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)])
            .collect();
        let tol = rng.gen_range(0.01..0.5);
        let kept = douglas_peucker_indices(&line, tol);
        ensure(
            kept.first() == Some(&0) && kept.last() == Some(&(n - 1)),
            || "endpoint dropped".into(),
        )?;
        for w in kept.windows(2) {
            for i in w[0] + 1..w[1] {
                let d = point_segment(line[i], line[w[0]], line[w[1]]);
                ensure(d <= tol + DP_TOLERANCE_SLACK, || {
                    format!("vertex {i} deviates {d} > {tol}")
                })?;
                removed += 1;
            }
        }
        if n >= 3 {
            let mut len = n;
            for k in 1..=4 {
                let out = chaikin(&line, k);
                ensure(out.len() == 2 * len - 2, || {
                    format!("chaikin {len} -> {}", out.len())
                })?;
                len = out.len();
            }
        }
    }
    Ok(format!(
        "1000 polylines, {removed} removed vertices within tolerance; chaikin 2n-2"
    ))
}

fn object_line(o: &osm2hex::MosaicObject) -> String {
    let name = |v: serde_json::Value| v.as_str().unwrap_or_default().to_owned();
    let kinds: Vec<String> = o
        .primitives
        .iter()
        .map(|p| name(serde_json::to_value(p.kind).unwrap()))
        .collect();
    format!(
        "{} {} {} {} {}",
        o.source_id,
        name(serde_json::to_value(o.kind).unwrap()),
        o.class.name(),
        o.tier.name(),
        kinds.join("+")
    )
}

fn fixture_summary(model: &Model) -> Result<String, String> {
    let h = model.header.as_ref().ok_or("model has no header")?;
    let s = &h.stats;
    let mut text = String::from("{\n");
    text += &format!("  \"bbox\": {},\n", serde_json::json!(MINI_BBOX));
    text += &format!(
        "  \"policy\": \"{}\",\n",
        format!("{:?}", h.policy.scale).to_lowercase()
    );
    for (k, v) in [
        ("raw_geometry_count", s.raw_geometry_count),
        ("raw_vertex_count", s.raw_vertex_count),
        (
            "post_simplification_feature_count",
            s.post_simplification_feature_count,
        ),
        (
            "post_simplification_vertex_count",
            s.post_simplification_vertex_count,
        ),
        ("kept_object_count", s.kept_object_count),
        ("kept_vertex_count", s.kept_vertex_count),
        ("primitive_count", s.primitive_count),
    ] {
        text += &format!("  \"{k}\": {v},\n");
    }
    let objects: Vec<String> = model
        .objects
        .iter()
        .map(|o| format!("    {}", serde_json::json!(object_line(o))))
        .collect();
    text += &format!("  \"objects\": [\n{}\n  ]\n}}\n", objects.join(",\n"));
    Ok(text)
}

fn convert_mini(dir: &Path, name: &str) -> Result<PathBuf, String> {
    let out = dir.join(format!("{name}.model.ndjson"));
    let status = bin()
        .args([
            "convert",
            data("mini.osm").to_str().unwrap(),
            "--bbox",
            MINI_BBOX,
            "--policy",
            "zoom",
            "--out",
        ])
        .arg(&out)
        .status()
        .map_err(|e| e.to_string())?;
    ensure(status.success(), || format!("convert exited with {status}"))?;
    Ok(out)
}

fn c10_fixture() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let out = convert_mini(dir.path(), "mini")?;
    let model = read_model(BufReader::new(File::open(&out).map_err(|e| e.to_string())?))
        .map_err(|e| e.to_string())?;
    let got = fixture_summary(&model)?;
    let want = std::fs::read_to_string(data("mini.expected.json")).map_err(|e| e.to_string())?;
    ensure(got == want, || format!("summary differs:\n{got}"))?;
    ensure(dir.path().join("mini.stats.json").exists(), || {
        "stats file missing".into()
    })?;
    Ok(format!("{} bytes identical", want.len()))
}

fn run_helsinki(policy: ResolutionPolicy) -> Result<(PipelineOutput, Duration), String> {
    let bbox: BBox = HELSINKI_BBOX.parse()?;
    let gz = File::open(data("helsinki.osm.gz")).map_err(|e| e.to_string())?;
    let start = Instant::now();
    let out = run_pipeline(
        BufReader::new(GzDecoder::new(gz)),
        &bbox,
        &PipelineConfig::new(policy),
    )
    .map_err(|e| e.to_string())?;
    Ok((out, start.elapsed()))
}

/// Identity-tier features in the input must all survive; per tier, the
/// coarser policy keeps no more objects than the finer one.
fn tier_dominance(
    metro: &PipelineOutput,
    zoom: &PipelineOutput,
    identity_ids: &[i64],
) -> Result<(), String> {
    for out in [metro, zoom] {
        for id in identity_ids {
            ensure(out.objects.iter().any(|o| o.source_id == *id), || {
                format!("identity feature {id} dropped")
            })?;
        }
    }
    for tier in Tier::KEPT {
        let (m, z) = (metro.stats.tiers.get(tier), zoom.stats.tiers.get(tier));
        ensure(m.objects <= z.objects, || {
            format!(
                "{} tier: metro {} > zoom {}",
                tier.name(),
                m.objects,
                z.objects
            )
        })?;
    }
    Ok(())
}

fn identity_ids(xml: impl std::io::BufRead, bbox: &BBox) -> Result<Vec<i64>, String> {
    let parsed = parse_osm(xml, bbox).map_err(|e| e.to_string())?;
    Ok(parsed
        .features
        .iter()
        .filter(|f| classify(f).tier == Tier::Identity)
        .map(|f| f.id)
        .collect())
}

fn c11_reduction() -> Outcome {
    let (metro, t_metro) = run_helsinki(ResolutionPolicy::metro())?;
    let (zoom, _) = run_helsinki(ResolutionPolicy::zoom())?;
    let s = &metro.stats;
    ensure(s.raw_geometry_count >= MIN_FEATURES, || {
        format!("only {} features", s.raw_geometry_count)
    })?;
    let ratio = s.ratios.primitive;
    ensure(
        (REDUCTION_RANGE.0..=REDUCTION_RANGE.1).contains(&ratio),
        || format!("metro reduction {ratio:.4}"),
    )?;
    ensure(
        metro.stats.is_monotone() && zoom.stats.is_monotone(),
        || "stage counts not monotone".into(),
    )?;

    let bbox: BBox = HELSINKI_BBOX.parse()?;
    let gz = File::open(data("helsinki.osm.gz")).map_err(|e| e.to_string())?;
    let ids = identity_ids(BufReader::new(GzDecoder::new(gz)), &bbox)?;
    tier_dominance(&metro, &zoom, &ids)?;
    // the extract has no identity features, so check survival on the fixture too
    let mini_bbox: BBox = MINI_BBOX.parse()?;
    let xml = std::fs::read_to_string(data("mini.osm")).map_err(|e| e.to_string())?;
    let mini_ids = identity_ids(Cursor::new(&xml), &mini_bbox)?;
    ensure(!mini_ids.is_empty(), || {
        "fixture lacks identity features".into()
    })?;
    let run = |p| {
        run_pipeline(Cursor::new(&xml), &mini_bbox, &PipelineConfig::new(p))
            .map_err(|e| e.to_string())
    };
    tier_dominance(
        &run(ResolutionPolicy::metro())?,
        &run(ResolutionPolicy::zoom())?,
        &mini_ids,
    )?;

    ensure(zoom.stats.primitive_count > s.primitive_count, || {
        format!(
            "zoom {} primitives vs metro {}",
            zoom.stats.primitive_count, s.primitive_count
        )
    })?;
    let xml_bytes = std::io::copy(
        &mut GzDecoder::new(File::open(data("helsinki.osm.gz")).map_err(|e| e.to_string())?),
        &mut std::io::sink(),
    )
    .map_err(|e| e.to_string())? as f64;
    let projected = t_metro.mul_f64(METRO_EXTRACT_BYTES / xml_bytes);
    ensure(projected < METRO_TIME_LIMIT, || {
        format!("projected {projected:?} for 50 MB")
    })?;
    Ok(format!(
        "{} features, metro reduction {ratio:.4}, primitives metro {} < zoom {}, monotone, \
         {:.1} MB in {t_metro:.2?} (50 MB ~ {projected:.1?})",
        s.raw_geometry_count,
        s.primitive_count,
        zoom.stats.primitive_count,
        xml_bytes / 1e6
    ))
}

fn c12_serialization() -> Outcome {
    let shapes = random_shapes(12, SHAPE_INSTANCES);
    for (_, shape) in &shapes {
        let doc = ShapeDocument::new(shape);
        let text = doc.to_json();
        let back = ShapeDocument::from_json(&text).map_err(|e| e.to_string())?;
        ensure(back.to_json() == text, || {
            format!("shape JSON changed: {text}")
        })?;
        ensure(
            &back.to_shape().map_err(|e| e.to_string())? == shape,
            || format!("shape changed: {text}"),
        )?;
    }
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let a = convert_mini(dir.path(), "a")?;
    let b = convert_mini(dir.path(), "b")?;
    let text = std::fs::read(&a).map_err(|e| e.to_string())?;
    ensure(
        text == std::fs::read(&b).map_err(|e| e.to_string())?,
        || "convert is not deterministic".into(),
    )?;
    let model = read_model(text.as_slice()).map_err(|e| e.to_string())?;
    ensure(model.to_ndjson().as_bytes() == text.as_slice(), || {
        "model JSON changed on round trip".into()
    })?;

    let mut svgs = Vec::new();
    for name in ["a", "a", "b"] {
        let out = bin()
            .arg("render")
            .arg(dir.path().join(format!("{name}.model.ndjson")))
            .output()
            .map_err(|e| e.to_string())?;
        ensure(out.status.success(), || {
            String::from_utf8_lossy(&out.stderr).into_owned()
        })?;
        svgs.push(out.stdout);
    }
    ensure(svgs.windows(2).all(|w| w[0] == w[1]), || {
        "SVG differs between runs".into()
    })?;
    Ok(format!(
        "{} shapes, model {} bytes, SVG {} bytes stable over 3 renders",
        shapes.len(),
        text.len(),
        svgs[0].len()
    ))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 12] = [
        ("coordinate bijection", c1_bijection),
        ("distance oracle", c2_distance),
        ("rotation group", c3_rotation),
        ("rotation cost", c4_rotation_cost),
        ("bit width", c5_bit_width),
        ("tiling partition", c6_tiling),
        ("shape membership", c7_membership),
        ("polygon predicate cost", c8_polygon_cost),
        ("DP/Chaikin correctness", c9_dp_chaikin),
        ("pipeline fixture", c10_fixture),
        ("reduction properties", c11_reduction),
        ("serialization", c12_serialization),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.into_iter().enumerate() {
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 12 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
