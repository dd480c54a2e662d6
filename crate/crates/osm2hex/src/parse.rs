//! OSM XML to raw features.
//!
//! Elements are collected into id-indexed tables first and resolved after
//! the whole stream has been read, so files need not list nodes before
//! ways. Multipolygon relations are resolved one level deep: outer member
//! ways are stitched into rings, nested relation members are dropped.

use std::collections::{BTreeMap, HashMap};
use std::io::BufRead;

use log::warn;
use quick_xml::events::{BytesStart, Event};
use quick_xml::Reader;

use crate::model::{BBox, FeatureKind, LonLat, RawFeature};
use crate::PipelineError;

/// Problems that drop a single element without failing the parse.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct ParseWarnings {
    /// Ways (or relation members) referencing nodes absent from the file.
    pub missing_node_refs: usize,
    /// Relation members that are themselves relations.
    pub nested_relations: usize,
    /// Ways with fewer than two nodes, or outer rings that never close.
    pub degenerate: usize,
}

#[derive(Debug, Clone, Default)]
pub struct ParseOutput {
    pub features: Vec<RawFeature>,
    pub warnings: ParseWarnings,
}

struct Way {
    id: i64,
    refs: Vec<i64>,
    tags: BTreeMap<String, String>,
}

struct Member {
    kind: String,
    id: i64,
    role: String,
}

struct Relation {
    id: i64,
    members: Vec<Member>,
    tags: BTreeMap<String, String>,
}

enum Open {
    None,
    Node(i64, LonLat, BTreeMap<String, String>),
    Way(Way),
    Relation(Relation),
}

#[derive(Default)]
struct Tables {
    coords: HashMap<i64, LonLat>,
    tagged_nodes: Vec<(i64, LonLat, BTreeMap<String, String>)>,
    ways: Vec<Way>,
    relations: Vec<Relation>,
}

fn xml_error(reader_pos: u64, e: impl std::fmt::Display) -> PipelineError {
    PipelineError::XmlSyntax(format!("at byte {reader_pos}: {e}"))
}

fn attrs(e: &BytesStart, pos: u64) -> Result<HashMap<String, String>, PipelineError> {
    let mut out = HashMap::new();
    for a in e.attributes() {
        let a = a.map_err(|err| xml_error(pos, err))?;
        let key = String::from_utf8_lossy(a.key.as_ref()).into_owned();
        let value = a
            .unescape_value()
            .map_err(|err| xml_error(pos, err))?
            .into_owned();
        out.insert(key, value);
    }
    Ok(out)
}

fn number<T: std::str::FromStr>(
    map: &HashMap<String, String>,
    key: &str,
    elem: &str,
    pos: u64,
) -> Result<T, PipelineError> {
    map.get(key)
        .and_then(|v| v.parse().ok())
        .ok_or_else(|| xml_error(pos, format!("<{elem}> without a valid `{key}`")))
}

fn start_element(e: &BytesStart, open: &mut Open, pos: u64) -> Result<(), PipelineError> {
    match e.name().as_ref() {
        b"node" => {
            let a = attrs(e, pos)?;
            let id = number(&a, "id", "node", pos)?;
            let lon = number(&a, "lon", "node", pos)?;
            let lat = number(&a, "lat", "node", pos)?;
            *open = Open::Node(id, [lon, lat], BTreeMap::new());
        }
        b"way" => {
            let a = attrs(e, pos)?;
            *open = Open::Way(Way {
                id: number(&a, "id", "way", pos)?,
                refs: Vec::new(),
                tags: BTreeMap::new(),
            });
        }
        b"relation" => {
            let a = attrs(e, pos)?;
            *open = Open::Relation(Relation {
                id: number(&a, "id", "relation", pos)?,
                members: Vec::new(),
                tags: BTreeMap::new(),
            });
        }
        b"tag" => {
            let a = attrs(e, pos)?;
            let (Some(k), Some(v)) = (a.get("k"), a.get("v")) else {
                return Err(xml_error(pos, "<tag> without k or v"));
            };
            let tags = match open {
                Open::Node(_, _, t) => t,
                Open::Way(w) => &mut w.tags,
                Open::Relation(r) => &mut r.tags,
                Open::None => return Ok(()),
            };
            tags.insert(k.clone(), v.clone());
        }
        b"nd" => {
            if let Open::Way(w) = open {
                let a = attrs(e, pos)?;
                w.refs.push(number(&a, "ref", "nd", pos)?);
            }
        }
        b"member" => {
            if let Open::Relation(r) = open {
                let a = attrs(e, pos)?;
                r.members.push(Member {
                    kind: a.get("type").cloned().unwrap_or_default(),
                    id: number(&a, "ref", "member", pos)?,
                    role: a.get("role").cloned().unwrap_or_default(),
                });
            }
        }
        _ => {}
    }
    Ok(())
}

fn close_element(open: &mut Open, tables: &mut Tables) {
    match std::mem::replace(open, Open::None) {
        Open::None => {}
        Open::Node(id, p, tags) => {
            tables.coords.insert(id, p);
            if !tags.is_empty() {
                tables.tagged_nodes.push((id, p, tags));
            }
        }
        Open::Way(w) => tables.ways.push(w),
        Open::Relation(r) => tables.relations.push(r),
    }
}

fn read_tables(input: impl BufRead) -> Result<Tables, PipelineError> {
    let mut reader = Reader::from_reader(input);
    reader.config_mut().trim_text(true);
    let mut buf = Vec::new();
    let mut tables = Tables::default();
    let mut open = Open::None;
    let mut saw_root = false;
    loop {
        let pos = reader.buffer_position();
        match reader.read_event_into(&mut buf) {
            Err(e) => return Err(xml_error(pos, e)),
            Ok(Event::Eof) => break,
            Ok(Event::Start(e)) => {
                saw_root |= e.name().as_ref() == b"osm";
                start_element(&e, &mut open, pos)?;
            }
            Ok(Event::Empty(e)) => {
                saw_root |= e.name().as_ref() == b"osm";
                let name = e.name().as_ref().to_vec();
                start_element(&e, &mut open, pos)?;
                if matches!(name.as_slice(), b"node" | b"way" | b"relation") {
                    close_element(&mut open, &mut tables);
                }
            }
            Ok(Event::End(e)) => {
                if matches!(e.name().as_ref(), b"node" | b"way" | b"relation") {
                    close_element(&mut open, &mut tables);
                }
            }
            Ok(_) => {}
        }
        buf.clear();
    }
    if !saw_root {
        return Err(PipelineError::XmlSyntax("no <osm> root element".into()));
    }
    Ok(tables)
}

const AREA_KEYS: [&str; 9] = [
    "building", "leisure", "landuse", "amenity", "natural", "water", "place", "tourism", "historic",
];

/// Whether a closed way with these tags encloses an area.
pub fn is_area(tags: &BTreeMap<String, String>) -> bool {
    match tags.get("area").map(String::as_str) {
        Some("yes") => return true,
        Some("no") => return false,
        _ => {}
    }
    if tags.get("waterway").map(String::as_str) == Some("riverbank") {
        return true;
    }
    AREA_KEYS.iter().any(|k| tags.contains_key(*k))
}

fn resolve(refs: &[i64], coords: &HashMap<i64, LonLat>) -> Option<Vec<LonLat>> {
    refs.iter().map(|r| coords.get(r).copied()).collect()
}

/// Joins open outer ways end to end into closed rings.
fn stitch(mut pieces: Vec<Vec<i64>>) -> (Vec<Vec<i64>>, usize) {
    let mut rings = Vec::new();
    let mut broken = 0;
    while let Some(mut ring) = pieces.pop() {
        while ring.first() != ring.last() {
            let tail = *ring.last().expect("non-empty");
            let next = pieces
                .iter()
                .position(|p| p.first() == Some(&tail) || p.last() == Some(&tail));
            let Some(i) = next else { break };
            let mut p = pieces.swap_remove(i);
            if p.first() != Some(&tail) {
                p.reverse();
            }
            ring.extend_from_slice(&p[1..]);
        }
        if ring.len() >= 4 && ring.first() == ring.last() {
            rings.push(ring);
        } else {
            broken += 1;
        }
    }
    (rings, broken)
}

/// Parses an OSM XML stream and clips the result to `bbox`.
pub fn parse_osm(input: impl BufRead, bbox: &BBox) -> Result<ParseOutput, PipelineError> {
    let tables = read_tables(input)?;
    let mut warnings = ParseWarnings::default();
    let mut candidates = Vec::new();

    for (id, p, tags) in &tables.tagged_nodes {
        candidates.push(RawFeature {
            id: *id,
            kind: FeatureKind::Node,
            coords: vec![*p],
            tags: tags.clone(),
        });
    }

    let mut way_index: HashMap<i64, usize> = HashMap::new();
    for (i, w) in tables.ways.iter().enumerate() {
        way_index.insert(w.id, i);
        if w.tags.is_empty() {
            continue;
        }
        let Some(coords) = resolve(&w.refs, &tables.coords) else {
            warnings.missing_node_refs += 1;
            continue;
        };
        if coords.len() < 2 {
            warnings.degenerate += 1;
            continue;
        }
        let closed = w.refs.len() >= 4 && w.refs.first() == w.refs.last();
        let kind = if closed && is_area(&w.tags) {
            FeatureKind::Polygon
        } else {
            FeatureKind::Polyline
        };
        candidates.push(RawFeature {
            id: w.id,
            kind,
            coords,
            tags: w.tags.clone(),
        });
    }

    for rel in &tables.relations {
        if rel.tags.get("type").map(String::as_str) != Some("multipolygon") {
            continue;
        }
        let mut tags = rel.tags.clone();
        tags.remove("type");
        let mut outers = Vec::new();
        let mut missing = false;
        for m in &rel.members {
            match m.kind.as_str() {
                "relation" => warnings.nested_relations += 1,
                "way" if m.role == "outer" || m.role.is_empty() => match way_index.get(&m.id) {
                    Some(&i) => outers.push(tables.ways[i].refs.clone()),
                    None => missing = true,
                },
                _ => {}
            }
        }
        if missing {
            // outer ways outside the extract; the ring cannot be closed
            warnings.missing_node_refs += 1;
            continue;
        }
        let (rings, broken) = stitch(outers);
        warnings.degenerate += broken;
        for ring in rings {
            let Some(coords) = resolve(&ring, &tables.coords) else {
                warnings.missing_node_refs += 1;
                continue;
            };
            candidates.push(RawFeature {
                id: rel.id,
                kind: FeatureKind::Polygon,
                coords,
                tags: tags.clone(),
            });
        }
    }

    if warnings.missing_node_refs > 0 {
        warn!(
            "dropped {} elements with unresolved node references",
            warnings.missing_node_refs
        );
    }
    if warnings.nested_relations > 0 {
        warn!(
            "ignored {} nested relation members",
            warnings.nested_relations
        );
    }

    let mut features = Vec::new();
    if !bbox.is_empty() {
        for f in candidates {
            features.extend(clip_feature(f, bbox));
        }
    }
    if features.is_empty() {
        return Err(PipelineError::EmptyExtract);
    }
    features.sort_by_key(|f| (f.id, f.kind));
    Ok(ParseOutput { features, warnings })
}

fn clip_feature(f: RawFeature, bbox: &BBox) -> Vec<RawFeature> {
    if f.coords.iter().all(|&p| bbox.contains(p)) {
        return vec![f];
    }
    match f.kind {
        FeatureKind::Node => Vec::new(),
        FeatureKind::Polyline => clip_polyline(&f.coords, bbox)
            .into_iter()
            .map(|coords| RawFeature {
                coords,
                ..f.clone()
            })
            .collect(),
        FeatureKind::Polygon => clip_polygon(&f.coords, bbox)
            .map(|coords| RawFeature { coords, ..f })
            .into_iter()
            .collect(),
    }
}

/// Liang-Barsky clip of one segment; `None` when it misses the box.
fn clip_segment(a: LonLat, b: LonLat, bbox: &BBox) -> Option<(LonLat, LonLat)> {
    let (dx, dy) = (b[0] - a[0], b[1] - a[1]);
    let mut t0: f64 = 0.0;
    let mut t1: f64 = 1.0;
    let checks = [
        (-dx, a[0] - bbox.west),
        (dx, bbox.east - a[0]),
        (-dy, a[1] - bbox.south),
        (dy, bbox.north - a[1]),
    ];
    for (p, q) in checks {
        if p == 0.0 {
            if q < 0.0 {
                return None;
            }
        } else {
            let t = q / p;
            if p < 0.0 {
                t0 = t0.max(t);
            } else {
                t1 = t1.min(t);
            }
        }
    }
    if t0 > t1 {
        return None;
    }
    let at = |t: f64| {
        if t == 0.0 {
            a
        } else if t == 1.0 {
            b
        } else {
            [a[0] + t * dx, a[1] + t * dy]
        }
    };
    Some((at(t0), at(t1)))
}

/// Pieces of a polyline inside the box, each with at least two distinct
/// vertices.
pub fn clip_polyline(coords: &[LonLat], bbox: &BBox) -> Vec<Vec<LonLat>> {
    let mut pieces: Vec<Vec<LonLat>> = Vec::new();
    let mut current: Vec<LonLat> = Vec::new();
    for w in coords.windows(2) {
        match clip_segment(w[0], w[1], bbox) {
            Some((p, q)) => {
                if current.last() != Some(&p) {
                    if current.len() >= 2 {
                        pieces.push(std::mem::take(&mut current));
                    }
                    current = vec![p];
                }
                if q != p {
                    current.push(q);
                }
            }
            None => {
                if current.len() >= 2 {
                    pieces.push(std::mem::take(&mut current));
                }
                current.clear();
            }
        }
    }
    if current.len() >= 2 {
        pieces.push(current);
    }
    pieces
}

/// Sutherland-Hodgman clip of a closed ring; `None` when less than a
/// triangle survives.
pub fn clip_polygon(ring: &[LonLat], bbox: &BBox) -> Option<Vec<LonLat>> {
    let mut pts: Vec<LonLat> = ring[..ring.len() - 1].to_vec();
    let edges: [(usize, f64, bool); 4] = [
        (0, bbox.west, true),
        (0, bbox.east, false),
        (1, bbox.south, true),
        (1, bbox.north, false),
    ];
    for (axis, bound, keep_above) in edges {
        if pts.is_empty() {
            break;
        }
        let inside = |p: &LonLat| {
            if keep_above {
                p[axis] >= bound
            } else {
                p[axis] <= bound
            }
        };
        let mut out = Vec::with_capacity(pts.len() + 4);
        for i in 0..pts.len() {
            let cur = pts[i];
            let prev = pts[(i + pts.len() - 1) % pts.len()];
            let cross = |a: LonLat, b: LonLat| {
                let t = (bound - a[axis]) / (b[axis] - a[axis]);
                let mut p = [a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])];
                p[axis] = bound;
                p
            };
            match (inside(&prev), inside(&cur)) {
                (true, true) => out.push(cur),
                (true, false) => out.push(cross(prev, cur)),
                (false, true) => {
                    out.push(cross(prev, cur));
                    out.push(cur);
                }
                (false, false) => {}
            }
        }
        out.dedup();
        pts = out;
    }
    while pts.len() > 1 && pts.first() == pts.last() {
        pts.pop();
    }
    if pts.len() < 3 || crate::filter::ring_area(&pts).abs() == 0.0 {
        return None;
    }
    pts.push(pts[0]);
    Some(pts)
}
