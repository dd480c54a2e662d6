mod common;

use std::io::Cursor;

use common::{mini_xml, run_mini, MINI_BBOX};
use osm2hex::{parse_osm, BBox, FeatureKind, PipelineOutput, ResolutionPolicy};
use serde_json::json;

fn summary(out: &PipelineOutput) -> String {
    let s = &out.stats;
    let objects: Vec<String> = out
        .objects
        .iter()
        .map(|o| {
            let kinds: Vec<String> = o
                .primitives
                .iter()
                .map(|p| {
                    serde_json::to_value(p.kind)
                        .unwrap()
                        .as_str()
                        .unwrap()
                        .to_owned()
                })
                .collect();
            let kind = serde_json::to_value(o.kind).unwrap();
            format!(
                "{} {} {} {} {}",
                o.source_id,
                kind.as_str().unwrap(),
                o.class.name(),
                o.tier.name(),
                kinds.join("+")
            )
        })
        .collect();
    let mut text = String::from("{\n");
    text += &format!("  \"bbox\": {},\n", json!(MINI_BBOX));
    text += "  \"policy\": \"zoom\",\n";
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
    text += "  \"objects\": [\n";
    let lines: Vec<String> = objects
        .iter()
        .map(|o| format!("    {}", json!(o)))
        .collect();
    text += &lines.join(",\n");
    text += "\n  ]\n}\n";
    text
}

#[test]
fn mini_parses_to_expected_features() {
    let bbox: BBox = MINI_BBOX.parse().unwrap();
    let parsed = parse_osm(Cursor::new(mini_xml()), &bbox).unwrap();
    let count = |k| parsed.features.iter().filter(|f| f.kind == k).count();
    assert_eq!(count(FeatureKind::Polyline), 3);
    assert_eq!(count(FeatureKind::Polygon), 1);
    assert_eq!(count(FeatureKind::Node), 5);
    assert_eq!(parsed.warnings.missing_node_refs, 0);
}

#[test]
fn mini_zoom_matches_frozen_expectation() {
    let expected = std::fs::read_to_string(common::data("mini.expected.json")).unwrap();
    assert_eq!(summary(&run_mini(ResolutionPolicy::zoom())), expected);
}

#[test]
fn mini_metro_drops_paths_and_small_buildings() {
    let out = run_mini(ResolutionPolicy::metro());
    let ids: Vec<i64> = out.objects.iter().map(|o| o.source_id).collect();
    assert_eq!(ids, vec![20, 21, 22, 100, 101]);
    assert_eq!(out.stats.filter.dropped_by_area, 1);
    assert_eq!(out.stats.filter.dropped_by_tier, 3);
}

#[test]
fn missing_node_reference_is_counted() {
    let xml = r#"<osm>
      <node id="1" lat="0.1" lon="0.1"/>
      <node id="2" lat="0.2" lon="0.2"/>
      <way id="5"><nd ref="1"/><nd ref="2"/><tag k="highway" v="primary"/></way>
      <way id="6"><nd ref="1"/><nd ref="99"/><tag k="highway" v="primary"/></way>
    </osm>"#;
    let bbox = BBox::new(0.0, 0.0, 1.0, 1.0).unwrap();
    let parsed = parse_osm(Cursor::new(xml), &bbox).unwrap();
    assert_eq!(parsed.features.len(), 1);
    assert_eq!(parsed.warnings.missing_node_refs, 1);
}
