//! Deterministic SVG rendering of a model.
//!
//! North is up: plane `(x, y)` is drawn at screen `(-y, -x)`. Layers are
//! emitted identity first, then structural, then contextual, each in
//! source-id order, one `<path>` or `<circle>` per primitive. Numbers use
//! two decimals.

use std::fmt::Write;

use neurohex::hexcore::{direction_of, ring_cells};
use neurohex::oracle::{hex_to_plane, PlanePoint};
use neurohex::HexCoord;

use crate::model::Tier;
use crate::mosaic::{MosaicObject, Op, Primitive, PrimitiveKind};
use crate::output::Model;

const STYLE: &str = "\
path,circle{stroke-linejoin:round;stroke-linecap:round}\
.add{fill-opacity:0.6}\
.subtract{fill:#ffffff;fill-opacity:1;stroke-dasharray:1 1}\
.line{fill:none}\
.identity{stroke:#1f5fbf;fill:#1f5fbf;stroke-width:2}\
.structural{stroke:#b03a2e;fill:#b03a2e;stroke-width:1.2}\
.contextual{stroke:#5d6d7e;fill:#aab7b8;stroke-width:0.4}";

fn screen(p: PlanePoint) -> (f64, f64) {
    (-p.y, -p.x)
}

/// Ring cells of an arc in clockwise order from its first end.
fn arc_cells(p: &Primitive) -> Vec<HexCoord> {
    let (centre, a) = (p.vertices[0], p.vertices[1]);
    let radius = a.distance(centre).max(p.vertices[2].distance(centre));
    let quant = p.shape.quantization().unwrap_or_default();
    let turn = quant.full_turn();
    let Ok(start) = direction_of(a - centre, quant) else {
        return vec![a];
    };
    let mut cells: Vec<(u32, HexCoord)> = ring_cells(radius)
        .into_iter()
        .map(|off| off + centre)
        .filter(|&c| p.shape.contains(c))
        .filter_map(|c| {
            let d = direction_of(c - centre, quant).ok()?;
            Some(((d.value() + turn - start.value()) % turn, c))
        })
        .collect();
    cells.sort();
    cells.into_iter().map(|(_, c)| c).collect()
}

fn outline(p: &Primitive) -> Vec<PlanePoint> {
    match p.kind {
        PrimitiveKind::Circle => {
            let radius = match &p.shape {
                neurohex::Shape::Foundational(f) => f.magnitude().unwrap_or(0),
                _ => 0,
            };
            let c = hex_to_plane(p.vertices[0]);
            let k = radius as f64 + 0.5;
            HexCoord::DIRECTIONS
                .iter()
                .map(|&d| c.add(hex_to_plane(d).scale(k)))
                .collect()
        }
        PrimitiveKind::Arc => arc_cells(p).into_iter().map(hex_to_plane).collect(),
        _ => p.vertices.iter().map(|&c| hex_to_plane(c)).collect(),
    }
}

fn path_data(points: &[PlanePoint], closed: bool) -> String {
    let mut d = String::new();
    for (i, &p) in points.iter().enumerate() {
        let (x, y) = screen(p);
        let cmd = if i == 0 { 'M' } else { 'L' };
        write!(d, "{cmd}{x:.2} {y:.2}").expect("string write");
    }
    if closed {
        d.push('Z');
    }
    d
}

fn element(o: &MosaicObject, p: &Primitive, out: &mut String) {
    let op = match p.op {
        Op::Add => "add",
        Op::Subtract => "subtract",
    };
    let kind = serde_json::to_value(p.kind).expect("unit variant");
    let kind = kind.as_str().unwrap_or_default();
    let closed = matches!(
        p.kind,
        PrimitiveKind::Rectangle | PrimitiveKind::Triangle | PrimitiveKind::Circle
    );
    let line = if closed { "" } else { " line" };
    let class = format!("{} {} {kind} {op}{line}", o.tier.name(), o.class.name());
    if p.kind == PrimitiveKind::Point {
        let (x, y) = screen(hex_to_plane(p.vertices[0]));
        writeln!(
            out,
            r#"<circle data-id="{}" class="{class}" cx="{x:.2}" cy="{y:.2}" r="0.80"/>"#,
            o.source_id
        )
        .expect("string write");
        return;
    }
    let pts = outline(p);
    writeln!(
        out,
        r#"<path data-id="{}" class="{class}" d="{}"/>"#,
        o.source_id,
        path_data(&pts, closed)
    )
    .expect("string write");
}

fn bounds(model: &Model) -> Option<[f64; 4]> {
    let mut b: Option<[f64; 4]> = None;
    for o in &model.objects {
        for p in &o.primitives {
            for pt in outline(p)
                .into_iter()
                .chain(p.vertices.iter().map(|&c| hex_to_plane(c)))
            {
                let (x, y) = screen(pt);
                b = Some(match b {
                    None => [x, y, x, y],
                    Some([x0, y0, x1, y1]) => [x0.min(x), y0.min(y), x1.max(x), y1.max(y)],
                });
            }
        }
    }
    b
}

pub fn render_svg(model: &Model) -> String {
    let pad = 4.0;
    let [x0, y0, x1, y1] = bounds(model).unwrap_or([0.0, 0.0, 0.0, 0.0]);
    let (w, h) = (x1 - x0 + 2.0 * pad, y1 - y0 + 2.0 * pad);
    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{:.2} {:.2} {w:.2} {h:.2}" width="{w:.2}" height="{h:.2}">"#,
        x0 - pad,
        y0 - pad
    )
    .expect("string write");
    writeln!(out, "<style>{STYLE}</style>").expect("string write");
    for tier in Tier::KEPT {
        writeln!(out, r#"<g id="{}">"#, tier.name()).expect("string write");
        let mut objects: Vec<&MosaicObject> =
            model.objects.iter().filter(|o| o.tier == tier).collect();
        objects.sort_by_key(|o| (o.source_id, o.kind));
        for o in objects {
            for p in &o.primitives {
                element(o, p, &mut out);
            }
        }
        out.push_str("</g>\n");
    }
    out.push_str("</svg>\n");
    out
}
