//! Newline-delimited JSON model files.
//!
//! The first line is a header record carrying the grid, policy and run
//! statistics; each following line is one mosaic object:
//!
//! ```json
//! {"type":"object","source_id":7,"kind":"polygon","class":"building","tier":"contextual",
//!  "error":0.04,"accurate":true,"primitives":[{"kind":"rectangle","op":"add",
//!  "vertices":[[0,0,0],[4,-4,0],[4,-8,4],[0,-4,4]],"shape":{"quantization":64,"shape":{...}}}]}
//! ```

use std::io::{BufRead, Write};

use neurohex::shapes::ShapeDocument;
use neurohex::HexCoord;
use serde::{Deserialize, Serialize};

use crate::model::{BBox, Class, FeatureKind, ResolutionPolicy, Tier};
use crate::mosaic::{MosaicObject, Op, Primitive, PrimitiveKind};
use crate::pipeline::{PipelineOutput, ReductionStats};
use crate::project::Grid;
use crate::PipelineError;

pub const FORMAT: &str = "osm2hex-model";
pub const VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelHeader {
    pub format: String,
    pub version: u32,
    pub grid: Grid,
    pub quantization: u32,
    pub bbox: BBox,
    pub policy: ResolutionPolicy,
    pub stats: ReductionStats,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PrimitiveRecord {
    kind: PrimitiveKind,
    op: Op,
    vertices: Vec<HexCoord>,
    shape: ShapeDocument,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ObjectRecord {
    source_id: i64,
    kind: FeatureKind,
    class: Class,
    tier: Tier,
    error: f64,
    accurate: bool,
    primitives: Vec<PrimitiveRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
enum Record {
    Header(Box<ModelHeader>),
    Object(ObjectRecord),
}

/// A model file in memory. A file with no lines is the empty model.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Model {
    pub header: Option<ModelHeader>,
    pub objects: Vec<MosaicObject>,
}

impl Model {
    pub fn from_run(
        output: &PipelineOutput,
        bbox: BBox,
        policy: &ResolutionPolicy,
        quantization: u32,
    ) -> Model {
        Model {
            header: Some(ModelHeader {
                format: FORMAT.into(),
                version: VERSION,
                grid: output.grid,
                quantization,
                bbox,
                policy: policy.clone(),
                stats: output.stats.clone(),
            }),
            objects: output.objects.clone(),
        }
    }

    pub fn to_ndjson(&self) -> String {
        let mut buf = Vec::new();
        write_model(&mut buf, self).expect("writing to memory");
        String::from_utf8(buf).expect("JSON is UTF-8")
    }
}

fn to_record(o: &MosaicObject) -> ObjectRecord {
    ObjectRecord {
        source_id: o.source_id,
        kind: o.kind,
        class: o.class,
        tier: o.tier,
        error: o.error,
        accurate: o.accurate,
        primitives: o
            .primitives
            .iter()
            .map(|p| PrimitiveRecord {
                kind: p.kind,
                op: p.op,
                vertices: p.vertices.clone(),
                shape: ShapeDocument::new(&p.shape),
            })
            .collect(),
    }
}

fn from_record(r: ObjectRecord, grid: Grid, line: usize) -> Result<MosaicObject, PipelineError> {
    let primitives = r
        .primitives
        .into_iter()
        .map(|p| {
            let shape = p
                .shape
                .to_shape()
                .map_err(|e| PipelineError::Schema(format!("line {line}: {e}")))?;
            Ok(Primitive {
                kind: p.kind,
                op: p.op,
                vertices: p.vertices,
                shape,
            })
        })
        .collect::<Result<Vec<_>, PipelineError>>()?;
    if primitives.is_empty() {
        return Err(PipelineError::Schema(format!(
            "line {line}: object without primitives"
        )));
    }
    Ok(MosaicObject {
        source_id: r.source_id,
        kind: r.kind,
        class: r.class,
        tier: r.tier,
        primitives,
        grid,
        error: r.error,
        accurate: r.accurate,
    })
}

pub fn write_model(out: &mut impl Write, model: &Model) -> std::io::Result<()> {
    if let Some(h) = &model.header {
        serde_json::to_writer(&mut *out, &Record::Header(Box::new(h.clone())))?;
        out.write_all(b"\n")?;
    }
    for o in &model.objects {
        serde_json::to_writer(&mut *out, &Record::Object(to_record(o)))?;
        out.write_all(b"\n")?;
    }
    Ok(())
}

pub fn read_model(input: impl BufRead) -> Result<Model, PipelineError> {
    let mut model = Model::default();
    for (i, line) in input.lines().enumerate() {
        let line = line?;
        let n = i + 1;
        if line.trim().is_empty() {
            continue;
        }
        let record: Record = serde_json::from_str(&line)
            .map_err(|e| PipelineError::Schema(format!("line {n}: {e}")))?;
        match record {
            Record::Header(h) => {
                if n != 1 {
                    return Err(PipelineError::Schema(format!(
                        "line {n}: header must come first"
                    )));
                }
                if h.format != FORMAT || h.version != VERSION {
                    return Err(PipelineError::Schema(format!(
                        "unsupported model format {} v{}",
                        h.format, h.version
                    )));
                }
                model.header = Some(*h);
            }
            Record::Object(r) => {
                let Some(h) = &model.header else {
                    return Err(PipelineError::Schema(format!(
                        "line {n}: object before header"
                    )));
                };
                model.objects.push(from_record(r, h.grid, n)?);
            }
        }
    }
    Ok(model)
}

/// Reads a single stats JSON document.
pub fn read_stats(text: &str) -> Result<ReductionStats, PipelineError> {
    serde_json::from_str(text).map_err(|e| PipelineError::Schema(e.to_string()))
}

pub fn stats_json(stats: &ReductionStats) -> String {
    let mut s = serde_json::to_string_pretty(stats).expect("stats serialize");
    s.push('\n');
    s
}
