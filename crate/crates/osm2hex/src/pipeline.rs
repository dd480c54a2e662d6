use std::io::BufRead;

use neurohex::Quantization;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classify::classify;
use crate::filter::{filter_features, FilterStats};
use crate::model::{BBox, Classified, LonLat, ResolutionPolicy, Tier};
use crate::mosaic::{fit_mosaic, MosaicObject};
use crate::parse::{parse_osm, ParseWarnings};
use crate::project::Grid;
use crate::simplify::simplify_feature;
use crate::PipelineError;

/// Geometry and vertex totals after one stage.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StageCounts {
    pub geometries: usize,
    pub vertices: usize,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TierCounts {
    pub objects: usize,
    pub primitives: usize,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PerTier {
    pub identity: TierCounts,
    pub structural: TierCounts,
    pub contextual: TierCounts,
}

impl PerTier {
    pub fn get(&self, tier: Tier) -> TierCounts {
        match tier {
            Tier::Identity => self.identity,
            Tier::Structural => self.structural,
            Tier::Contextual => self.contextual,
            Tier::Discard => TierCounts::default(),
        }
    }

    pub fn get_mut(&mut self, tier: Tier) -> Option<&mut TierCounts> {
        match tier {
            Tier::Identity => Some(&mut self.identity),
            Tier::Structural => Some(&mut self.structural),
            Tier::Contextual => Some(&mut self.contextual),
            Tier::Discard => None,
        }
    }

    pub fn from_objects(objects: &[MosaicObject]) -> PerTier {
        let mut out = PerTier::default();
        for o in objects {
            if let Some(t) = out.get_mut(o.tier) {
                t.objects += 1;
                t.primitives += o.primitives.len();
            }
        }
        out
    }
}

/// Fractions removed, each `1 - after / before` clamped to `[0, 1]`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Ratios {
    /// Vertices removed by simplification.
    pub simplification: f64,
    /// Geometries removed by filtering.
    pub filtering: f64,
    /// Primitive count against raw vertex count.
    pub primitive: f64,
}

pub fn reduction(before: usize, after: usize) -> f64 {
    if before == 0 {
        0.0
    } else {
        (1.0 - after as f64 / before as f64).clamp(0.0, 1.0)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReductionStats {
    pub raw_geometry_count: usize,
    pub raw_vertex_count: usize,
    pub post_simplification_feature_count: usize,
    pub post_simplification_vertex_count: usize,
    pub kept_object_count: usize,
    pub kept_vertex_count: usize,
    pub primitive_count: usize,
    pub inaccurate_objects: usize,
    pub tiers: PerTier,
    pub ratios: Ratios,
    pub parse_warnings: ParseWarnings,
    pub filter: FilterStats,
}

impl ReductionStats {
    /// Counts after parse, simplify, filter and mosaic; the mosaic stage
    /// counts objects and primitives.
    pub fn stages(&self) -> [StageCounts; 4] {
        [
            StageCounts {
                geometries: self.raw_geometry_count,
                vertices: self.raw_vertex_count,
            },
            StageCounts {
                geometries: self.post_simplification_feature_count,
                vertices: self.post_simplification_vertex_count,
            },
            StageCounts {
                geometries: self.kept_object_count,
                vertices: self.kept_vertex_count,
            },
            StageCounts {
                geometries: self.kept_object_count,
                vertices: self.primitive_count,
            },
        ]
    }

    pub fn is_monotone(&self) -> bool {
        self.stages()
            .windows(2)
            .all(|w| w[1].geometries <= w[0].geometries && w[1].vertices <= w[0].vertices)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PipelineConfig {
    pub policy: ResolutionPolicy,
    /// Grid origin; the bounding box centre when absent.
    pub origin: Option<LonLat>,
    pub quantization: Quantization,
}

impl PipelineConfig {
    pub fn new(policy: ResolutionPolicy) -> Self {
        PipelineConfig {
            policy,
            origin: None,
            quantization: Quantization::DEFAULT,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PipelineOutput {
    pub grid: Grid,
    pub objects: Vec<MosaicObject>,
    pub stats: ReductionStats,
}

fn vertices(features: &[Classified]) -> usize {
    features.iter().map(|f| f.feature.vertex_count()).sum()
}

/// parse, classify, simplify, filter, fit. Output objects are ordered by
/// source id.
pub fn run_pipeline(
    input: impl BufRead,
    bbox: &BBox,
    config: &PipelineConfig,
) -> Result<PipelineOutput, PipelineError> {
    let policy = &config.policy;
    policy.validate().map_err(PipelineError::InvalidPolicy)?;
    let grid = Grid::new(
        config.origin.unwrap_or_else(|| bbox.center()),
        policy.cell_size,
    );

    let parsed = parse_osm(input, bbox)?;
    let mut stats = ReductionStats {
        raw_geometry_count: parsed.features.len(),
        raw_vertex_count: parsed.features.iter().map(|f| f.vertex_count()).sum(),
        parse_warnings: parsed.warnings,
        ..Default::default()
    };

    let simplified: Vec<Classified> = parsed
        .features
        .par_iter()
        .map(|f| Classified {
            class: classify(f),
            feature: simplify_feature(f, policy),
        })
        .collect();
    stats.post_simplification_feature_count = simplified.len();
    stats.post_simplification_vertex_count = vertices(&simplified);

    let (kept, filter_stats) = filter_features(simplified, policy);
    stats.filter = filter_stats;
    stats.kept_object_count = kept.len();
    stats.kept_vertex_count = vertices(&kept);

    let mut objects = kept
        .par_iter()
        .map(|f| fit_mosaic(f, &grid, policy, config.quantization))
        .collect::<Result<Vec<_>, _>>()?;
    objects.sort_by_key(|o| (o.source_id, o.kind));

    stats.primitive_count = objects.iter().map(|o| o.primitives.len()).sum();
    stats.inaccurate_objects = objects.iter().filter(|o| !o.accurate).count();
    stats.tiers = PerTier::from_objects(&objects);
    stats.ratios = Ratios {
        simplification: reduction(
            stats.raw_vertex_count,
            stats.post_simplification_vertex_count,
        ),
        filtering: reduction(stats.raw_geometry_count, stats.kept_object_count),
        primitive: reduction(stats.raw_vertex_count, stats.primitive_count),
    };
    Ok(PipelineOutput {
        grid,
        objects,
        stats,
    })
}
