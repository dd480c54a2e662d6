#![allow(dead_code)]

use std::fs::File;
use std::io::{BufReader, Cursor};
use std::path::PathBuf;

use flate2::read::GzDecoder;
use osm2hex::{run_pipeline, BBox, PipelineConfig, PipelineOutput, ResolutionPolicy};

pub const MINI_BBOX: &str = "24.930,60.160,24.950,60.175";
pub const HELSINKI_BBOX: &str = "24.9351766,60.1641551,24.9534132,60.1791074";

pub fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
}

pub fn mini_xml() -> String {
    std::fs::read_to_string(data("mini.osm")).expect("mini.osm")
}

pub fn run_mini(policy: ResolutionPolicy) -> PipelineOutput {
    let bbox: BBox = MINI_BBOX.parse().unwrap();
    run_pipeline(Cursor::new(mini_xml()), &bbox, &PipelineConfig::new(policy)).unwrap()
}

pub fn run_helsinki(policy: ResolutionPolicy) -> PipelineOutput {
    let bbox: BBox = HELSINKI_BBOX.parse().unwrap();
    let gz = File::open(data("helsinki.osm.gz")).expect("helsinki extract");
    let reader = BufReader::new(GzDecoder::new(gz));
    run_pipeline(reader, &bbox, &PipelineConfig::new(policy)).unwrap()
}
