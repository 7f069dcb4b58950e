#![allow(dead_code)]

pub mod khovanov;
pub mod props;
pub mod random;

use std::collections::BTreeMap;
use std::path::PathBuf;

use krh_core::link::{parse_diagram, LinkDiagram, Table};
use krh_core::moy::PlanarGraph;

pub fn fixture_text(rel: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(rel);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

pub fn link(name: &str) -> LinkDiagram {
    parse_diagram(&fixture_text(&format!("links/{name}"))).unwrap()
}

pub fn graph(name: &str) -> PlanarGraph {
    PlanarGraph::parse(&fixture_text(&format!("graphs/{name}"))).unwrap()
}

/// Khovanov's (i, j) as our (−i, j).
pub fn khovanov_as_ours(kh: &BTreeMap<(i32, i32), usize>) -> Table {
    kh.iter().map(|(&(i, q), &d)| ((-i, q), d)).collect()
}
