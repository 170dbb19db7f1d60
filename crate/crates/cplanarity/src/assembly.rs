//! Full c-planarity test driver (placeholder while lower layers land).

use crate::embed::Embedding;
use crate::error::Result;
use crate::graph::ClusteredGraph;

#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub c_planar: bool,
    pub embedding: Option<Embedding>,
}

pub fn check_c_planarity(_cg: &ClusteredGraph) -> Result<CheckOutcome> {
    unimplemented!("assembly driver lands after spqr/labeling/matrices")
}
