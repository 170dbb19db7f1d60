//! Decision engine for clustered planarity of overlapping clustered graphs
//! whose clusters induce connected subgraphs.
//!
//! The crate decides whether a clustered graph admits a planar embedding in
//! which, for every cluster C, all vertices outside C lie in the outer face
//! of the induced embedding of G[C]. Yes-instances come with a combinatorial
//! embedding certificate; a brute-force oracle provides ground truth at desk
//! scale, and a linear-pass fast path covers instances whose cluster set is
//! the union of two c-co-connected partitions.

pub mod c1p;
pub mod embed;
pub mod oracle;
pub mod assembly;
pub mod error;
pub mod generate;
pub mod graph;
pub mod labeling;
pub mod matrices;
pub mod partition;
pub mod spqr;

pub use embed::{check_c_planar_embedding, planar_embed, trace_faces, Embedding, Face};
pub use error::{Error, Result};
pub use graph::{
    bc_tree, connected_components, is_c_co_connected, is_c_connected, BcTree, Cluster,
    ClusteredGraph, Graph,
};
