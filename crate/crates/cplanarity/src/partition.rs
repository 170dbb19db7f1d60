//! Intersection partitions of two vertex partitions, computed in a single
//! linear pass, and the reduction that decides c-planarity for the union of
//! two c-co-connected partitions.

use crate::embed::{trace_faces, Embedding, InducedView};
use crate::error::{Error, Result};
use crate::graph::{
    induced_subgraph_connected, is_connected, Cluster, ClusteredGraph,
    Graph, VertexId,
};

/// A partition of the vertex set `0..n` with a per-vertex part index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    pub parts: Vec<Vec<VertexId>>,
    pub part_of: Vec<usize>,
}

impl Partition {
    pub fn new(n: usize, parts: Vec<Vec<VertexId>>) -> Result<Self> {
        let mut part_of = vec![usize::MAX; n];
        for (i, part) in parts.iter().enumerate() {
            if part.is_empty() {
                return Err(Error::InvalidInstance("empty partition part".into()));
            }
            for &v in part {
                if v >= n {
                    return Err(Error::UnknownVertex(v));
                }
                if part_of[v] != usize::MAX {
                    return Err(Error::InvalidInstance(format!(
                        "vertex {v} appears in two parts"
                    )));
                }
                part_of[v] = i;
            }
        }
        if part_of.iter().any(|&p| p == usize::MAX) {
            return Err(Error::InvalidInstance("partition does not cover V".into()));
        }
        Ok(Partition { parts, part_of })
    }

    pub fn ground_size(&self) -> usize {
        self.part_of.len()
    }
}

/// The refinement of two partitions, with per-part provenance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionPartition {
    pub parts: Vec<Vec<VertexId>>,
    /// provenance[k] = (index into the first partition, index into the second).
    pub provenance: Vec<(usize, usize)>,
    /// Stack pushes plus pops plus per-stack scans, for the linearity check.
    pub operations: usize,
}

/// Single-pass intersection partition: one stack per part of `pr`, filled in
/// `pb`-part order; a new output part opens whenever the `pb` index changes
/// while a stack is drained.
pub fn intersection_partition(
    pb: &Partition,
    pr: &Partition,
) -> Result<IntersectionPartition> {
    if pb.ground_size() != pr.ground_size() {
        return Err(Error::MismatchedGroundSets);
    }
    let mut ops = 0usize;
    let mut stacks: Vec<Vec<VertexId>> = vec![Vec::new(); pr.parts.len()];
    for part in &pb.parts {
        for &v in part {
            stacks[pr.part_of[v]].push(v);
            ops += 1;
        }
    }
    let mut parts = Vec::new();
    let mut provenance = Vec::new();
    for (rj, stack) in stacks.iter().enumerate() {
        ops += 1;
        let mut current: Vec<VertexId> = Vec::new();
        let mut current_b = usize::MAX;
        for &v in stack {
            ops += 1;
            let b = pb.part_of[v];
            if b != current_b {
                if !current.is_empty() {
                    parts.push(std::mem::take(&mut current));
                    provenance.push((current_b, rj));
                }
                current_b = b;
            }
            current.push(v);
        }
        if !current.is_empty() {
            parts.push(current);
            provenance.push((current_b, rj));
        }
    }
    Ok(IntersectionPartition { parts, provenance, operations: ops })
}

/// Definitional double-loop intersection, as an oracle for the stack-based
/// routine: every nonempty B_i ∩ R_j.
pub fn intersection_partition_naive(pb: &Partition, pr: &Partition) -> Result<Vec<Vec<VertexId>>> {
    if pb.ground_size() != pr.ground_size() {
        return Err(Error::MismatchedGroundSets);
    }
    let mut out = Vec::new();
    for bi in &pb.parts {
        for (j, _) in pr.parts.iter().enumerate() {
            let mut inter: Vec<VertexId> =
                bi.iter().copied().filter(|&v| pr.part_of[v] == j).collect();
            if !inter.is_empty() {
                inter.sort_unstable();
                out.push(inter);
            }
        }
    }
    Ok(out)
}

/// Refine the intersection partition by connected components of each part's
/// induced subgraph.
pub fn connected_intersection_partition(
    g: &Graph,
    pb: &Partition,
    pr: &Partition,
) -> Result<Partition> {
    if pb.ground_size() != g.num_vertices() || pr.ground_size() != g.num_vertices() {
        return Err(Error::MismatchedGroundSets);
    }
    let inter = intersection_partition(pb, pr)?;
    let mut parts = Vec::new();
    for part in &inter.parts {
        let mut mask = vec![false; g.num_vertices()];
        for &v in part {
            mask[v] = true;
        }
        // components of the induced subgraph
        let mut seen = vec![false; g.num_vertices()];
        let inc = g.incidence();
        for &start in part {
            if seen[start] {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut queue = vec![start];
            while let Some(v) = queue.pop() {
                for &e in &inc[v] {
                    let w = g.other_end(e, v);
                    if mask[w] && !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push(w);
                    }
                }
            }
            comp.sort_unstable();
            parts.push(comp);
        }
    }
    parts.sort_by_key(|p| p[0]);
    Partition::new(g.num_vertices(), parts)
}

/// Outcome of the two-partition fast path.
#[derive(Debug, Clone)]
pub struct TwoPartitionOutcome {
    pub c_planar: bool,
    pub embedding: Option<Embedding>,
}

/// Decide c-planarity of `(g, pb ∪ pr)` for a c-co-connected union of two
/// partitions by testing the connected intersection partition with the
/// general engine, then re-choosing the outer face until the certificate is
/// c-planar for the full cluster set.
pub fn check_two_partition(
    g: &Graph,
    pb: &Partition,
    pr: &Partition,
) -> Result<TwoPartitionOutcome> {
    if pb.ground_size() != g.num_vertices() || pr.ground_size() != g.num_vertices() {
        return Err(Error::MismatchedGroundSets);
    }
    if !is_connected(g) {
        return Err(Error::Disconnected);
    }
    let union_clusters = union_clusters(pb, pr);
    let union_cg = ClusteredGraph::new(g.clone(), union_clusters.clone())?;
    if !crate::graph::is_c_co_connected(&union_cg) {
        let bad = union_cg
            .clusters
            .iter()
            .find(|c| {
                let mask = c.member_mask(g.num_vertices());
                !induced_subgraph_connected(g, &mask) || {
                    let co: Vec<bool> = mask.iter().map(|&b| !b).collect();
                    !mask.iter().all(|&b| b) && !induced_subgraph_connected(g, &co)
                }
            })
            .map(|c| c.name.clone())
            .unwrap_or_default();
        return Err(Error::NotCoConnected(bad));
    }
    if crate::planar_embed(g)?.is_none() {
        return Err(Error::NonPlanar);
    }

    let refined = connected_intersection_partition(g, pb, pr)?;
    let refined_clusters: Vec<Cluster> = refined
        .parts
        .iter()
        .enumerate()
        .map(|(i, p)| Cluster::new(format!("I{i}"), p.clone()))
        .collect();
    let refined_cg = ClusteredGraph::new(g.clone(), refined_clusters)?;
    let outcome = crate::assembly::check_c_planarity(&refined_cg)?;
    let Some(mut emb) = outcome.embedding else {
        return Ok(TwoPartitionOutcome { c_planar: false, embedding: None });
    };

    // Re-choose the outer face until no cluster of the union is "bad"
    // (its complement stuck in an inner face of the induced embedding).
    let masks: Vec<Vec<bool>> =
        union_cg.clusters.iter().map(|c| c.member_mask(g.num_vertices())).collect();
    let pr_masks: Vec<Vec<bool>> =
        pr.parts.iter().map(|p| mask_of(g.num_vertices(), p)).collect();
    let pb_masks: Vec<Vec<bool>> =
        pb.parts.iter().map(|p| mask_of(g.num_vertices(), p)).collect();
    let mut bad = bad_clusters(g, &emb, &masks);
    let mut guard = masks.len() + 1;
    while let Some(&ci) = bad.first() {
        guard = guard.checked_sub(1).ok_or_else(|| {
            Error::Internal("bad-cluster elimination failed to make progress".into())
        })?;
        let mask = &masks[ci];
        // Which side the cluster came from decides how the new outer face is
        // picked; the two partitions are symmetric here.
        let (own_masks, other_masks) = if ci < pb.parts.len() {
            (&pb_masks, &pr_masks)
        } else {
            (&pr_masks, &pb_masks)
        };
        let _ = own_masks;
        emb.outer_face = pick_outer_face(g, &emb, mask, other_masks)?;
        let new_bad = bad_clusters(g, &emb, &masks);
        if new_bad.len() >= bad.len() {
            return Err(Error::Internal(
                "outer-face re-choice did not decrease the bad cluster count".into(),
            ));
        }
        bad = new_bad;
    }
    debug_assert!(crate::embed::check_c_planar_embedding(&union_cg, &emb)?);
    Ok(TwoPartitionOutcome { c_planar: true, embedding: Some(emb) })
}

pub fn union_clusters(pb: &Partition, pr: &Partition) -> Vec<Cluster> {
    let mut cs = Vec::new();
    for (i, p) in pb.parts.iter().enumerate() {
        cs.push(Cluster::new(format!("B{i}"), p.clone()));
    }
    for (i, p) in pr.parts.iter().enumerate() {
        cs.push(Cluster::new(format!("R{i}"), p.clone()));
    }
    cs
}

fn mask_of(n: usize, vs: &[VertexId]) -> Vec<bool> {
    let mut m = vec![false; n];
    for &v in vs {
        m[v] = true;
    }
    m
}

/// Indices of clusters whose complement sits in an inner induced face.
fn bad_clusters(g: &Graph, emb: &Embedding, masks: &[Vec<bool>]) -> Vec<usize> {
    let fs = trace_faces(g, &emb.rotations);
    masks
        .iter()
        .enumerate()
        .filter(|(_, mask)| {
            if mask.iter().all(|&b| b) {
                return false;
            }
            let view = InducedView::new(g, &fs, emb.outer_face, mask);
            (0..g.num_vertices())
                .filter(|&v| !mask[v])
                .any(|v| view.classes_at(&fs, v) != vec![view.outer_class])
        })
        .map(|(i, _)| i)
        .collect()
}

/// New outer face for a bad cluster C, following the constructive argument:
/// if C is a union of parts of the other partition, any face inside the
/// complement-holding induced face of G[C] incident to a C-vertex works;
/// otherwise take a face incident to an outer-face edge of G[C'] between
/// C' ∩ C and C' \ C, where C' is a part of the other partition crossing C.
fn pick_outer_face(
    g: &Graph,
    emb: &Embedding,
    mask: &[bool],
    other_masks: &[Vec<bool>],
) -> Result<usize> {
    let fs = trace_faces(g, &emb.rotations);
    let view = InducedView::new(g, &fs, emb.outer_face, mask);
    // The induced face of G[C] holding the complement.
    let out_v = (0..g.num_vertices())
        .find(|&v| !mask[v])
        .ok_or_else(|| Error::Internal("bad cluster without complement".into()))?;
    let hold_class = view.classes_at(&fs, out_v)[0];

    let union_of_other = other_masks.iter().all(|om| {
        let crosses = (0..g.num_vertices()).any(|v| om[v] && mask[v]);
        !crosses || (0..g.num_vertices()).all(|v| !om[v] || mask[v])
    });
    if union_of_other {
        // Any full face inside the holding induced face, incident to C.
        for f in 0..fs.faces.len() {
            if view.class_of(f) == hold_class
                && fs.faces[f].incident_vertices.iter().any(|&v| mask[v])
            {
                return Ok(f);
            }
        }
        return Err(Error::Internal("no face incident to the bad cluster".into()));
    }

    let other = other_masks
        .iter()
        .find(|om| {
            (0..g.num_vertices()).any(|v| om[v] && mask[v])
                && (0..g.num_vertices()).any(|v| om[v] && !mask[v])
        })
        .ok_or_else(|| Error::Internal("no crossing part in the other partition".into()))?;
    let other_view = InducedView::new(g, &fs, emb.outer_face, other);
    for e in 0..g.num_edges() {
        let (u, v) = g.endpoints(e);
        if !(other[u] && other[v]) {
            continue;
        }
        let crossing = (mask[u] && !mask[v]) || (mask[v] && !mask[u]);
        if !crossing {
            continue;
        }
        for d in [crate::embed::dart(e, 0), crate::embed::dart(e, 1)] {
            let f = fs.face_of_dart[d];
            if other_view.class_of(f) == other_view.outer_class {
                return Ok(f);
            }
        }
    }
    Err(Error::Internal("no outer-face edge between C'∩C and C'\\C".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(n: usize, parts: &[&[usize]]) -> Partition {
        Partition::new(n, parts.iter().map(|p| p.to_vec()).collect()).unwrap()
    }

    #[test]
    fn intersection_of_example_partitions() {
        let pb = part(6, &[&[0, 1, 2], &[3, 4, 5]]);
        let pr = part(6, &[&[0, 1], &[2, 3], &[4, 5]]);
        let got = intersection_partition(&pb, &pr).unwrap();
        let mut parts: Vec<Vec<usize>> = got.parts;
        for p in &mut parts {
            p.sort_unstable();
        }
        parts.sort();
        assert_eq!(parts, vec![vec![0, 1], vec![2], vec![3], vec![4, 5]]);
    }

    #[test]
    fn intersection_with_itself_is_identity() {
        let pb = part(5, &[&[0, 2], &[1, 3, 4]]);
        let got = intersection_partition(&pb, &pb).unwrap();
        let mut parts = got.parts;
        for p in &mut parts {
            p.sort_unstable();
        }
        parts.sort();
        assert_eq!(parts, vec![vec![0, 2], vec![1, 3, 4]]);
    }

    #[test]
    fn intersection_with_trivial_partition() {
        let pb = part(4, &[&[0, 1], &[2, 3]]);
        let pr = part(4, &[&[0, 1, 2, 3]]);
        let got = intersection_partition(&pb, &pr).unwrap();
        assert_eq!(got.parts.len(), 2);
    }

    #[test]
    fn mismatched_ground_sets_rejected() {
        let pb = part(4, &[&[0, 1], &[2, 3]]);
        let pr = part(5, &[&[0, 1, 2, 3, 4]]);
        assert!(matches!(
            intersection_partition(&pb, &pr),
            Err(Error::MismatchedGroundSets)
        ));
    }

    #[test]
    fn stack_result_matches_naive() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..50 {
            let n = rng.gen_range(1..40);
            let kb = rng.gen_range(1..6);
            let kr = rng.gen_range(1..6);
            let pb = random_partition(&mut rng, n, kb);
            let pr = random_partition(&mut rng, n, kr);
            let fast = intersection_partition(&pb, &pr).unwrap();
            let mut fast_parts: Vec<Vec<usize>> = fast.parts;
            for p in &mut fast_parts {
                p.sort_unstable();
            }
            fast_parts.sort();
            let mut naive = intersection_partition_naive(&pb, &pr).unwrap();
            naive.sort();
            assert_eq!(fast_parts, naive);
        }
    }

    fn random_partition(rng: &mut impl rand::Rng, n: usize, k: usize) -> Partition {
        let k = k.min(n);
        let mut parts: Vec<Vec<usize>> = vec![Vec::new(); k];
        for v in 0..n {
            if v < k {
                parts[v].push(v);
            } else {
                let i = rng.gen_range(0..k);
                parts[i].push(v);
            }
        }
        Partition::new(n, parts).unwrap()
    }

    #[test]
    fn connected_refinement_on_path() {
        let g = Graph::new(6, vec![(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)]).unwrap();
        let pb = part(6, &[&[0, 1, 2], &[3, 4, 5]]);
        let pr = part(6, &[&[0, 1], &[2, 3], &[4, 5]]);
        let got = connected_intersection_partition(&g, &pb, &pr).unwrap();
        assert_eq!(got.parts, vec![vec![0, 1], vec![2], vec![3], vec![4, 5]]);
    }

    #[test]
    fn connected_refinement_splits_disconnected_parts() {
        let g = Graph::new(4, vec![(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let pb = part(4, &[&[0, 2], &[1, 3]]);
        let pr = part(4, &[&[0, 1, 2, 3]]);
        let got = connected_intersection_partition(&g, &pb, &pr).unwrap();
        assert_eq!(got.parts.len(), 4);
    }

    #[test]
    fn connected_refinement_trivial() {
        let g = Graph::new(3, vec![(0, 1), (1, 2)]).unwrap();
        let pb = part(3, &[&[0, 1, 2]]);
        let got = connected_intersection_partition(&g, &pb, &pb).unwrap();
        assert_eq!(got.parts, vec![vec![0, 1, 2]]);
    }
}
