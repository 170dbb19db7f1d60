//! Brute-force ground truth: enumerate all genus-zero rotation systems of a
//! small graph and decide c-planarity by the definition, plus the structural
//! two-condition check that characterizes valid embeddings over a rooted
//! SPQR-tree.

use crate::embed::{
    cluster_outside_ok, cycle_interior, cycle_outer_on_left, dart_from, is_genus_zero,
    trace_faces, Embedding, FaceStructure,
};
use crate::error::{Error, Result};
use crate::graph::{is_c_connected, ClusteredGraph, EdgeId, Graph, VertexId};
use crate::matrices::ClusterSpec;
use crate::spqr::{build_spqr, has_external_path, root_at, EdgeTag, NodeId, NodeKind, RootedSpqrTree};

pub const DEFAULT_BUDGET: u128 = 1_000_000;

fn factorial(k: usize) -> u128 {
    (1..=k as u128).product()
}

/// Number of rotation systems the enumerator will visit: the product of
/// (deg(v) - 1)! over all vertices, each vertex's cyclic order normalized by
/// fixing its first incident edge.
pub fn rotation_system_count(g: &Graph) -> u128 {
    let inc = g.incidence();
    inc.iter()
        .map(|edges| factorial(edges.len().saturating_sub(1)))
        .product()
}

/// Iterator over all rotation systems of `g`, one representative per cyclic
/// normalization (first incident edge of every vertex fixed).
pub struct EmbeddingEnumerator {
    heads: Vec<EdgeId>,
    tails: Vec<Vec<Vec<EdgeId>>>,
    odometer: Vec<usize>,
    done: bool,
    isolated: Vec<bool>,
}

impl EmbeddingEnumerator {
    pub fn new(g: &Graph) -> Self {
        let inc = g.incidence();
        let mut heads = Vec::new();
        let mut tails = Vec::new();
        let mut isolated = Vec::new();
        for edges in &inc {
            isolated.push(edges.is_empty());
            heads.push(edges.first().copied().unwrap_or(usize::MAX));
            let tail: Vec<EdgeId> = edges.iter().skip(1).copied().collect();
            tails.push(permutations(&tail));
        }
        EmbeddingEnumerator {
            odometer: vec![0; heads.len()],
            heads,
            tails,
            done: false,
            isolated,
        }
    }
}

fn permutations(items: &[EdgeId]) -> Vec<Vec<EdgeId>> {
    if items.is_empty() {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    let mut work = items.to_vec();
    permute_rec(&mut work, 0, &mut out);
    out
}

fn permute_rec(work: &mut Vec<EdgeId>, k: usize, out: &mut Vec<Vec<EdgeId>>) {
    if k == work.len() {
        out.push(work.clone());
        return;
    }
    for i in k..work.len() {
        work.swap(k, i);
        permute_rec(work, k + 1, out);
        work.swap(k, i);
    }
}

impl Iterator for EmbeddingEnumerator {
    type Item = Vec<Vec<EdgeId>>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        let n = self.heads.len();
        let mut rotations = Vec::with_capacity(n);
        for v in 0..n {
            if self.isolated[v] {
                rotations.push(Vec::new());
            } else {
                let mut rot = Vec::with_capacity(1 + self.tails[v][0].len());
                rot.push(self.heads[v]);
                rot.extend_from_slice(&self.tails[v][self.odometer[v]]);
                rotations.push(rot);
            }
        }
        // advance odometer
        let mut v = 0;
        loop {
            if v == n {
                self.done = true;
                break;
            }
            self.odometer[v] += 1;
            if self.odometer[v] < self.tails[v].len() {
                break;
            }
            self.odometer[v] = 0;
            v += 1;
        }
        Some(rotations)
    }
}

/// Exhaustive c-planarity decision with witness. Refuses explicitly if the
/// enumeration would exceed `budget` rotation systems.
pub fn oracle_c_planar(cg: &ClusteredGraph, budget: u128) -> Result<(bool, Option<Embedding>)> {
    if !is_c_connected(cg) {
        let bad = cg
            .clusters
            .iter()
            .find(|c| {
                !crate::graph::induced_subgraph_connected(
                    &cg.graph,
                    &c.member_mask(cg.graph.num_vertices()),
                )
            })
            .map(|c| c.name.clone())
            .unwrap_or_default();
        return Err(Error::NotCConnected(bad));
    }
    let needed = rotation_system_count(&cg.graph);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let g = &cg.graph;
    let n = g.num_vertices();
    let masks: Vec<Vec<bool>> = cg.clusters.iter().map(|c| c.member_mask(n)).collect();
    for rotations in EmbeddingEnumerator::new(g) {
        if !is_genus_zero(g, &rotations) {
            continue;
        }
        let fs = trace_faces(g, &rotations);
        for outer in 0..fs.faces.len() {
            if masks.iter().all(|m| cluster_outside_ok(g, &fs, outer, m)) {
                let emb = Embedding { rotations, outer_face: outer };
                return Ok((true, Some(emb)));
            }
        }
    }
    Ok((false, None))
}

/// Both structural embedding conditions, for every cluster and every
/// non-inside non-root node of the rooted tree: all external cluster paths
/// of a node run on the same side of its pertinent graph, and no cycle of
/// pole-connected skeleton edges wraps around an exposed vertex or a
/// not-fully-inside edge.
pub fn lemma1_conditions_hold(
    g: &Graph,
    rt: &RootedSpqrTree,
    clusters: &[ClusterSpec],
    emb: &Embedding,
) -> Result<bool> {
    Ok(lemma1_violation(g, rt, clusters, emb)?.is_none())
}

/// First violated condition, as (cluster index, node, which condition), for
/// diagnostics.
pub fn lemma1_violation(
    g: &Graph,
    rt: &RootedSpqrTree,
    clusters: &[ClusterSpec],
    emb: &Embedding,
) -> Result<Option<(usize, NodeId, &'static str)>> {
    let fs = trace_faces(g, &emb.rotations);
    for (ci, spec) in clusters.iter().enumerate() {
        let cext_mask = spec.cext_mask();
        for v in 0..rt.tree.nodes.len() {
            if v == rt.root {
                continue;
            }
            if node_inside(rt, v, &spec.mask, &cext_mask) {
                continue;
            }
            if !external_paths_same_side(g, rt, v, &spec.mask, emb, &fs) {
                return Ok(Some((ci, v, "external paths on both sides")));
            }
            if skeleton_cycle_wraps(g, rt, v, &spec.mask, &cext_mask, emb, &fs)? {
                return Ok(Some((ci, v, "skeleton cycle wraps a target")));
            }
        }
    }
    Ok(None)
}

/// Exhaustive check of the structural conditions: does some embedding with
/// the root edge on the outer face satisfy them for the cluster with the
/// given exposure set?
pub fn oracle_lemma1(
    g: &Graph,
    root_edge: EdgeId,
    cluster: &[VertexId],
    cext: &[VertexId],
    budget: u128,
) -> Result<bool> {
    let needed = rotation_system_count(g);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let tree = build_spqr(g)?;
    let rt = match root_at(g, &tree, tree.q_node_for_edge(root_edge)) {
        Ok(rt) => rt,
        Err(Error::NonPlanar) => return Ok(false),
        Err(e) => return Err(e),
    };
    let mut mask = vec![false; g.num_vertices()];
    for &v in cluster {
        mask[v] = true;
    }
    let spec = ClusterSpec::new("C", mask, cext.to_vec());
    for rotations in EmbeddingEnumerator::new(g) {
        if !is_genus_zero(g, &rotations) {
            continue;
        }
        let fs = trace_faces(g, &rotations);
        for outer in 0..fs.faces.len() {
            let has_root_dart = fs.faces[outer]
                .boundary
                .iter()
                .any(|&d| crate::embed::dart_edge(d) == root_edge);
            if !has_root_dart {
                continue;
            }
            let emb = Embedding { rotations: rotations.clone(), outer_face: outer };
            if lemma1_conditions_hold(g, &rt, std::slice::from_ref(&spec), &emb)? {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Exhaustive counterpart restricted to embeddings with a fixed edge on the
/// outer face: definitional c-planarity for one cluster plus exposure.
pub fn oracle_c_planar_with_root_edge(
    g: &Graph,
    root_edge: EdgeId,
    cluster: &[VertexId],
    cext: &[VertexId],
    budget: u128,
) -> Result<bool> {
    let needed = rotation_system_count(g);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let mut mask = vec![false; g.num_vertices()];
    for &v in cluster {
        mask[v] = true;
    }
    for rotations in EmbeddingEnumerator::new(g) {
        if !is_genus_zero(g, &rotations) {
            continue;
        }
        let fs = trace_faces(g, &rotations);
        for outer in 0..fs.faces.len() {
            if !fs.faces[outer]
                .boundary
                .iter()
                .any(|&d| crate::embed::dart_edge(d) == root_edge)
            {
                continue;
            }
            if cluster_outside_ok(g, &fs, outer, &mask)
                && crate::embed::cluster_exposure_ok(g, &fs, outer, &mask, cext)
            {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

fn node_inside(rt: &RootedSpqrTree, v: NodeId, mask: &[bool], cext_mask: &[bool]) -> bool {
    let (s, t) = rt.poles[v];
    (0..mask.len())
        .all(|x| !rt.pert_vertices[v][x] || (mask[x] && (!cext_mask[x] || x == s || x == t)))
}

/// Enumerate all external cluster paths of `v` and check that the cycles
/// they close with a fixed pole-to-pole path inside the pertinent graph all
/// have the same orientation.
fn external_paths_same_side(
    g: &Graph,
    rt: &RootedSpqrTree,
    v: NodeId,
    mask: &[bool],
    emb: &Embedding,
    fs: &FaceStructure,
) -> bool {
    let (s, t) = rt.poles[v];
    let Some(q_path) = path_inside(g, rt, v, s, t, None) else {
        return true;
    };
    let mut orientation: Option<bool> = None;
    // DFS over simple cluster paths from t to s avoiding the pertinent
    // graph except at the poles.
    let ok = |x: VertexId| mask[x] && (x == s || x == t || !rt.pert_vertices[v][x]);
    if !ok(s) || !ok(t) {
        return true;
    }
    let inc = g.incidence();
    let mut stack: Vec<(VertexId, Vec<EdgeId>, Vec<bool>)> = Vec::new();
    let mut seen0 = vec![false; g.num_vertices()];
    seen0[t] = true;
    stack.push((t, Vec::new(), seen0));
    while let Some((x, path, seen)) = stack.pop() {
        for &e in &inc[x] {
            if rt.pert_edges[v][e] {
                continue;
            }
            let y = g.other_end(e, x);
            if y == s {
                if x == t && path.is_empty() && rt.pert_edges[v][e] {
                    continue;
                }
                let mut full = path.clone();
                full.push(e);
                // darts of the external path t -> s, then q s -> t
                let mut darts = Vec::new();
                let mut at = t;
                for &pe in &full {
                    darts.push(dart_from(g, pe, at));
                    at = g.other_end(pe, at);
                }
                let mut at2 = s;
                for &qe in &q_path {
                    darts.push(dart_from(g, qe, at2));
                    at2 = g.other_end(qe, at2);
                }
                let o = cycle_outer_on_left(g, fs, emb.outer_face, &darts);
                match orientation {
                    None => orientation = Some(o),
                    Some(prev) if prev != o => return false,
                    _ => {}
                }
                continue;
            }
            if !ok(y) || seen[y] {
                continue;
            }
            let mut seen2 = seen.clone();
            seen2[y] = true;
            let mut p2 = path.clone();
            p2.push(e);
            stack.push((y, p2, seen2));
        }
    }
    true
}

/// Any path between two vertices using only pertinent edges of `v`,
/// optionally restricted to cluster vertices.
fn path_inside(
    g: &Graph,
    rt: &RootedSpqrTree,
    v: NodeId,
    from: VertexId,
    to: VertexId,
    mask: Option<&[bool]>,
) -> Option<Vec<EdgeId>> {
    let allowed = |x: VertexId| mask.map_or(true, |m| m[x]);
    if !allowed(from) || !allowed(to) {
        return None;
    }
    let inc = g.incidence();
    let mut prev: Vec<Option<EdgeId>> = vec![None; g.num_vertices()];
    let mut seen = vec![false; g.num_vertices()];
    seen[from] = true;
    let mut queue = std::collections::VecDeque::from([from]);
    while let Some(x) = queue.pop_front() {
        for &e in &inc[x] {
            if !rt.pert_edges[v][e] {
                continue;
            }
            let y = g.other_end(e, x);
            if !seen[y] && allowed(y) {
                seen[y] = true;
                prev[y] = Some(e);
                if y == to {
                    let mut path = Vec::new();
                    let mut at = to;
                    while at != from {
                        let e = prev[at].unwrap();
                        path.push(e);
                        at = g.other_end(e, at);
                    }
                    path.reverse();
                    return Some(path);
                }
                queue.push_back(y);
            }
        }
    }
    None
}

/// All simple external cluster paths of `v` from `from` to `to` (pole to
/// pole, internally avoiding the pertinent graph, cluster vertices only).
fn all_external_cluster_paths(
    g: &Graph,
    rt: &RootedSpqrTree,
    v: NodeId,
    mask: &[bool],
    from: VertexId,
    to: VertexId,
) -> Vec<Vec<EdgeId>> {
    let (s, t) = rt.poles[v];
    let ok = |x: VertexId| mask[x] && (x == s || x == t || !rt.pert_vertices[v][x]);
    let mut out = Vec::new();
    if !ok(from) || !ok(to) {
        return out;
    }
    let inc = g.incidence();
    let mut stack: Vec<(VertexId, Vec<EdgeId>, Vec<bool>)> = Vec::new();
    let mut seen0 = vec![false; g.num_vertices()];
    seen0[from] = true;
    stack.push((from, Vec::new(), seen0));
    while let Some((x, path, seen)) = stack.pop() {
        for &e in &inc[x] {
            if rt.pert_edges[v][e] {
                continue;
            }
            let y = g.other_end(e, x);
            if y == to {
                let mut full = path.clone();
                full.push(e);
                out.push(full);
                continue;
            }
            if !ok(y) || seen[y] {
                continue;
            }
            let mut seen2 = seen.clone();
            seen2[y] = true;
            let mut p2 = path.clone();
            p2.push(e);
            stack.push((y, p2, seen2));
        }
    }
    out
}

/// Does some cycle of pole-connected skeleton edges of `v` enclose, in the
/// given embedding, an exposed vertex or the territory of an edge that is
/// not fully inside the cluster?
fn skeleton_cycle_wraps(
    g: &Graph,
    rt: &RootedSpqrTree,
    v: NodeId,
    mask: &[bool],
    cext_mask: &[bool],
    emb: &Embedding,
    fs: &FaceStructure,
) -> Result<bool> {
    if rt.kind(v) == NodeKind::Q {
        return Ok(false);
    }
    let node = &rt.tree.nodes[v];
    let verts = node.vertices();
    let to_local: std::collections::BTreeMap<VertexId, usize> =
        verts.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let local_edges: Vec<(usize, usize)> =
        node.edges.iter().map(|e| (to_local[&e.u], to_local[&e.v])).collect();
    let local = Graph::new(verts.len(), local_edges)?;
    let root_ei = rt.root_edge[v];

    // Cycle eligibility: the child has a pole-to-pole cluster path; the
    // root edge participates when the node has an external cluster path.
    let eligible: Vec<bool> = (0..local.num_edges())
        .map(|ei| {
            if Some(ei) == root_ei {
                has_external_path(g, rt, v, mask)
            } else {
                match node.edges[ei].tag {
                    EdgeTag::Virtual { twin_node, .. } => {
                        crate::labeling::cluster_path_between_poles(g, rt, twin_node, mask)
                    }
                    EdgeTag::Real(_) => unreachable!("internal skeletons are all-virtual"),
                }
            }
        })
        .collect();
    let child_of = |ei: usize| -> Option<NodeId> {
        if Some(ei) == root_ei {
            return None;
        }
        match node.edges[ei].tag {
            EdgeTag::Virtual { twin_node, .. } => Some(twin_node),
            EdgeTag::Real(_) => None,
        }
    };
    let edge_inside = |ei: usize| -> bool {
        match child_of(ei) {
            Some(c) => node_inside(rt, c, mask, cext_mask),
            None => true, // the parent side is never an enclosure target
        }
    };

    for cycle in crate::labeling::simple_cycles(&local, &eligible) {
        // Expand the skeleton cycle into simple cluster cycles of the graph.
        // Child pieces are unique up to homotopy inside their territory; the
        // parent-side piece is not (the outer face lives there), so every
        // external cluster path realizes a distinct cycle to test.
        let mut on_cycle_edge = vec![false; local.num_edges()];
        let mut pieces: Vec<Option<Vec<EdgeId>>> = Vec::new();
        let mut hops: Vec<(VertexId, VertexId)> = Vec::new();
        let mut root_hop = None;
        let mut ok = true;
        for (k, &d) in cycle.iter().enumerate() {
            let ei = crate::embed::dart_edge(d);
            on_cycle_edge[ei] = true;
            let from = verts[crate::embed::dart_tail(&local, d)];
            let to = verts[crate::embed::dart_head(&local, d)];
            hops.push((from, to));
            if Some(ei) == root_ei {
                root_hop = Some(k);
                pieces.push(None);
                continue;
            }
            let child = child_of(ei).expect("non-root skeleton edge has a child");
            match path_inside(g, rt, child, from, to, Some(mask)) {
                Some(p) => pieces.push(Some(p)),
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if !ok {
            continue;
        }
        let root_paths: Vec<Option<Vec<EdgeId>>> = match root_hop {
            None => vec![None],
            Some(k) => {
                let (from, to) = hops[k];
                all_external_cluster_paths(g, rt, v, mask, from, to)
                    .into_iter()
                    .map(Some)
                    .collect()
            }
        };
        for root_path in &root_paths {
            let mut darts: Vec<usize> = Vec::new();
            for (k, piece) in pieces.iter().enumerate() {
                let path = match piece {
                    Some(p) => p,
                    None => root_path.as_ref().expect("root piece realization"),
                };
                let mut at = hops[k].0;
                for &pe in path {
                    darts.push(dart_from(g, pe, at));
                    at = g.other_end(pe, at);
                }
            }
            let interior = cycle_interior(g, fs, emb.outer_face, &darts);

            // Exposed skeleton vertices strictly inside.
            let mut on_cycle_v = vec![false; local.num_vertices()];
            for &d in &cycle {
                on_cycle_v[crate::embed::dart_tail(&local, d)] = true;
            }
            for (lx, &x) in verts.iter().enumerate() {
                if on_cycle_v[lx] || !cext_mask[x] {
                    continue;
                }
                if let Some(&f) = fs.faces_at[x].first() {
                    if interior[f] {
                        return Ok(true);
                    }
                }
            }
            // Territories of non-inside edges strictly inside.
            for ei in 0..local.num_edges() {
                if on_cycle_edge[ei] || Some(ei) == root_ei || edge_inside(ei) {
                    continue;
                }
                let child = child_of(ei).expect("non-root skeleton edge has a child");
                if let Some(f) = edge_probe_face(g, rt, child, fs) {
                    if interior[f] {
                        return Ok(true);
                    }
                }
            }
        }
    }
    Ok(false)
}

/// A face inside the territory of a child: at an internal pertinent vertex
/// when one exists, else alongside its single edge.
fn edge_probe_face(
    g: &Graph,
    rt: &RootedSpqrTree,
    child: NodeId,
    fs: &FaceStructure,
) -> Option<usize> {
    let (s, t) = rt.poles[child];
    for x in 0..g.num_vertices() {
        if rt.pert_vertices[child][x] && x != s && x != t {
            return fs.faces_at[x].first().copied();
        }
    }
    let e = (0..rt.graph_edges).find(|&e| rt.pert_edges[child][e])?;
    Some(fs.face_of_dart[crate::embed::dart(e, 0)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Cluster;

    fn octahedron() -> Graph {
        Graph::new(
            6,
            vec![
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 0),
                (4, 0),
                (4, 1),
                (4, 2),
                (4, 3),
                (5, 0),
                (5, 1),
                (5, 2),
                (5, 3),
            ],
        )
        .unwrap()
    }

    #[test]
    fn triangle_pair_cluster_is_c_planar() {
        let g = Graph::new(3, vec![(0, 1), (1, 2), (2, 0)]).unwrap();
        let cg = ClusteredGraph::new(g, vec![Cluster::new("c", vec![0, 1])]).unwrap();
        let (ok, emb) = oracle_c_planar(&cg, DEFAULT_BUDGET).unwrap();
        assert!(ok);
        let emb = emb.unwrap();
        assert!(crate::embed::check_c_planar_embedding(&cg, &emb).unwrap());
    }

    #[test]
    fn octahedron_equator_is_not_c_planar() {
        let cg = ClusteredGraph::new(octahedron(), vec![Cluster::new("eq", vec![0, 1, 2, 3])])
            .unwrap();
        assert_eq!(rotation_system_count(&cg.graph), 46656);
        let (ok, _) = oracle_c_planar(&cg, DEFAULT_BUDGET).unwrap();
        assert!(!ok);
    }

    #[test]
    fn k4_full_cluster_is_c_planar() {
        let g = Graph::new(4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let cg = ClusteredGraph::new(g, vec![Cluster::new("all", vec![0, 1, 2, 3])]).unwrap();
        let (ok, _) = oracle_c_planar(&cg, DEFAULT_BUDGET).unwrap();
        assert!(ok);
    }

    #[test]
    fn budget_is_enforced() {
        let cg = ClusteredGraph::new(octahedron(), vec![Cluster::new("eq", vec![0, 1, 2, 3])])
            .unwrap();
        match oracle_c_planar(&cg, 100) {
            Err(Error::BudgetExceeded { needed, budget }) => {
                assert_eq!(needed, 46656);
                assert_eq!(budget, 100);
            }
            other => panic!("expected budget refusal, got {other:?}"),
        }
    }

    #[test]
    fn nonplanar_graph_is_not_c_planar() {
        let mut edges = Vec::new();
        for i in 0..5 {
            for j in i + 1..5 {
                edges.push((i, j));
            }
        }
        let g = Graph::new(5, edges).unwrap();
        let cg = ClusteredGraph::new(g, vec![Cluster::new("all", (0..5).collect())]).unwrap();
        let (ok, _) = oracle_c_planar(&cg, 10_000_000).unwrap();
        assert!(!ok);
    }
}
