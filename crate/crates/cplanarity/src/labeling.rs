//! Per-node, per-cluster labels over a rooted SPQR-tree: how a connected
//! cluster may wrap around each decomposition node, plus critical clusters
//! and the same/different side constraints at S-nodes.

use crate::embed::{cycle_interior, dart_edge, dart_tail, DartId};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::spqr::{has_external_path, EdgeTag, NodeId, NodeKind, RNodeEmbed, RootedSpqrTree};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Label {
    Inside,
    Outside,
    Border,
    DoubleBorder,
    Inappropriate,
}

impl Label {
    pub fn is_outside(self) -> bool {
        self == Label::Outside
    }
    pub fn is_inside(self) -> bool {
        self == Label::Inside
    }
}

/// Labels of every node for one cluster, plus the root-edge labels (whether
/// each node has an external cluster path).
#[derive(Debug, Clone)]
pub struct LabelTable {
    pub labels: Vec<Label>,
    /// Root-edge label per non-root node: true = inside (an external
    /// cluster path exists), false = outside.
    pub has_ext_path: Vec<bool>,
}

impl LabelTable {
    pub fn label(&self, v: NodeId) -> Label {
        self.labels[v]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SideConstraint {
    Same,
    Different,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Upper,
    Lower,
}

/// Compute the label of every node of the rooted tree for cluster `mask`
/// with exposure set `cext`, bottom-up.
pub fn label_tree(
    g: &Graph,
    rt: &RootedSpqrTree,
    mask: &[bool],
    cext: &[VertexId],
) -> Result<LabelTable> {
    if !crate::graph::induced_subgraph_connected(g, mask) {
        return Err(Error::NotCConnected("cluster for labeling".into()));
    }
    let nn = rt.tree.nodes.len();
    let mut cext_mask = vec![false; g.num_vertices()];
    for &v in cext {
        cext_mask[v] = true;
    }
    let mut labels = vec![Label::Outside; nn];
    let mut has_ext = vec![false; nn];
    for v in 0..nn {
        if v != rt.root {
            has_ext[v] = has_external_path(g, rt, v, mask);
        }
    }

    for v in rt.post_order() {
        if v == rt.root {
            let e = rt.q_edge(v);
            let (a, b) = g.endpoints(e);
            let child = rt.children[v][0];
            labels[v] = if mask[a] && mask[b] {
                match labels[child] {
                    Label::Inside => Label::Inside,
                    Label::Border | Label::Outside => Label::Border,
                    Label::DoubleBorder | Label::Inappropriate => Label::Inappropriate,
                }
            } else {
                labels[child]
            };
            continue;
        }
        labels[v] = label_non_root(g, rt, v, mask, &cext_mask, &labels)?;
    }
    Ok(LabelTable { labels, has_ext_path: has_ext })
}

fn label_non_root(
    g: &Graph,
    rt: &RootedSpqrTree,
    v: NodeId,
    mask: &[bool],
    cext_mask: &[bool],
    labels: &[Label],
) -> Result<Label> {
    let (s, t) = rt.poles[v];

    // Inside: the pertinent graph lies in the cluster and only the poles may
    // be exposed.
    let inside = (0..g.num_vertices()).all(|x| {
        !rt.pert_vertices[v][x] || (mask[x] && (!cext_mask[x] || x == s || x == t))
    });
    if inside {
        return Ok(Label::Inside);
    }
    if rt.children[v].iter().any(|&c| labels[c] == Label::Inappropriate) {
        return Ok(Label::Inappropriate);
    }

    // Node-kind structural inappropriateness, before the outside test: an
    // R-node can be stuck even without a pole-to-pole cluster path.
    match rt.kind(v) {
        NodeKind::P => {
            let (i, b, d) = child_counts(rt, v, labels);
            let border_ok = d == 0 && b <= 1;
            let db_ok = (d == 0 && b == 2) || (d == 1 && i == 0 && b == 0);
            if !border_ok && !db_ok {
                return Ok(Label::Inappropriate);
            }
        }
        NodeKind::R => {
            if r_node_blocked(rt, v, mask, cext_mask, labels)? {
                return Ok(Label::Inappropriate);
            }
        }
        _ => {}
    }

    if !cluster_path_between_poles(g, rt, v, mask) {
        return Ok(Label::Outside);
    }

    Ok(match rt.kind(v) {
        NodeKind::Q => unreachable!("a Q-node is inside or outside"),
        NodeKind::P => {
            let (_, b, d) = child_counts(rt, v, labels);
            if d == 0 && b <= 1 {
                Label::Border
            } else {
                Label::DoubleBorder
            }
        }
        NodeKind::S => {
            if rt.children[v].iter().any(|&c| labels[c] == Label::DoubleBorder) {
                Label::DoubleBorder
            } else {
                Label::Border
            }
        }
        NodeKind::R => {
            let emb = rt.ref_embeds[v].as_ref().expect("R-node reference embedding");
            let left = outer_path_marked(rt, v, emb, &emb.left_outer, mask, cext_mask, labels);
            let right = outer_path_marked(rt, v, emb, &emb.right_outer, mask, cext_mask, labels);
            if left && right {
                Label::DoubleBorder
            } else {
                Label::Border
            }
        }
    })
}

fn child_counts(rt: &RootedSpqrTree, v: NodeId, labels: &[Label]) -> (usize, usize, usize) {
    let mut i = 0;
    let mut b = 0;
    let mut d = 0;
    for &c in &rt.children[v] {
        match labels[c] {
            Label::Inside => i += 1,
            Label::Border => b += 1,
            Label::DoubleBorder => d += 1,
            _ => {}
        }
    }
    (i, b, d)
}

/// Is there a cluster path between the poles inside the pertinent graph
/// (without the root edge)?
pub(crate) fn cluster_path_between_poles(
    g: &Graph,
    rt: &RootedSpqrTree,
    v: NodeId,
    mask: &[bool],
) -> bool {
    let (s, t) = rt.poles[v];
    if !mask[s] || !mask[t] {
        return false;
    }
    let inc = g.incidence();
    let mut seen = vec![false; g.num_vertices()];
    seen[s] = true;
    let mut queue = std::collections::VecDeque::from([s]);
    while let Some(x) = queue.pop_front() {
        for &e in &inc[x] {
            if !rt.pert_edges[v][e] {
                continue;
            }
            let y = g.other_end(e, x);
            if !mask[y] || seen[y] {
                continue;
            }
            if y == t {
                return true;
            }
            seen[y] = true;
            queue.push_back(y);
        }
    }
    false
}

/// Label of the child hanging off skeleton edge `ei` of node `v`.
fn skel_edge_label(rt: &RootedSpqrTree, v: NodeId, ei: usize, labels: &[Label]) -> Label {
    match rt.tree.nodes[v].edges[ei].tag {
        EdgeTag::Virtual { twin_node, .. } => labels[twin_node],
        EdgeTag::Real(_) => unreachable!("internal skeletons are all-virtual"),
    }
}

/// Does an outer pole-to-pole walk of the reference embedding carry a
/// non-inside edge or an exposed vertex other than the poles?
fn outer_path_marked(
    rt: &RootedSpqrTree,
    v: NodeId,
    emb: &RNodeEmbed,
    walk: &[DartId],
    _mask: &[bool],
    cext_mask: &[bool],
    labels: &[Label],
) -> bool {
    let (s, t) = rt.poles[v];
    for &d in walk {
        let ei = dart_edge(d);
        if skel_edge_label(rt, v, ei, labels) != Label::Inside {
            return true;
        }
        let x = emb.from_local[dart_tail(&emb.local, d)];
        if cext_mask[x] && x != s && x != t {
            return true;
        }
    }
    false
}

/// Same check on the left (or right) outer walk, for callers that hold a
/// finished label table.
pub fn outer_walk_marked(
    rt: &RootedSpqrTree,
    v: NodeId,
    left: bool,
    table: &LabelTable,
    cext_mask: &[bool],
) -> bool {
    let emb = rt.ref_embeds[v].as_ref().expect("R-node reference embedding");
    let walk = if left { &emb.left_outer } else { &emb.right_outer };
    outer_path_marked(rt, v, emb, walk, &[], cext_mask, &table.labels)
}

/// Label of the child behind skeleton edge `ei` of `v`, for callers outside
/// this module.
pub fn skel_edge_child_label(rt: &RootedSpqrTree, v: NodeId, ei: usize, table: &LabelTable) -> Label {
    skel_edge_label(rt, v, ei, &table.labels)
}

/// The R-node obstruction: a simple cycle of non-outside edges in the
/// skeleton without its root edge that carries a double-border edge or
/// encloses an exposed vertex or a non-inside edge in the reference
/// embedding.
fn r_node_blocked(
    rt: &RootedSpqrTree,
    v: NodeId,
    mask: &[bool],
    cext_mask: &[bool],
    labels: &[Label],
) -> Result<bool> {
    let _ = mask;
    let emb = rt.ref_embeds[v].as_ref().expect("R-node reference embedding");
    let root_ei = rt.root_edge[v].expect("non-root R-node");
    let nloc = emb.local.num_vertices();
    let edge_label = |ei: usize| skel_edge_label(rt, v, ei, labels);
    let usable: Vec<bool> = (0..emb.local.num_edges())
        .map(|ei| ei != root_ei && edge_label(ei) != Label::Outside)
        .collect();

    let fs = emb.faces();
    for cycle in simple_cycles(&emb.local, &usable) {
        let has_db = cycle.iter().any(|&d| edge_label(dart_edge(d)) == Label::DoubleBorder);
        if has_db {
            return Ok(true);
        }
        let interior = cycle_interior(&emb.local, &fs, emb.outer_face, &cycle);
        let mut on_cycle_v = vec![false; nloc];
        let mut on_cycle_e = vec![false; emb.local.num_edges()];
        for &d in &cycle {
            on_cycle_v[dart_tail(&emb.local, d)] = true;
            on_cycle_e[dart_edge(d)] = true;
        }
        // Enclosed exposed vertices.
        for x in 0..nloc {
            if on_cycle_v[x] || !cext_mask[emb.from_local[x]] {
                continue;
            }
            if let Some(&f) = fs.faces_at[x].first() {
                if interior[f] {
                    return Ok(true);
                }
            }
        }
        // Enclosed non-inside edges (the root edge is absent from the
        // reference embedding and is skipped).
        for ei in 0..emb.local.num_edges() {
            if ei == root_ei || on_cycle_e[ei] || edge_label(ei) == Label::Inside {
                continue;
            }
            let f = fs.face_of_dart[crate::embed::dart(ei, 0)];
            if interior[f] {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// All simple cycles of length three or more over the usable edges of a
/// local graph, as dart sequences. Each cycle is enumerated once, anchored
/// at its smallest vertex. Length-two cycles of parallel edges are appended
/// separately.
pub(crate) fn simple_cycles(local: &Graph, usable: &[bool]) -> Vec<Vec<DartId>> {
    let n = local.num_vertices();
    let inc = local.incidence();
    let mut out = Vec::new();
    for anchor in 0..n {
        // Paths anchor..x with internal vertices > anchor; closing edge back
        // to the anchor yields a cycle. Dedup by requiring the first edge id
        // to be smaller than the closing edge id.
        let mut stack: Vec<(VertexId, Vec<DartId>, Vec<bool>)> = Vec::new();
        let mut visited0 = vec![false; n];
        visited0[anchor] = true;
        stack.push((anchor, Vec::new(), visited0));
        while let Some((x, path, visited)) = stack.pop() {
            for &e in &inc[x] {
                if !usable[e] {
                    continue;
                }
                if let Some(&first) = path.first() {
                    if dart_edge(first) == e {
                        continue;
                    }
                }
                let y = local.other_end(e, x);
                let d = crate::embed::dart_from(local, e, x);
                if y == anchor {
                    if path.len() >= 2 && dart_edge(path[0]) < e {
                        let mut cyc = path.clone();
                        cyc.push(d);
                        out.push(cyc);
                    }
                    continue;
                }
                if y < anchor || visited[y] {
                    continue;
                }
                let mut v2 = visited.clone();
                v2[y] = true;
                let mut p2 = path.clone();
                p2.push(d);
                stack.push((y, p2, v2));
            }
        }
    }
    // Parallel pairs form length-two cycles.
    for e1 in 0..local.num_edges() {
        if !usable[e1] {
            continue;
        }
        let (u, v) = local.endpoints(e1);
        for e2 in e1 + 1..local.num_edges() {
            if !usable[e2] {
                continue;
            }
            let (x, y) = local.endpoints(e2);
            if (x, y) == (u, v) || (x, y) == (v, u) {
                out.push(vec![
                    crate::embed::dart_from(local, e1, u),
                    crate::embed::dart_from(local, e2, v),
                ]);
            }
        }
    }
    out
}

/// Clusters that are border for the S-node and have an external path.
pub fn critical_clusters(
    _g: &Graph,
    rt: &RootedSpqrTree,
    labels: &[LabelTable],
    v: NodeId,
) -> Vec<usize> {
    debug_assert_eq!(rt.kind(v), NodeKind::S);
    labels
        .iter()
        .enumerate()
        .filter(|(_, t)| t.labels[v] == Label::Border && t.has_ext_path[v])
        .map(|(i, _)| i)
        .collect()
}

/// Same iff a single path can serve as an external path for both clusters,
/// i.e. one exists inside their intersection.
pub fn side_constraint(
    g: &Graph,
    rt: &RootedSpqrTree,
    v: NodeId,
    mask1: &[bool],
    mask2: &[bool],
) -> SideConstraint {
    let both: Vec<bool> = mask1.iter().zip(mask2).map(|(&a, &b)| a && b).collect();
    if has_external_path(g, rt, v, &both) {
        SideConstraint::Same
    } else {
        SideConstraint::Different
    }
}

/// Deterministic 2-coloring of the critical clusters: the first critical
/// cluster takes the upper half; same constraints copy the side, different
/// constraints flip it. An inconsistent assignment rejects the root.
pub fn assign_sides(
    criticals: &[usize],
    constraint: impl Fn(usize, usize) -> SideConstraint,
) -> Option<std::collections::BTreeMap<usize, Side>> {
    let mut sides = std::collections::BTreeMap::new();
    if criticals.is_empty() {
        return Some(sides);
    }
    let first = criticals[0];
    sides.insert(first, Side::Upper);
    for &c in &criticals[1..] {
        let side = match constraint(first, c) {
            SideConstraint::Same => Side::Upper,
            SideConstraint::Different => Side::Lower,
        };
        sides.insert(c, side);
    }
    // Verify every pair; the constraint relation is total on criticals.
    for (i, &a) in criticals.iter().enumerate() {
        for &b in &criticals[i + 1..] {
            let want_same = constraint(a, b) == SideConstraint::Same;
            if (sides[&a] == sides[&b]) != want_same {
                return None;
            }
        }
    }
    Some(sides)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spqr::{build_spqr, root_at};

    fn mask_of(n: usize, vs: &[usize]) -> Vec<bool> {
        let mut m = vec![false; n];
        for &v in vs {
            m[v] = true;
        }
        m
    }

    #[test]
    fn q_nodes_inside_iff_both_ends_in_cluster() {
        let g = Graph::new(4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let t = build_spqr(&g).unwrap();
        let rt = root_at(&g, &t, t.q_node_for_edge(0)).unwrap();
        let table = label_tree(&g, &rt, &mask_of(4, &[2, 3]), &[]).unwrap();
        let q23 = t.q_node_for_edge(5); // edge (2,3)
        assert_eq!(table.label(q23), Label::Inside);
        let q02 = t.q_node_for_edge(1); // edge (0,2)
        assert_eq!(table.label(q02), Label::Outside);
    }

    #[test]
    fn c5_s_node_is_outside_when_poles_leave_cluster() {
        let c5 = Graph::new(5, vec![(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        let t = build_spqr(&c5).unwrap();
        let rt = root_at(&c5, &t, t.q_node_for_edge(3)).unwrap();
        let s = (0..t.nodes.len()).find(|&v| rt.kind(v) == NodeKind::S).unwrap();
        let table = label_tree(&c5, &rt, &mask_of(5, &[0, 1, 2]), &[]).unwrap();
        assert_eq!(table.label(s), Label::Outside);
    }

    #[test]
    fn theta_inside_branch_is_border_at_p() {
        let g = Graph::new(4, vec![(0, 1), (0, 2), (2, 1), (0, 3), (3, 1)]).unwrap();
        let t = build_spqr(&g).unwrap();
        let rt = root_at(&g, &t, t.q_node_for_edge(0)).unwrap();
        let table = label_tree(&g, &rt, &mask_of(4, &[0, 1, 2]), &[]).unwrap();
        let p = (0..t.nodes.len()).find(|&v| rt.kind(v) == NodeKind::P).unwrap();
        assert_eq!(table.label(p), Label::Border);
        assert_eq!(table.label(rt.root), Label::Border);
        assert!(table.labels.iter().all(|&l| l != Label::Inappropriate));
    }

    #[test]
    fn octahedron_equator_r_node_inappropriate_for_every_root() {
        let g = Graph::new(
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
        .unwrap();
        let t = build_spqr(&g).unwrap();
        let mask = mask_of(6, &[0, 1, 2, 3]);
        for e in 0..g.num_edges() {
            let rt = root_at(&g, &t, t.q_node_for_edge(e)).unwrap();
            let table = label_tree(&g, &rt, &mask, &[]).unwrap();
            assert_eq!(
                table.label(rt.root),
                Label::Inappropriate,
                "root at edge {e}"
            );
        }
    }

    #[test]
    fn wheel_rim_labels_are_not_inappropriate() {
        let g = Graph::new(
            5,
            vec![(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (2, 3), (3, 4), (4, 1)],
        )
        .unwrap();
        let t = build_spqr(&g).unwrap();
        let rt = root_at(&g, &t, t.q_node_for_edge(0)).unwrap();
        let table = label_tree(&g, &rt, &mask_of(5, &[1, 2, 3, 4]), &[]).unwrap();
        assert_ne!(table.label(rt.root), Label::Inappropriate);
    }

    #[test]
    fn inside_cluster_never_critical() {
        let g = Graph::new(5, vec![(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        let t = build_spqr(&g).unwrap();
        let rt = root_at(&g, &t, t.q_node_for_edge(0)).unwrap();
        let s = (0..t.nodes.len()).find(|&v| rt.kind(v) == NodeKind::S).unwrap();
        // The entire vertex set: the S-node is inside, never critical.
        let table = label_tree(&g, &rt, &vec![true; 5], &[]).unwrap();
        assert_eq!(table.label(s), Label::Inside);
        assert!(critical_clusters(&g, &rt, std::slice::from_ref(&table), s).is_empty());
    }

    /// Two clusters wrapping an S-node through disjoint outer branches get a
    /// different constraint; a cluster always gets a same constraint with
    /// itself.
    #[test]
    fn side_constraints_and_assignment() {
        // vertices: 0,1 poles; branch X: 0-2-1; branch Y: 0-3-1;
        // branch M: 0-4, 4-5 / 4-6-5 (parallel part), 5-1.
        let g = Graph::new(
            7,
            vec![
                (0, 2),
                (2, 1),
                (0, 3),
                (3, 1),
                (0, 4),
                (4, 5),
                (4, 6),
                (6, 5),
                (5, 1),
            ],
        )
        .unwrap();
        let t = build_spqr(&g).unwrap();
        let rt = root_at(&g, &t, t.q_node_for_edge(0)).unwrap();
        // M is the S-node with a P-descendant.
        let m = (0..t.nodes.len())
            .find(|&v| {
                rt.kind(v) == NodeKind::S
                    && rt.children[v].iter().any(|&c| rt.kind(c) == NodeKind::P)
            })
            .expect("chain S-node");
        let c1 = mask_of(7, &[0, 1, 2, 4, 5]);
        let c2 = mask_of(7, &[0, 1, 3, 4, 5]);
        let t1 = label_tree(&g, &rt, &c1, &[]).unwrap();
        let t2 = label_tree(&g, &rt, &c2, &[]).unwrap();
        assert_eq!(t1.label(m), Label::Border);
        assert_eq!(t2.label(m), Label::Border);
        let tables = vec![t1, t2];
        assert_eq!(critical_clusters(&g, &rt, &tables, m), vec![0, 1]);
        assert_eq!(side_constraint(&g, &rt, m, &c1, &c1), SideConstraint::Same);
        assert_eq!(
            side_constraint(&g, &rt, m, &c1, &c2),
            SideConstraint::Different
        );
        let sides = assign_sides(&[0, 1], |a, b| {
            if a == b {
                SideConstraint::Same
            } else {
                SideConstraint::Different
            }
        })
        .unwrap();
        assert_eq!(sides[&0], Side::Upper);
        assert_eq!(sides[&1], Side::Lower);
    }

    #[test]
    fn pairwise_different_triple_is_unsatisfiable() {
        let sides = assign_sides(&[0, 1, 2], |a, b| {
            if a == b {
                SideConstraint::Same
            } else {
                SideConstraint::Different
            }
        });
        assert!(sides.is_none());
    }
}
