//! SPQR-trees of 2-connected multigraphs: recursive split decomposition into
//! triconnected components, Q-node leaves per real edge, rooting with poles
//! and pertinent-graph bookkeeping, reference embeddings for R-node
//! skeletons, and external-path queries.

use crate::embed::{
    dart_reverse, dart_tail, planar_embed, trace_faces, DartId, FaceStructure,
};
use crate::error::{Error, Result};
use crate::graph::{bc_tree, is_connected, EdgeId, Graph, VertexId};

pub type NodeId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeKind {
    S,
    P,
    Q,
    R,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeTag {
    Real(EdgeId),
    Virtual { twin_node: NodeId, twin_edge: usize },
}

#[derive(Debug, Clone, Copy)]
pub struct SkelEdge {
    pub u: VertexId,
    pub v: VertexId,
    pub tag: EdgeTag,
}

#[derive(Debug, Clone)]
pub struct SpqrNode {
    pub kind: NodeKind,
    pub edges: Vec<SkelEdge>,
}

impl SpqrNode {
    pub fn vertices(&self) -> Vec<VertexId> {
        let mut vs: Vec<VertexId> = self.edges.iter().flat_map(|e| [e.u, e.v]).collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }
}

#[derive(Debug, Clone)]
pub struct SpqrTree {
    pub nodes: Vec<SpqrNode>,
}

impl SpqrTree {
    pub fn q_node_for_edge(&self, e: EdgeId) -> NodeId {
        self.nodes
            .iter()
            .position(|n| {
                n.kind == NodeKind::Q && n.edges.iter().any(|s| s.tag == EdgeTag::Real(e))
            })
            .expect("every real edge has a Q-node")
    }

    pub fn neighbors(&self, v: NodeId) -> Vec<(usize, NodeId)> {
        self.nodes[v]
            .edges
            .iter()
            .enumerate()
            .filter_map(|(i, e)| match e.tag {
                EdgeTag::Virtual { twin_node, .. } => Some((i, twin_node)),
                EdgeTag::Real(_) => None,
            })
            .collect()
    }
}

#[derive(Debug, Clone)]
struct WorkEdge {
    u: VertexId,
    v: VertexId,
    tag: WorkTag,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum WorkTag {
    Real(EdgeId),
    Link(usize),
}

/// Separation classes of the component edges with respect to the pair
/// {a, b}: edges are equivalent when joined by a path avoiding a and b
/// internally. Returned in order of the smallest member index.
fn separation_classes(edges: &[WorkEdge], a: VertexId, b: VertexId) -> Vec<Vec<usize>> {
    let m = edges.len();
    let mut parent: Vec<usize> = (0..m).collect();
    fn find(p: &mut Vec<usize>, x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    let mut at: std::collections::BTreeMap<VertexId, usize> = Default::default();
    for (i, e) in edges.iter().enumerate() {
        for w in [e.u, e.v] {
            if w == a || w == b {
                continue;
            }
            if let Some(&j) = at.get(&w) {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri.max(rj)] = ri.min(rj);
                }
            } else {
                at.insert(w, i);
            }
        }
    }
    let mut classes: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for i in 0..m {
        let r = find(&mut parent, i);
        classes.entry(r).or_default().push(i);
    }
    classes.into_values().collect()
}

fn comp_vertices(edges: &[WorkEdge]) -> Vec<VertexId> {
    let mut vs: Vec<VertexId> = edges.iter().flat_map(|e| [e.u, e.v]).collect();
    vs.sort_unstable();
    vs.dedup();
    vs
}

fn classify(edges: &[WorkEdge]) -> NodeKind {
    let vs = comp_vertices(edges);
    if vs.len() == 2 {
        return NodeKind::P;
    }
    let mut deg: std::collections::BTreeMap<VertexId, usize> = Default::default();
    for e in edges {
        *deg.entry(e.u).or_default() += 1;
        *deg.entry(e.v).or_default() += 1;
    }
    if deg.values().all(|&d| d == 2) {
        NodeKind::S
    } else {
        NodeKind::R
    }
}

/// Split one component at a valid split pair, if any. Returns the resulting
/// components and chains new links through `next_link`.
fn try_split(edges: &Vec<WorkEdge>, next_link: &mut usize) -> Option<Vec<Vec<WorkEdge>>> {
    let vs = comp_vertices(edges);
    if vs.len() == 2 {
        return None; // bond, terminal
    }
    for i in 0..vs.len() {
        for j in i + 1..vs.len() {
            let (a, b) = (vs[i], vs[j]);
            let classes = separation_classes(edges, a, b);
            let k = classes.len();
            if k < 2 {
                continue;
            }
            let nontrivial: Vec<&Vec<usize>> =
                classes.iter().filter(|c| c.len() >= 2).collect();
            if k == 2 {
                if nontrivial.len() < 2 {
                    continue;
                }
                let link = *next_link;
                *next_link += 1;
                let mut out = Vec::new();
                for class in &classes {
                    let mut comp: Vec<WorkEdge> =
                        class.iter().map(|&i| edges[i].clone()).collect();
                    comp.push(WorkEdge { u: a, v: b, tag: WorkTag::Link(link) });
                    out.push(comp);
                }
                return Some(out);
            }
            // k >= 3: one bond absorbs the direct edges, one component per
            // nontrivial class.
            if nontrivial.is_empty() {
                continue;
            }
            let mut bond: Vec<WorkEdge> = classes
                .iter()
                .filter(|c| c.len() == 1)
                .map(|c| edges[c[0]].clone())
                .collect();
            let mut out = Vec::new();
            for class in &classes {
                if class.len() < 2 {
                    continue;
                }
                let link = *next_link;
                *next_link += 1;
                let mut comp: Vec<WorkEdge> =
                    class.iter().map(|&i| edges[i].clone()).collect();
                comp.push(WorkEdge { u: a, v: b, tag: WorkTag::Link(link) });
                bond.push(WorkEdge { u: a, v: b, tag: WorkTag::Link(link) });
                out.push(comp);
            }
            out.push(bond);
            return Some(out);
        }
    }
    None
}

/// Build the unique SPQR-tree of a 2-connected multigraph with at least
/// three edges. Q-nodes are appended after the internal nodes, ordered by
/// their real edge id.
pub fn build_spqr(g: &Graph) -> Result<SpqrTree> {
    if g.num_edges() < 3 {
        return Err(Error::InvalidInstance("SPQR-tree needs at least 3 edges".into()));
    }
    if !is_connected(g) {
        return Err(Error::NotTwoConnected);
    }
    let bc = bc_tree(g)?;
    if bc.blocks.len() != 1 || !bc.cut_vertices.is_empty() {
        return Err(Error::NotTwoConnected);
    }

    let all: Vec<WorkEdge> = g
        .edges()
        .iter()
        .enumerate()
        .map(|(e, &(u, v))| WorkEdge { u, v, tag: WorkTag::Real(e) })
        .collect();
    let mut next_link = 0usize;
    let mut stack = vec![all];
    let mut finals: Vec<Vec<WorkEdge>> = Vec::new();
    while let Some(comp) = stack.pop() {
        match try_split(&comp, &mut next_link) {
            Some(parts) => stack.extend(parts),
            None => finals.push(comp),
        }
    }

    // Merge adjacent components of equal kind S or P along their link.
    let mut kind: Vec<NodeKind> = finals.iter().map(|c| classify(c)).collect();
    let mut alive: Vec<bool> = vec![true; finals.len()];
    loop {
        let mut merged = false;
        let mut link_at: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for (ci, comp) in finals.iter().enumerate() {
            if !alive[ci] {
                continue;
            }
            for e in comp {
                if let WorkTag::Link(l) = e.tag {
                    link_at.entry(l).or_default().push(ci);
                }
            }
        }
        for (l, comps) in &link_at {
            if comps.len() != 2 {
                return Err(Error::Internal(format!("link {l} not between two components")));
            }
            let (x, y) = (comps[0], comps[1]);
            if x != y
                && kind[x] == kind[y]
                && matches!(kind[x], NodeKind::S | NodeKind::P)
            {
                let mut moved: Vec<WorkEdge> = finals[y]
                    .iter()
                    .filter(|e| e.tag != WorkTag::Link(*l))
                    .cloned()
                    .collect();
                finals[x].retain(|e| e.tag != WorkTag::Link(*l));
                finals[x].append(&mut moved);
                alive[y] = false;
                kind[x] = classify(&finals[x]);
                merged = true;
                break;
            }
        }
        if !merged {
            break;
        }
    }

    let internal: Vec<(Vec<WorkEdge>, NodeKind)> = finals
        .into_iter()
        .zip(kind)
        .zip(alive)
        .filter(|&(_, a)| a)
        .map(|((c, k), _)| (c, k))
        .collect();

    // Assemble nodes: internal components first, then Q-nodes by edge id.
    let num_internal = internal.len();
    let mut nodes: Vec<SpqrNode> = internal
        .iter()
        .map(|(c, k)| SpqrNode {
            kind: *k,
            edges: c
                .iter()
                .map(|e| SkelEdge {
                    u: e.u,
                    v: e.v,
                    tag: EdgeTag::Real(usize::MAX), // placeholder, fixed below
                })
                .collect(),
        })
        .collect();

    // Resolve links between internal nodes.
    let mut link_slots: std::collections::BTreeMap<usize, Vec<(NodeId, usize)>> =
        Default::default();
    for (ci, (comp, _)) in internal.iter().enumerate() {
        for (ei, e) in comp.iter().enumerate() {
            match e.tag {
                WorkTag::Link(l) => {
                    link_slots.entry(l).or_default().push((ci, ei));
                }
                WorkTag::Real(orig) => {
                    nodes[ci].edges[ei].tag = EdgeTag::Real(orig);
                }
            }
        }
    }
    for (l, slots) in &link_slots {
        if slots.len() != 2 {
            return Err(Error::Internal(format!("dangling link {l}")));
        }
        let (na, ea) = slots[0];
        let (nb, eb) = slots[1];
        nodes[na].edges[ea].tag = EdgeTag::Virtual { twin_node: nb, twin_edge: eb };
        nodes[nb].edges[eb].tag = EdgeTag::Virtual { twin_node: na, twin_edge: ea };
    }

    // Extract Q-nodes: one per real edge, ordered by edge id.
    let mut real_slots: Vec<(NodeId, usize)> = Vec::new();
    for (ni, node) in nodes.iter().enumerate() {
        for (ei, e) in node.edges.iter().enumerate() {
            if let EdgeTag::Real(orig) = e.tag {
                debug_assert_ne!(orig, usize::MAX);
                real_slots.push((ni, ei));
                let _ = orig;
            }
        }
    }
    real_slots.sort_by_key(|&(ni, ei)| match nodes[ni].edges[ei].tag {
        EdgeTag::Real(orig) => orig,
        _ => unreachable!(),
    });
    for (qi, &(ni, ei)) in real_slots.iter().enumerate() {
        let q_id = num_internal + qi;
        let SkelEdge { u, v, tag } = nodes[ni].edges[ei];
        let orig = match tag {
            EdgeTag::Real(orig) => orig,
            _ => unreachable!(),
        };
        nodes.push(SpqrNode {
            kind: NodeKind::Q,
            edges: vec![
                SkelEdge { u, v, tag: EdgeTag::Real(orig) },
                SkelEdge { u, v, tag: EdgeTag::Virtual { twin_node: ni, twin_edge: ei } },
            ],
        });
        nodes[ni].edges[ei].tag = EdgeTag::Virtual { twin_node: q_id, twin_edge: 1 };
    }

    // Degenerate single-component graphs (a bare cycle or bond) still need a
    // tree, which the above already produced: internal node + Q-nodes.
    let tree = SpqrTree { nodes };
    debug_assert!(tree_is_consistent(&tree));
    Ok(tree)
}

fn tree_is_consistent(t: &SpqrTree) -> bool {
    for (ni, n) in t.nodes.iter().enumerate() {
        for (ei, e) in n.edges.iter().enumerate() {
            if let EdgeTag::Virtual { twin_node, twin_edge } = e.tag {
                let back = t.nodes[twin_node].edges[twin_edge].tag;
                if back != (EdgeTag::Virtual { twin_node: ni, twin_edge: ei }) {
                    return false;
                }
            }
        }
    }
    // Adjacent S-S or P-P pairs must have been merged.
    for n in &t.nodes {
        for e in &n.edges {
            if let EdgeTag::Virtual { twin_node, .. } = e.tag {
                let k2 = t.nodes[twin_node].kind;
                if n.kind == k2 && matches!(n.kind, NodeKind::S | NodeKind::P) {
                    return false;
                }
            }
        }
    }
    true
}

/// Re-glue all skeletons along twin virtual edges; the result must be the
/// original edge multiset. Used by tests.
pub fn merged_edge_multiset(t: &SpqrTree) -> Vec<(VertexId, VertexId, EdgeId)> {
    let mut out = Vec::new();
    for n in &t.nodes {
        for e in &n.edges {
            if let EdgeTag::Real(orig) = e.tag {
                out.push((e.u.min(e.v), e.u.max(e.v), orig));
            }
        }
    }
    out.sort_unstable();
    out
}

/// Reference embedding of an R-node skeleton, used to fix the flips.
#[derive(Debug, Clone)]
pub struct RNodeEmbed {
    /// Local graph over the skeleton: local edge id = skeleton edge index.
    pub local: Graph,
    /// original vertex id -> local index
    pub to_local: std::collections::BTreeMap<VertexId, usize>,
    pub from_local: Vec<VertexId>,
    /// Rotations of skel minus the root edge (the root edge is absent).
    pub rotations: Vec<Vec<EdgeId>>,
    pub outer_face: usize,
    /// Outer s-t boundary paths of skel⁻ as local dart walks; left runs
    /// t -> s, right runs s -> t, named from the root-edge dart s -> t.
    pub left_outer: Vec<DartId>,
    pub right_outer: Vec<DartId>,
}

impl RNodeEmbed {
    pub fn faces(&self) -> FaceStructure {
        trace_faces(&self.local, &self.rotations)
    }
}

/// An SPQR-tree rooted at a Q-node, with poles, pertinent sets, S-node
/// chains, and fixed reference embeddings of R-node skeletons.
#[derive(Debug, Clone)]
pub struct RootedSpqrTree {
    pub tree: SpqrTree,
    pub root: NodeId,
    pub parent: Vec<Option<NodeId>>,
    /// Skeleton edge index of the root edge per node (None for the root's
    /// real-edge slot handling; the root Q-node has no root edge).
    pub root_edge: Vec<Option<usize>>,
    pub poles: Vec<(VertexId, VertexId)>,
    /// Children ordered: S-nodes by chain position from s to t, others by
    /// smallest pertinent real edge id.
    pub children: Vec<Vec<NodeId>>,
    /// S-node chains: (from, to, skeleton edge index) per segment, s to t.
    pub chains: Vec<Option<Vec<(VertexId, VertexId, usize)>>>,
    pub pert_vertices: Vec<Vec<bool>>,
    pub pert_edges: Vec<Vec<bool>>,
    pub ref_embeds: Vec<Option<RNodeEmbed>>,
    pub graph_vertices: usize,
    pub graph_edges: usize,
}

impl RootedSpqrTree {
    pub fn node(&self, v: NodeId) -> &SpqrNode {
        &self.tree.nodes[v]
    }

    pub fn kind(&self, v: NodeId) -> NodeKind {
        self.tree.nodes[v].kind
    }

    /// Child hanging off skeleton edge `ei` of `v`, if that edge is not the
    /// root edge.
    pub fn child_at(&self, v: NodeId, ei: usize) -> Option<NodeId> {
        if self.root_edge[v] == Some(ei) {
            return None;
        }
        match self.tree.nodes[v].edges[ei].tag {
            EdgeTag::Virtual { twin_node, .. } => Some(twin_node),
            EdgeTag::Real(_) => None,
        }
    }

    /// Real edge of a Q-node.
    pub fn q_edge(&self, v: NodeId) -> EdgeId {
        match self
            .tree
            .nodes[v]
            .edges
            .iter()
            .find_map(|e| match e.tag {
                EdgeTag::Real(orig) => Some(orig),
                _ => None,
            }) {
            Some(e) => e,
            None => panic!("q_edge on non-Q node"),
        }
    }

    /// Nodes in post-order (children before parents).
    pub fn post_order(&self) -> Vec<NodeId> {
        let mut out = Vec::new();
        let mut stack = vec![(self.root, false)];
        while let Some((v, expanded)) = stack.pop() {
            if expanded {
                out.push(v);
            } else {
                stack.push((v, true));
                for &c in self.children[v].iter().rev() {
                    stack.push((c, false));
                }
            }
        }
        out
    }
}

/// Root the tree at a Q-node and fix every derived structure.
pub fn root_at(g: &Graph, tree: &SpqrTree, q: NodeId) -> Result<RootedSpqrTree> {
    if tree.nodes[q].kind != NodeKind::Q {
        return Err(Error::InvalidInstance("root must be a Q-node".into()));
    }
    let nn = tree.nodes.len();
    let mut parent = vec![None; nn];
    let mut root_edge = vec![None; nn];
    let mut poles = vec![(0, 0); nn];
    let mut order = Vec::new(); // BFS order, top-down

    let root_real = match tree.nodes[q].edges[0].tag {
        EdgeTag::Real(orig) => orig,
        _ => unreachable!("Q skeleton stores the real edge first"),
    };
    let (rs, rt) = g.endpoints(root_real);
    poles[q] = (rs, rt);
    order.push(q);
    let mut queue = std::collections::VecDeque::from([q]);
    let mut seen = vec![false; nn];
    seen[q] = true;
    while let Some(v) = queue.pop_front() {
        for e in tree.nodes[v].edges.iter() {
            if let EdgeTag::Virtual { twin_node, twin_edge } = e.tag {
                if seen[twin_node] {
                    continue;
                }
                seen[twin_node] = true;
                parent[twin_node] = Some(v);
                root_edge[twin_node] = Some(twin_edge);
                order.push(twin_node);
                queue.push_back(twin_node);
            }
        }
    }
    if seen.iter().any(|&b| !b) {
        return Err(Error::Internal("SPQR structure is not a tree".into()));
    }

    // Poles top-down. The child attached at skeleton edge (x, y) takes the
    // pole order of that edge as oriented by the parent's structure.
    let mut chains: Vec<Option<Vec<(VertexId, VertexId, usize)>>> = vec![None; nn];
    for &v in &order {
        let (s, t) = if v == q { (rs, rt) } else { poles[v] };
        poles[v] = (s, t);
        match tree.nodes[v].kind {
            NodeKind::S => {
                let chain = s_chain(&tree.nodes[v], root_edge[v], s, t)?;
                for &(from, to, ei) in &chain {
                    if let EdgeTag::Virtual { twin_node, .. } = tree.nodes[v].edges[ei].tag {
                        poles[twin_node] = (from, to);
                    }
                }
                chains[v] = Some(chain);
            }
            _ => {
                for (ei, e) in tree.nodes[v].edges.iter().enumerate() {
                    if root_edge[v] == Some(ei) {
                        continue;
                    }
                    if let EdgeTag::Virtual { twin_node, .. } = e.tag {
                        if matches!(tree.nodes[v].kind, NodeKind::P | NodeKind::Q) {
                            poles[twin_node] = (s, t);
                        } else {
                            poles[twin_node] = (e.u, e.v);
                        }
                    }
                }
            }
        }
    }

    // Pertinent sets bottom-up.
    let n = g.num_vertices();
    let m = g.num_edges();
    let mut pert_vertices = vec![vec![false; n]; nn];
    let mut pert_edges = vec![vec![false; m]; nn];
    for &v in order.iter().rev() {
        let node = &tree.nodes[v];
        for vtx in node.vertices() {
            pert_vertices[v][vtx] = true;
        }
        for (ei, e) in node.edges.iter().enumerate() {
            if root_edge[v] == Some(ei) {
                continue;
            }
            match e.tag {
                EdgeTag::Real(orig) => {
                    pert_edges[v][orig] = true;
                }
                EdgeTag::Virtual { twin_node, .. } => {
                    let (pv, pe) = (pert_vertices[twin_node].clone(), pert_edges[twin_node].clone());
                    for (i, b) in pv.iter().enumerate() {
                        if *b {
                            pert_vertices[v][i] = true;
                        }
                    }
                    for (i, b) in pe.iter().enumerate() {
                        if *b {
                            pert_edges[v][i] = true;
                        }
                    }
                }
            }
        }
    }

    // Children, ordered.
    let min_pert = |v: NodeId, pe: &Vec<Vec<bool>>| -> usize {
        pe[v].iter().position(|&b| b).unwrap_or(usize::MAX)
    };
    let mut children: Vec<Vec<NodeId>> = vec![Vec::new(); nn];
    for &v in &order {
        let mut cs: Vec<NodeId> = Vec::new();
        match (&chains[v], tree.nodes[v].kind) {
            (Some(chain), NodeKind::S) => {
                for &(_, _, ei) in chain {
                    if let EdgeTag::Virtual { twin_node, .. } = tree.nodes[v].edges[ei].tag {
                        cs.push(twin_node);
                    }
                }
            }
            _ => {
                for (ei, e) in tree.nodes[v].edges.iter().enumerate() {
                    if root_edge[v] == Some(ei) {
                        continue;
                    }
                    if let EdgeTag::Virtual { twin_node, .. } = e.tag {
                        cs.push(twin_node);
                    }
                }
                cs.sort_by_key(|&c| min_pert(c, &pert_edges));
            }
        }
        children[v] = cs;
    }

    let mut rooted = RootedSpqrTree {
        tree: tree.clone(),
        root: q,
        parent,
        root_edge,
        poles,
        children,
        chains,
        pert_vertices,
        pert_edges,
        ref_embeds: vec![None; nn],
        graph_vertices: n,
        graph_edges: m,
    };

    for v in 0..nn {
        if rooted.kind(v) == NodeKind::R {
            rooted.ref_embeds[v] = Some(r_node_reference_embedding(&rooted, v)?);
        }
    }
    Ok(rooted)
}

/// Walk an S-node skeleton cycle from s to t avoiding the root edge.
fn s_chain(
    node: &SpqrNode,
    root_edge: Option<usize>,
    s: VertexId,
    t: VertexId,
) -> Result<Vec<(VertexId, VertexId, usize)>> {
    let mut out = Vec::new();
    let mut at = s;
    let mut used = vec![false; node.edges.len()];
    if let Some(re) = root_edge {
        used[re] = true;
    }
    loop {
        if at == t && !out.is_empty() {
            break;
        }
        let (ei, e) = node
            .edges
            .iter()
            .enumerate()
            .find(|(ei, e)| !used[*ei] && (e.u == at || e.v == at))
            .ok_or_else(|| Error::Internal("broken S-node cycle".into()))?;
        used[ei] = true;
        let to = if e.u == at { e.v } else { e.u };
        out.push((at, to, ei));
        at = to;
    }
    Ok(out)
}

/// Planar reference embedding of skel⁻(v) for an R-node: embed the full
/// skeleton (3-connected, embedding unique up to reflection), normalize the
/// reflection at pole s, then delete the root edge and take the merged face
/// as the outer face.
fn r_node_reference_embedding(rt: &RootedSpqrTree, v: NodeId) -> Result<RNodeEmbed> {
    let node = rt.node(v);
    let vs = node.vertices();
    let to_local: std::collections::BTreeMap<VertexId, usize> =
        vs.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let local_edges: Vec<(usize, usize)> =
        node.edges.iter().map(|e| (to_local[&e.u], to_local[&e.v])).collect();
    let local = Graph::new(vs.len(), local_edges)?;
    let emb = planar_embed(&local)?.ok_or(Error::NonPlanar)?;
    let mut rotations = emb.rotations;

    let re = rt.root_edge[v].ok_or_else(|| Error::Internal("R-node without root edge".into()))?;
    let (s, t) = rt.poles[v];
    let (ls, lt) = (to_local[&s], to_local[&t]);

    // Reflection normalization at pole s: compare the rotation after the
    // root edge against its mirror and keep the lexicographically smaller.
    {
        let rot = &rotations[ls];
        let k = rot.iter().position(|&e| e == re).expect("root edge at pole");
        let fwd: Vec<EdgeId> = (1..rot.len()).map(|i| rot[(k + i) % rot.len()]).collect();
        let mut rev = fwd.clone();
        rev.reverse();
        if rev < fwd {
            for r in rotations.iter_mut() {
                r.reverse();
            }
        }
    }

    // Faces adjacent to the root edge before deletion. Each boundary is
    // rotated to start right after the root-edge dart, so the left walk runs
    // t to s and the right walk s to t.
    let fs_full = trace_faces(&local, &rotations);
    let d_st = crate::embed::dart_from(&local, re, ls);
    let f_left = fs_full.face_of_dart[d_st];
    let f_right = fs_full.face_of_dart[dart_reverse(d_st)];
    debug_assert_ne!(f_left, f_right, "3-connected skeletons have no bridges");
    let walk_after = |f: usize, d0: DartId| -> Vec<DartId> {
        let b = &fs_full.faces[f].boundary;
        let k = b.iter().position(|&d| d == d0).expect("dart on its face");
        (1..b.len()).map(|i| b[(k + i) % b.len()]).collect()
    };
    let left_walk = walk_after(f_left, d_st);
    let right_walk = walk_after(f_right, dart_reverse(d_st));

    // Delete the root edge. Pole rotations are linearized to start right
    // after the removed slot, so they double as the counterclockwise fans of
    // the node with the parent connection removed.
    for lp in [ls, lt] {
        let mut rot = crate::embed::linearize_rotation_after(&rotations[lp], re);
        let popped = rot.pop();
        debug_assert_eq!(popped, Some(re));
        rotations[lp] = rot;
    }
    let fs = trace_faces(&local, &rotations);
    let marker = *left_walk.first().ok_or_else(|| {
        Error::Internal("R-node skeleton face with only the root edge".into())
    })?;
    let outer_face = fs.face_of_dart[marker];

    debug_assert_eq!(dart_tail(&local, left_walk[0]), lt, "left outer path runs t to s");
    debug_assert_eq!(dart_tail(&local, right_walk[0]), ls, "right outer path runs s to t");

    Ok(RNodeEmbed {
        local,
        to_local,
        from_local: vs,
        rotations,
        outer_face,
        left_outer: left_walk,
        right_outer: right_walk,
    })
}

/// Pertinent graph of a non-root node: the represented subgraph, optionally
/// with the root edge added between the poles. Returns the graph (original
/// vertex ids, re-indexed edges), the original id of each edge in order
/// (`None` for the added root edge), and the new id of the root edge when
/// requested.
pub fn pertinent_graph(
    g: &Graph,
    rt: &RootedSpqrTree,
    v: NodeId,
    with_root_edge: bool,
) -> (Graph, Vec<Option<EdgeId>>, Option<EdgeId>) {
    assert_ne!(v, rt.root, "pertinent graph of the root is the whole graph");
    let mut list: Vec<(VertexId, VertexId)> = Vec::new();
    let mut origin: Vec<Option<EdgeId>> = Vec::new();
    for e in 0..rt.graph_edges {
        if rt.pert_edges[v][e] {
            list.push(g.endpoints(e));
            origin.push(Some(e));
        }
    }
    let mut root_id = None;
    if with_root_edge {
        root_id = Some(list.len());
        origin.push(None);
        list.push(rt.poles[v]);
    }
    let graph = Graph::new(rt.graph_vertices, list).expect("pertinent graph construction");
    (graph, origin, root_id)
}

/// True iff the graph contains a path between the poles of `v` that avoids
/// the pertinent graph of `v` except at the poles, using only vertices
/// selected by `allowed`.
pub fn has_external_path(
    g: &Graph,
    rt: &RootedSpqrTree,
    v: NodeId,
    allowed: &[bool],
) -> bool {
    assert_ne!(v, rt.root);
    let (s, t) = rt.poles[v];
    let ok = |x: VertexId| allowed[x] && (x == s || x == t || !rt.pert_vertices[v][x]);
    if !ok(s) || !ok(t) {
        return false;
    }
    let inc = g.incidence();
    let mut seen = vec![false; g.num_vertices()];
    seen[s] = true;
    let mut queue = std::collections::VecDeque::from([s]);
    while let Some(x) = queue.pop_front() {
        for &e in &inc[x] {
            if rt.pert_edges[v][e] {
                continue;
            }
            let y = g.other_end(e, x);
            if y == t {
                return true;
            }
            if !seen[y] && ok(y) {
                seen[y] = true;
                queue.push_back(y);
            }
        }
    }
    false
}
