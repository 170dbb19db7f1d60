//! Undirected multigraph, connectivity, and the block-cut tree.

use crate::error::{Error, Result};

pub type VertexId = usize;
pub type EdgeId = usize;

/// Undirected multigraph on vertices `0..n`. Parallel edges are allowed
/// (SPQR skeletons need them); self-loops are not.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    num_vertices: usize,
    edges: Vec<(VertexId, VertexId)>,
}

impl Graph {
    pub fn new(num_vertices: usize, edges: Vec<(VertexId, VertexId)>) -> Result<Self> {
        for &(u, v) in &edges {
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            if u >= num_vertices {
                return Err(Error::UnknownVertex(u));
            }
            if v >= num_vertices {
                return Err(Error::UnknownVertex(v));
            }
        }
        Ok(Graph { num_vertices, edges })
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        self.edges[e]
    }

    /// The endpoint of `e` that is not `v`.
    pub fn other_end(&self, e: EdgeId, v: VertexId) -> VertexId {
        let (a, b) = self.edges[e];
        if a == v {
            b
        } else {
            debug_assert_eq!(b, v);
            a
        }
    }

    /// Incident edge ids per vertex, in edge-id order.
    pub fn incidence(&self) -> Vec<Vec<EdgeId>> {
        let mut inc = vec![Vec::new(); self.num_vertices];
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            inc[u].push(e);
            inc[v].push(e);
        }
        inc
    }

    pub fn degree_of(&self, v: VertexId) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    /// True if the graph is simple: no parallel edges (self-loops are
    /// excluded at construction).
    pub fn is_simple(&self) -> bool {
        let mut seen = std::collections::BTreeSet::new();
        for &(u, v) in &self.edges {
            let key = (u.min(v), u.max(v));
            if !seen.insert(key) {
                return false;
            }
        }
        true
    }

    /// Subgraph induced by `keep` (edges with both ends kept). Vertex ids are
    /// preserved; vertices outside `keep` become isolated.
    pub fn edge_subset_of(&self, keep: &[bool]) -> Vec<EdgeId> {
        self.edges
            .iter()
            .enumerate()
            .filter(|&(_, &(u, v))| keep[u] && keep[v])
            .map(|(e, _)| e)
            .collect()
    }
}

/// A multigraph plus named, possibly overlapping vertex subsets.
#[derive(Debug, Clone)]
pub struct ClusteredGraph {
    pub graph: Graph,
    pub clusters: Vec<Cluster>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cluster {
    pub name: String,
    pub vertices: Vec<VertexId>,
}

impl Cluster {
    pub fn new(name: impl Into<String>, mut vertices: Vec<VertexId>) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        Cluster { name: name.into(), vertices }
    }

    pub fn member_mask(&self, n: usize) -> Vec<bool> {
        let mut mask = vec![false; n];
        for &v in &self.vertices {
            mask[v] = true;
        }
        mask
    }
}

impl ClusteredGraph {
    pub fn new(graph: Graph, clusters: Vec<Cluster>) -> Result<Self> {
        for c in &clusters {
            if c.vertices.is_empty() {
                return Err(Error::InvalidInstance(format!("cluster {:?} is empty", c.name)));
            }
            for &v in &c.vertices {
                if v >= graph.num_vertices() {
                    return Err(Error::UnknownVertex(v));
                }
            }
        }
        Ok(ClusteredGraph { graph, clusters })
    }

    /// Sum of cluster cardinalities.
    pub fn total_cluster_size(&self) -> usize {
        self.clusters.iter().map(|c| c.vertices.len()).sum()
    }
}

/// Partition of `0..n` into maximal connected parts, each sorted, ordered by
/// smallest member.
pub fn connected_components(g: &Graph) -> Vec<Vec<VertexId>> {
    let inc = g.incidence();
    let mut comp = vec![usize::MAX; g.num_vertices()];
    let mut parts: Vec<Vec<VertexId>> = Vec::new();
    for start in 0..g.num_vertices() {
        if comp[start] != usize::MAX {
            continue;
        }
        let id = parts.len();
        let mut part = vec![start];
        comp[start] = id;
        let mut queue = vec![start];
        while let Some(v) = queue.pop() {
            for &e in &inc[v] {
                let w = g.other_end(e, v);
                if comp[w] == usize::MAX {
                    comp[w] = id;
                    part.push(w);
                    queue.push(w);
                }
            }
        }
        part.sort_unstable();
        parts.push(part);
    }
    parts
}

pub fn is_connected(g: &Graph) -> bool {
    g.num_vertices() <= 1 || connected_components(g).len() == 1
}

/// Connectivity of the subgraph induced by `mask`, ignoring vertices outside
/// it. An empty selection counts as connected.
pub fn induced_subgraph_connected(g: &Graph, mask: &[bool]) -> bool {
    let members: Vec<VertexId> = (0..g.num_vertices()).filter(|&v| mask[v]).collect();
    if members.len() <= 1 {
        return true;
    }
    let inc = g.incidence();
    let mut seen = vec![false; g.num_vertices()];
    seen[members[0]] = true;
    let mut queue = vec![members[0]];
    let mut reached = 1;
    while let Some(v) = queue.pop() {
        for &e in &inc[v] {
            let w = g.other_end(e, v);
            if mask[w] && !seen[w] {
                seen[w] = true;
                reached += 1;
                queue.push(w);
            }
        }
    }
    reached == members.len()
}

/// True iff every cluster induces a connected subgraph.
pub fn is_c_connected(cg: &ClusteredGraph) -> bool {
    cg.clusters
        .iter()
        .all(|c| induced_subgraph_connected(&cg.graph, &c.member_mask(cg.graph.num_vertices())))
}

/// True iff every cluster and every cluster complement induce connected
/// subgraphs. The complement check is skipped when a cluster covers V.
pub fn is_c_co_connected(cg: &ClusteredGraph) -> bool {
    let n = cg.graph.num_vertices();
    cg.clusters.iter().all(|c| {
        let mask = c.member_mask(n);
        if !induced_subgraph_connected(&cg.graph, &mask) {
            return false;
        }
        if mask.iter().all(|&b| b) {
            return true;
        }
        let co: Vec<bool> = mask.iter().map(|&b| !b).collect();
        induced_subgraph_connected(&cg.graph, &co)
    })
}

/// One block of a connected graph: a maximal 2-connected subgraph or a
/// bridge together with its endpoints.
#[derive(Debug, Clone)]
pub struct Block {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
}

impl Block {
    pub fn is_bridge(&self) -> bool {
        self.edges.len() == 1
    }
}

/// Block-cut tree of a connected graph.
#[derive(Debug, Clone)]
pub struct BcTree {
    pub blocks: Vec<Block>,
    pub cut_vertices: Vec<VertexId>,
    /// blocks_at[v] = indices of blocks containing vertex v.
    pub blocks_at: Vec<Vec<usize>>,
    pub root_block: Option<usize>,
}

impl BcTree {
    pub fn is_cut_vertex(&self, v: VertexId) -> bool {
        self.cut_vertices.contains(&v)
    }
}

/// Standard DFS block decomposition (Hopcroft-Tarjan). Blocks partition the
/// edge set; cut vertices are exactly the vertices lying in two or more
/// blocks.
pub fn bc_tree(g: &Graph) -> Result<BcTree> {
    if !is_connected(g) {
        return Err(Error::Disconnected);
    }
    let n = g.num_vertices();
    let inc = g.incidence();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut timer = 0usize;
    let mut edge_stack: Vec<EdgeId> = Vec::new();
    let mut blocks: Vec<Block> = Vec::new();

    // Iterative DFS; frame = (vertex, parent edge, incidence cursor).
    let mut stack: Vec<(VertexId, Option<EdgeId>, usize)> = Vec::new();
    for start in 0..n {
        if disc[start] != usize::MAX {
            continue;
        }
        disc[start] = timer;
        low[start] = timer;
        timer += 1;
        stack.push((start, None, 0));
        while let Some(&mut (v, pe, ref mut cursor)) = stack.last_mut() {
            if *cursor < inc[v].len() {
                let e = inc[v][*cursor];
                *cursor += 1;
                if Some(e) == pe {
                    continue;
                }
                let w = g.other_end(e, v);
                if disc[w] == usize::MAX {
                    edge_stack.push(e);
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    stack.push((w, Some(e), 0));
                } else if disc[w] < disc[v] {
                    edge_stack.push(e);
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&mut (u, _, _)) = stack.last_mut() {
                    low[u] = low[u].min(low[v]);
                    if low[v] >= disc[u] {
                        // u closes a block; pop its edges.
                        let mut block_edges = Vec::new();
                        while let Some(&top) = edge_stack.last() {
                            let (a, b) = g.endpoints(top);
                            if disc[a].max(disc[b]) >= disc[v] {
                                block_edges.push(edge_stack.pop().unwrap());
                            } else {
                                break;
                            }
                        }
                        block_edges.reverse();
                        let mut vs: Vec<VertexId> = block_edges
                            .iter()
                            .flat_map(|&e| {
                                let (a, b) = g.endpoints(e);
                                [a, b]
                            })
                            .collect();
                        vs.sort_unstable();
                        vs.dedup();
                        blocks.push(Block { vertices: vs, edges: block_edges });
                    }
                }
            }
        }
    }

    blocks.sort_by_key(|b| b.edges.iter().copied().min().unwrap_or(usize::MAX));
    let mut blocks_at = vec![Vec::new(); n];
    for (i, b) in blocks.iter().enumerate() {
        for &v in &b.vertices {
            blocks_at[v].push(i);
        }
    }
    let cut_vertices: Vec<VertexId> = (0..n).filter(|&v| blocks_at[v].len() >= 2).collect();
    Ok(BcTree { blocks, cut_vertices, blocks_at, root_block: None })
}

#[cfg(test)]
mod tests {
    use super::*;

    pub fn triangle() -> Graph {
        Graph::new(3, vec![(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    /// Triangles abc and cde sharing c; a=0 b=1 c=2 d=3 e=4.
    pub fn bowtie() -> Graph {
        Graph::new(5, vec![(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]).unwrap()
    }

    /// Equator 1-2-3-4 (as 0..3), poles 5,6 (as 4,5) adjacent to the equator.
    pub fn octahedron() -> Graph {
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
    fn components_triangle_is_one_part() {
        assert_eq!(connected_components(&triangle()), vec![vec![0, 1, 2]]);
    }

    #[test]
    fn components_edgeless_graph() {
        let g = Graph::new(2, vec![]).unwrap();
        assert_eq!(connected_components(&g), vec![vec![0], vec![1]]);
    }

    #[test]
    fn components_bowtie_is_one_part() {
        assert_eq!(connected_components(&bowtie()).len(), 1);
    }

    #[test]
    fn rejects_self_loop() {
        assert!(Graph::new(2, vec![(1, 1)]).is_err());
        assert!(Graph::new(2, vec![(0, 2)]).is_err());
    }

    #[test]
    fn bc_tree_triangle() {
        let t = bc_tree(&triangle()).unwrap();
        assert_eq!(t.blocks.len(), 1);
        assert!(t.cut_vertices.is_empty());
    }

    #[test]
    fn bc_tree_path() {
        let g = Graph::new(3, vec![(0, 1), (1, 2)]).unwrap();
        let t = bc_tree(&g).unwrap();
        assert_eq!(t.blocks.len(), 2);
        assert!(t.blocks.iter().all(|b| b.is_bridge()));
        assert_eq!(t.cut_vertices, vec![1]);
    }

    #[test]
    fn bc_tree_bowtie() {
        let t = bc_tree(&bowtie()).unwrap();
        assert_eq!(t.blocks.len(), 2);
        assert!(t.blocks.iter().all(|b| b.edges.len() == 3));
        assert_eq!(t.cut_vertices, vec![2]);
    }

    #[test]
    fn bc_tree_blocks_partition_edges() {
        for g in [triangle(), bowtie(), octahedron()] {
            let t = bc_tree(&g).unwrap();
            let mut all: Vec<EdgeId> = t.blocks.iter().flat_map(|b| b.edges.clone()).collect();
            all.sort_unstable();
            assert_eq!(all, (0..g.num_edges()).collect::<Vec<_>>());
        }
    }

    #[test]
    fn two_connected_graph_has_one_block() {
        let t = bc_tree(&octahedron()).unwrap();
        assert_eq!(t.blocks.len(), 1);
        assert!(t.cut_vertices.is_empty());
    }

    #[test]
    fn c_connectivity_octahedron() {
        let cg = ClusteredGraph::new(
            octahedron(),
            vec![Cluster::new("equator", vec![0, 1, 2, 3])],
        )
        .unwrap();
        assert!(is_c_connected(&cg));
        // {4,5} induces no edge.
        assert!(!is_c_co_connected(&cg));
    }

    #[test]
    fn c_connectivity_c4() {
        let c4 = Graph::new(4, vec![(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let both = ClusteredGraph::new(
            c4.clone(),
            vec![Cluster::new("a", vec![0, 1]), Cluster::new("b", vec![2, 3])],
        )
        .unwrap();
        assert!(is_c_connected(&both));
        assert!(is_c_co_connected(&both));

        let diag = ClusteredGraph::new(c4, vec![Cluster::new("d", vec![0, 2])]).unwrap();
        assert!(!is_c_connected(&diag));
    }
}
