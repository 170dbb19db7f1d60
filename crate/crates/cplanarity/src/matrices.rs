//! The consecutive-ones engine for one 2-connected block: split the rooted
//! SPQR-tree at R-nodes, build one binary matrix per subtree, solve with a
//! consecutive-ones ordering, and reconstruct a cluster-planar embedding of
//! the block with the root edge on the outer face.
//!
//! Orientation conventions: rotations are counterclockwise and face tracing
//! keeps the traced face on the left of each dart. "Left" outer walks and
//! "left" external columns both refer to the face on the left of the
//! root-edge dart oriented from pole s to pole t in the fixed reference
//! embedding.

use crate::c1p::{c1p_order_with, BinaryMatrix, ColLabel, ExtSide, RowKind, RowLabel, TieBreak};
use crate::embed::{dart_from, trace_faces, Embedding};
#[allow(unused_imports)]
use crate::embed::dart_reverse;
use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, VertexId};
use crate::labeling::{
    assign_sides, critical_clusters, label_tree, outer_walk_marked, side_constraint,
    skel_edge_child_label, Label, LabelTable, Side,
};
use crate::spqr::{build_spqr, root_at, EdgeTag, NodeId, NodeKind, RootedSpqrTree};

/// One cluster restricted to the block under test, with the set of vertices
/// that must end up on the outer face of the induced cluster subgraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClusterSpec {
    pub name: String,
    pub mask: Vec<bool>,
    pub cext: Vec<VertexId>,
}

impl ClusterSpec {
    pub fn new(name: impl Into<String>, mask: Vec<bool>, mut cext: Vec<VertexId>) -> Self {
        cext.sort_unstable();
        cext.dedup();
        ClusterSpec { name: name.into(), mask, cext }
    }

    pub fn size(&self) -> usize {
        self.mask.iter().filter(|&&b| b).count()
    }

    pub fn cext_mask(&self) -> Vec<bool> {
        let mut m = vec![false; self.mask.len()];
        for &v in &self.cext {
            m[v] = true;
        }
        m
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SplitKind {
    /// An S-, P- or Q-node carried over from the original tree.
    Real(NodeId),
    /// The P-node standing in for an R-node.
    SpecialP(NodeId),
    /// The i-th artificial Q-child (0, 1, 2) of a special P-node.
    PseudoQ(NodeId, usize),
    /// The fresh Q-root put above a former R-node child.
    FreshRoot(NodeId),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SplitShape {
    Q,
    S,
    P,
}

#[derive(Debug, Clone)]
pub struct SplitNode {
    pub kind: SplitKind,
    pub shape: SplitShape,
    pub children: Vec<usize>,
    /// Column span of the subtree over regular columns, as [start, end).
    pub col_range: (usize, usize),
}

#[derive(Debug, Clone)]
pub struct SplitTree {
    pub root: usize,
    pub is_root_tree: bool,
    pub nodes: Vec<SplitNode>,
    /// labels[cluster][split node]
    pub labels: Vec<Vec<Label>>,
    /// Regular columns: split ids of the lowest-P-children, left to right.
    pub columns: Vec<usize>,
}

impl SplitTree {
    fn post_order(&self) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = vec![(self.root, false)];
        while let Some((v, expanded)) = stack.pop() {
            if expanded {
                out.push(v);
            } else {
                stack.push((v, true));
                for &c in self.nodes[v].children.iter().rev() {
                    stack.push((c, false));
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone)]
pub struct SplitForest {
    pub trees: Vec<SplitTree>,
    /// Original node -> (tree index, split node id); R-nodes map to their
    /// special P-node.
    pub locate: Vec<(usize, usize)>,
}

/// Split the rooted tree at every R-node. The caller guarantees that no node
/// is inappropriate for any cluster at this root.
pub fn split_at_r_nodes(
    rt: &RootedSpqrTree,
    clusters: &[ClusterSpec],
    tables: &[LabelTable],
) -> Result<SplitForest> {
    for t in tables {
        if t.labels.iter().any(|&l| l == Label::Inappropriate) {
            return Err(Error::Internal(
                "split requested for a root with an inappropriate node".into(),
            ));
        }
    }
    let nn = rt.tree.nodes.len();
    let mut locate = vec![(usize::MAX, usize::MAX); nn];
    let mut trees: Vec<SplitTree> = Vec::new();
    let mut pending: Vec<(NodeId, Option<NodeId>)> = vec![(rt.root, None)];
    while let Some((top, fresh_for)) = pending.pop() {
        let ti = trees.len();
        let mut tree = SplitTree {
            root: 0,
            is_root_tree: fresh_for.is_none(),
            nodes: Vec::new(),
            labels: vec![Vec::new(); tables.len()],
            columns: Vec::new(),
        };
        let root_kind = match fresh_for {
            None => SplitKind::Real(top),
            Some(child) => SplitKind::FreshRoot(child),
        };
        let root_id = push_node(&mut tree, root_kind, SplitShape::Q, rt, clusters, tables);
        if fresh_for.is_none() {
            locate[top] = (ti, root_id);
        }
        let below = match fresh_for {
            None => rt.children[top][0],
            Some(child) => child,
        };
        let c = build_split(rt, clusters, tables, &mut tree, ti, below, &mut pending, &mut locate);
        tree.nodes[root_id].children.push(c);
        tree.root = root_id;
        assign_columns(&mut tree);
        trees.push(tree);
    }
    Ok(SplitForest { trees, locate })
}

fn push_node(
    tree: &mut SplitTree,
    kind: SplitKind,
    shape: SplitShape,
    rt: &RootedSpqrTree,
    clusters: &[ClusterSpec],
    tables: &[LabelTable],
) -> usize {
    let id = tree.nodes.len();
    tree.nodes.push(SplitNode { kind, shape, children: Vec::new(), col_range: (0, 0) });
    for (c, table) in tables.iter().enumerate() {
        let cext = clusters[c].cext_mask();
        tree.labels[c].push(split_label(rt, table, &cext, kind));
    }
    id
}

/// Label of a split node for one cluster, per the replacement rules.
fn split_label(rt: &RootedSpqrTree, table: &LabelTable, cext_mask: &[bool], kind: SplitKind) -> Label {
    match kind {
        SplitKind::Real(v) | SplitKind::SpecialP(v) => table.labels[v],
        SplitKind::FreshRoot(child) => {
            if table.has_ext_path[child] {
                Label::Inside
            } else {
                Label::Outside
            }
        }
        SplitKind::PseudoQ(v, i) => match table.labels[v] {
            Label::Inside => Label::Inside,
            Label::Outside => Label::Outside,
            Label::DoubleBorder => {
                if i == 1 {
                    Label::Inside
                } else {
                    Label::Border
                }
            }
            Label::Border => {
                if i == 1 {
                    return Label::Inside;
                }
                // The first artificial child models the strip end bounded by
                // the left outer walk of the reference embedding; it is
                // outside exactly when that walk is marked.
                let left_marked = outer_walk_marked(rt, v, true, table, cext_mask);
                match (i, left_marked) {
                    (0, true) | (2, false) => Label::Outside,
                    _ => Label::Inside,
                }
            }
            Label::Inappropriate => unreachable!("inappropriate nodes are gated before the split"),
        },
    }
}

#[allow(clippy::too_many_arguments)]
fn build_split(
    rt: &RootedSpqrTree,
    clusters: &[ClusterSpec],
    tables: &[LabelTable],
    tree: &mut SplitTree,
    ti: usize,
    v: NodeId,
    pending: &mut Vec<(NodeId, Option<NodeId>)>,
    locate: &mut Vec<(usize, usize)>,
) -> usize {
    match rt.kind(v) {
        NodeKind::R => {
            let id = push_node(tree, SplitKind::SpecialP(v), SplitShape::P, rt, clusters, tables);
            locate[v] = (ti, id);
            for i in 0..3 {
                let q = push_node(tree, SplitKind::PseudoQ(v, i), SplitShape::Q, rt, clusters, tables);
                tree.nodes[id].children.push(q);
            }
            for &c in &rt.children[v] {
                if rt.kind(c) != NodeKind::Q {
                    pending.push((c, Some(c)));
                }
            }
            id
        }
        k => {
            let shape = match k {
                NodeKind::S => SplitShape::S,
                NodeKind::P => SplitShape::P,
                NodeKind::Q => SplitShape::Q,
                NodeKind::R => unreachable!(),
            };
            let id = push_node(tree, SplitKind::Real(v), shape, rt, clusters, tables);
            locate[v] = (ti, id);
            let kids = rt.children[v].clone();
            for c in kids {
                let cid = build_split(rt, clusters, tables, tree, ti, c, pending, locate);
                tree.nodes[id].children.push(cid);
            }
            id
        }
    }
}

/// DFS column assignment: lowest-P-children left to right, plus contiguous
/// column spans per node.
fn assign_columns(tree: &mut SplitTree) {
    let n = tree.nodes.len();
    let mut has_p = vec![false; n];
    for &v in &tree.post_order() {
        has_p[v] = tree.nodes[v].shape == SplitShape::P
            || tree.nodes[v].children.iter().any(|&c| has_p[c]);
    }
    fn dfs(
        tree: &mut SplitTree,
        v: usize,
        parent_is_p: bool,
        has_p: &[bool],
        columns: &mut Vec<usize>,
    ) {
        let start = columns.len();
        if parent_is_p && !has_p[v] {
            columns.push(v);
        }
        let kids = tree.nodes[v].children.clone();
        let my_p = tree.nodes[v].shape == SplitShape::P;
        for c in kids {
            dfs(tree, c, my_p, has_p, columns);
        }
        tree.nodes[v].col_range = (start, columns.len());
    }
    let mut columns = Vec::new();
    dfs(tree, tree.root, false, &has_p, &mut columns);
    tree.columns = columns;
}

/// One matrix per split tree, with column bookkeeping.
#[derive(Debug, Clone)]
pub struct TreeMatrix {
    pub matrix: BinaryMatrix,
    /// regular column index -> matrix column index
    pub reg_col: Vec<usize>,
    pub ext_left: Option<usize>,
    pub ext_right: Option<usize>,
    pub ext_root: Option<usize>,
    /// Per cluster: which external column carries the external paths.
    pub ext_choice: Vec<Option<ExtSide>>,
    /// Matrix column order (original indices, left to right) after solving
    /// and pinning.
    pub solved: Option<Vec<usize>>,
}

impl TreeMatrix {
    pub fn col_span(&self, node: &SplitNode) -> Vec<usize> {
        (node.col_range.0..node.col_range.1).map(|i| self.reg_col[i]).collect()
    }
}

#[derive(Debug, Clone)]
pub struct MatrixSet {
    pub per_tree: Vec<TreeMatrix>,
}

impl MatrixSet {
    /// Rows attributable to (P-node, cluster) pairs, for the size bound.
    pub fn cluster_row_count(&self) -> usize {
        self.per_tree
            .iter()
            .map(|tm| {
                tm.matrix
                    .row_labels
                    .iter()
                    .filter(|l| matches!(l, RowLabel::Cluster { .. }))
                    .count()
            })
            .sum()
    }

    /// Textual dump of every matrix with row and column provenance.
    pub fn dump(&self) -> String {
        use std::fmt::Write;
        let mut out = String::new();
        for (ti, tm) in self.per_tree.iter().enumerate() {
            writeln!(out, "matrix of subtree {ti}:").unwrap();
            let header: Vec<String> = tm
                .matrix
                .col_labels
                .iter()
                .map(|c| match c {
                    ColLabel::Plain(i) => format!("c{i}"),
                    ColLabel::LowestPChild(v) => format!("c(n{v})"),
                    ColLabel::External(ExtSide::Left) => "extL".into(),
                    ColLabel::External(ExtSide::Right) => "extR".into(),
                    ColLabel::External(ExtSide::Root) => "ext".into(),
                })
                .collect();
            writeln!(out, "  {:14} {}", "", header.join(" ")).unwrap();
            for (ri, row) in tm.matrix.rows.iter().enumerate() {
                let label = match &tm.matrix.row_labels[ri] {
                    RowLabel::Plain(i) => format!("row{i}"),
                    RowLabel::Init(v) => format!("init(n{v})"),
                    RowLabel::Guard(ExtSide::Left) => "guardL".into(),
                    RowLabel::Guard(_) => "guardR".into(),
                    RowLabel::Cluster { p_node, cluster, kind } => {
                        let k = match kind {
                            RowKind::R0 => "r0",
                            RowKind::R1 => "r1",
                            RowKind::R2 => "r2",
                        };
                        format!("{k}(n{p_node},C{cluster})")
                    }
                };
                let cells: Vec<String> = row
                    .iter()
                    .zip(&header)
                    .map(|(&b, h)| format!("{:>width$}", u8::from(b), width = h.len()))
                    .collect();
                writeln!(out, "  {label:14} {}", cells.join(" ")).unwrap();
            }
        }
        out
    }
}

/// Build every matrix of the split forest by post-order traversal.
pub fn build_matrices(
    g: &Graph,
    rt: &RootedSpqrTree,
    clusters: &[ClusterSpec],
    tables: &[LabelTable],
    sf: &SplitForest,
    sides: &std::collections::BTreeMap<(NodeId, usize), Side>,
) -> Result<MatrixSet> {
    let mut per_tree = Vec::new();
    for tree in &sf.trees {
        per_tree.push(build_one_matrix(g, rt, clusters, tables, tree, sides)?);
    }
    Ok(MatrixSet { per_tree })
}

fn build_one_matrix(
    g: &Graph,
    rt: &RootedSpqrTree,
    clusters: &[ClusterSpec],
    tables: &[LabelTable],
    tree: &SplitTree,
    sides: &std::collections::BTreeMap<(NodeId, usize), Side>,
) -> Result<TreeMatrix> {
    let nreg = tree.columns.len();
    let (reg_col, ext_left, ext_right, ext_root, col_labels) = if tree.is_root_tree {
        let labels: Vec<ColLabel> = tree
            .columns
            .iter()
            .map(|&v| ColLabel::LowestPChild(v))
            .chain([ColLabel::External(ExtSide::Root)])
            .collect();
        ((0..nreg).collect::<Vec<_>>(), None, None, Some(nreg), labels)
    } else {
        let mut labels = vec![ColLabel::External(ExtSide::Left)];
        labels.extend(tree.columns.iter().map(|&v| ColLabel::LowestPChild(v)));
        labels.push(ColLabel::External(ExtSide::Right));
        ((1..=nreg).collect::<Vec<_>>(), Some(0), Some(nreg + 1), None, labels)
    };
    let ncols = col_labels.len();
    let mut matrix = BinaryMatrix::new(ncols);
    matrix.col_labels = col_labels;

    let mut tm = TreeMatrix {
        matrix,
        reg_col,
        ext_left,
        ext_right,
        ext_root,
        ext_choice: vec![None; clusters.len()],
        solved: None,
    };

    // Initialization rows: one per non-leaf node spanning two or more
    // columns.
    for (v, node) in tree.nodes.iter().enumerate() {
        if node.children.is_empty() || node.col_range.1 - node.col_range.0 < 2 {
            continue;
        }
        let r = tm.matrix.push_row(RowLabel::Init(v));
        for c in tm.col_span(node) {
            tm.matrix.set(r, c);
        }
    }
    // Guard rows pin the external columns of split-off trees to the ends.
    if !tree.is_root_tree {
        let gl = tm.matrix.push_row(RowLabel::Guard(ExtSide::Left));
        let gr = tm.matrix.push_row(RowLabel::Guard(ExtSide::Right));
        for c in 0..ncols {
            if c != tm.ext_left.unwrap() {
                tm.matrix.set(gl, c);
            }
            if c != tm.ext_right.unwrap() {
                tm.matrix.set(gr, c);
            }
        }
    }

    let order = tree.post_order();
    for (ci, cluster) in clusters.iter().enumerate() {
        let mut rows: Vec<Vec<usize>> = vec![Vec::new(); tree.nodes.len()];
        for &v in &order {
            let node = &tree.nodes[v];
            if v == tree.root {
                continue;
            }
            match node.shape {
                SplitShape::Q => {}
                SplitShape::P => {
                    fill_p_node(&mut tm, tree, tables, ci, v, &mut rows)?;
                }
                SplitShape::S => {
                    fill_s_node(&mut tm, tree, tables, ci, v, &mut rows, sides)?;
                }
            }
        }

        // External columns.
        let root_child = tree.nodes[tree.root].children[0];
        if tree.is_root_tree {
            let e = rt.q_edge(rt.root);
            let (a, b) = g.endpoints(e);
            if cluster.mask[a] && cluster.mask[b] {
                let col = tm.ext_root.unwrap();
                for &r in &rows[root_child] {
                    tm.matrix.set(r, col);
                }
            }
        } else {
            let rc = match tree.nodes[tree.root].kind {
                SplitKind::FreshRoot(rc) => rc,
                _ => unreachable!(),
            };
            if tables[ci].labels[rc] == Label::Border && tables[ci].has_ext_path[rc] {
                let side = external_column_side(rt, tables, ci, rc)?;
                tm.ext_choice[ci] = Some(side);
                let col = match side {
                    ExtSide::Left => tm.ext_left.unwrap(),
                    ExtSide::Right => tm.ext_right.unwrap(),
                    ExtSide::Root => unreachable!(),
                };
                for &r in &rows[root_child] {
                    tm.matrix.set(r, col);
                }
            }
        }
    }
    Ok(tm)
}

fn fill_p_node(
    tm: &mut TreeMatrix,
    tree: &SplitTree,
    tables: &[LabelTable],
    ci: usize,
    v: usize,
    rows: &mut Vec<Vec<usize>>,
) -> Result<()> {
    let _ = tables;
    let node = &tree.nodes[v];
    let mut mine: Vec<usize> = Vec::new();
    for &c in &node.children {
        mine.extend(rows[c].iter().copied());
    }
    let label = tree.labels[ci][v];
    if matches!(label, Label::Inside | Label::Border) {
        let inside_cols: Vec<usize> = node
            .children
            .iter()
            .filter(|&&c| tree.labels[ci][c] == Label::Inside)
            .flat_map(|&c| tm.col_span(&tree.nodes[c]))
            .collect();
        let orig = split_origin(tree, v);
        if !inside_cols.is_empty() {
            let r = tm.matrix.push_row(RowLabel::Cluster {
                p_node: orig,
                cluster: ci,
                kind: RowKind::R0,
            });
            for &c in &inside_cols {
                tm.matrix.set(r, c);
            }
            mine.push(r);
        }
        let mut kind = RowKind::R1;
        for &bc in node
            .children
            .iter()
            .filter(|&&c| tree.labels[ci][c] == Label::Border)
        {
            let r = tm.matrix.push_row(RowLabel::Cluster { p_node: orig, cluster: ci, kind });
            for c in tm.col_span(&tree.nodes[bc]) {
                tm.matrix.set(r, c);
            }
            for &c in &inside_cols {
                tm.matrix.set(r, c);
            }
            mine.push(r);
            kind = RowKind::R2;
        }
    }
    // Propagation: rows of one child pick up the 1s that the other rows of
    // this node already carry in foreign columns.
    let span: Vec<usize> = tm.col_span(node);
    for &child in &node.children {
        let child_cols: std::collections::BTreeSet<usize> =
            tm.col_span(&tree.nodes[child]).into_iter().collect();
        let child_rows: std::collections::BTreeSet<usize> = rows[child].iter().copied().collect();
        let others: Vec<usize> =
            mine.iter().copied().filter(|r| !child_rows.contains(r)).collect();
        for &j in span.iter().filter(|j| !child_cols.contains(j)) {
            if others.iter().any(|&r| tm.matrix.rows[r][j]) {
                for &i in &child_rows {
                    tm.matrix.rows[i][j] = true;
                }
            }
        }
    }
    rows[v] = mine;
    Ok(())
}

fn fill_s_node(
    tm: &mut TreeMatrix,
    tree: &SplitTree,
    tables: &[LabelTable],
    ci: usize,
    v: usize,
    rows: &mut Vec<Vec<usize>>,
    sides: &std::collections::BTreeMap<(NodeId, usize), Side>,
) -> Result<()> {
    let label = tree.labels[ci][v];
    if label == Label::Outside {
        rows[v] = Vec::new();
        return Ok(());
    }
    let node = &tree.nodes[v];
    let mut mine: Vec<usize> = Vec::new();
    for &c in &node.children {
        mine.extend(rows[c].iter().copied());
    }
    rows[v] = mine;

    let orig = split_origin(tree, v);
    if !tables[ci].has_ext_path[orig] {
        return Ok(());
    }
    if label == Label::DoubleBorder {
        return Err(Error::Internal(
            "double-border S-node with an external path survived the root gate".into(),
        ));
    }
    // Fill the halves over the P-node children, in chain order.
    let p_children: Vec<usize> = node
        .children
        .iter()
        .copied()
        .filter(|&c| tree.nodes[c].shape == SplitShape::P)
        .collect();
    if p_children.len() < 2 {
        return Ok(());
    }
    let side = if label == Label::Inside {
        None // both halves
    } else {
        Some(*sides.get(&(orig, ci)).ok_or_else(|| {
            Error::Internal("border S-node with external path missing a side assignment".into())
        })?)
    };
    for i in 0..p_children.len() {
        for j in i + 1..p_children.len() {
            let earlier = p_children[i];
            let later = p_children[j];
            // upper half: rows of earlier children × columns of later ones
            if side != Some(Side::Lower) {
                for &r in &rows[earlier] {
                    for c in tm.col_span(&tree.nodes[later]) {
                        tm.matrix.set(r, c);
                    }
                }
            }
            if side != Some(Side::Upper) {
                for &r in &rows[later] {
                    for c in tm.col_span(&tree.nodes[earlier]) {
                        tm.matrix.set(r, c);
                    }
                }
            }
        }
    }
    Ok(())
}

fn split_origin(tree: &SplitTree, v: usize) -> NodeId {
    match tree.nodes[v].kind {
        SplitKind::Real(orig) | SplitKind::SpecialP(orig) | SplitKind::FreshRoot(orig) => orig,
        SplitKind::PseudoQ(orig, _) => orig,
    }
}

/// Which external column carries the external paths of a former R-node
/// child: via the oriented non-outside cycle through its skeleton edge, or
/// via the outer walk that the edge lies on.
fn external_column_side(
    rt: &RootedSpqrTree,
    tables: &[LabelTable],
    ci: usize,
    rc: NodeId,
) -> Result<ExtSide> {
    let rnode = rt.parent[rc].ok_or_else(|| Error::Internal("split child without parent".into()))?;
    debug_assert_eq!(rt.kind(rnode), NodeKind::R);
    let emb = rt.ref_embeds[rnode].as_ref().expect("R-node reference embedding");
    let root_ei = rt.root_edge[rnode].expect("non-root R-node");
    let e_rc = rt
        .tree
        .nodes[rnode]
        .edges
        .iter()
        .position(|e| matches!(e.tag, EdgeTag::Virtual { twin_node, .. } if twin_node == rc))
        .ok_or_else(|| Error::Internal("R-node child slot missing".into()))?;
    let table = &tables[ci];
    let usable: Vec<bool> = (0..emb.local.num_edges())
        .map(|ei| {
            ei != root_ei
                && ei != e_rc
                && skel_edge_child_label(rt, rnode, ei, table) != Label::Outside
        })
        .collect();
    let (sp, tp) = rt.poles[rc];
    let ls = emb.to_local[&sp];
    let lt = emb.to_local[&tp];

    // Cycle case: a non-outside path closing the cycle through the child
    // edge. The matrix puts its first column on the right of the dart from
    // s' to t', so a wrap whose bounded side lies right of that dart maps to
    // the left external column.
    if let Some(path_darts) = bfs_darts(&emb.local, &usable, lt, ls) {
        let mut cycle = vec![dart_from(&emb.local, e_rc, ls)];
        cycle.extend(path_darts);
        let fs = emb.faces();
        let outer_on_left =
            crate::embed::cycle_outer_on_left(&emb.local, &fs, emb.outer_face, &cycle);
        return Ok(if outer_on_left { ExtSide::Left } else { ExtSide::Right });
    }

    // Cut case: the child edge lies on the outer boundary; the wrap runs
    // through the outer region, on the side its outer dart faces.
    let fs = emb.faces();
    let d_st = dart_from(&emb.local, e_rc, ls);
    if fs.face_of_dart[d_st] == emb.outer_face {
        Ok(ExtSide::Right)
    } else if fs.face_of_dart[crate::embed::dart_reverse(d_st)] == emb.outer_face {
        Ok(ExtSide::Left)
    } else {
        Err(Error::Internal(
            "external-path side: child edge neither on a cycle nor on the outer boundary".into(),
        ))
    }
}

/// BFS path as darts from `from` to `to` over the usable edges.
fn bfs_darts(local: &Graph, usable: &[bool], from: usize, to: usize) -> Option<Vec<usize>> {
    let inc = local.incidence();
    let mut prev: Vec<Option<EdgeId>> = vec![None; local.num_vertices()];
    let mut seen = vec![false; local.num_vertices()];
    seen[from] = true;
    let mut queue = std::collections::VecDeque::from([from]);
    while let Some(x) = queue.pop_front() {
        for &e in &inc[x] {
            if !usable[e] {
                continue;
            }
            let y = local.other_end(e, x);
            if !seen[y] {
                seen[y] = true;
                prev[y] = Some(e);
                if y == to {
                    let mut path = Vec::new();
                    let mut at = to;
                    while at != from {
                        let e = prev[at].unwrap();
                        let w = local.other_end(e, at);
                        path.push(dart_from(local, e, w));
                        at = w;
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

/// Solve every matrix; returns false if some subtree has no
/// consecutive-ones ordering. External columns are pinned: the root matrix
/// ends with its external column, split-off matrices start with the left
/// and end with the right one.
pub fn solve_matrices(ms: &mut MatrixSet, tie: TieBreak) -> bool {
    for tm in &mut ms.per_tree {
        let Some(mut order) = c1p_order_with(&tm.matrix, tie) else {
            return false;
        };
        if let Some(extr) = tm.ext_root {
            if order.first() == Some(&extr) {
                order.reverse();
            }
            debug_assert!(
                order.last() == Some(&extr) || tm.matrix.cols == 1,
                "root external column must end up at an end"
            );
            if order.last() != Some(&extr) {
                // No regular structure forces it; move it last explicitly.
                order.retain(|&c| c != extr);
                order.push(extr);
                debug_assert!(tm.matrix.is_consecutive_under(&order));
            }
        }
        if let (Some(el), Some(er)) = (tm.ext_left, tm.ext_right) {
            if order.first() == Some(&er) {
                order.reverse();
            }
            debug_assert_eq!(order.first(), Some(&el), "guard rows pin the left column");
            debug_assert_eq!(order.last(), Some(&er), "guard rows pin the right column");
        }
        tm.solved = Some(order);
    }
    true
}

/// Reconstruct the block embedding from solved matrices: P-node children
/// permute per column order, R-nodes flip when their first and third
/// artificial columns swapped (reversing descendant matrices), and the root
/// edge lands on the outer face.
pub fn reconstruct_embedding(
    g: &Graph,
    rt: &RootedSpqrTree,
    sf: &SplitForest,
    ms: &MatrixSet,
) -> Result<Embedding> {
    let mut recon = Recon {
        g,
        rt,
        sf,
        ms,
        rotations: vec![Vec::new(); g.num_vertices()],
        fans: vec![None; rt.tree.nodes.len()],
    };
    let child = rt.children[rt.root][0];
    let (s_fan, t_fan) = recon.fan(child, false)?;
    let e = rt.q_edge(rt.root);
    let (s, t) = rt.poles[rt.root];
    recon.rotations[s] = std::iter::once(e).chain(s_fan).collect();
    recon.rotations[t] = std::iter::once(e).chain(t_fan).collect();
    let rotations = recon.rotations;
    let fs = trace_faces(g, &rotations);
    let outer = fs.face_of_dart[dart_from(g, e, s)];
    let emb = Embedding { rotations, outer_face: outer };
    crate::embed::validate_embedding(g, &emb)
        .map_err(|_| Error::Internal("reconstructed rotation system is not planar".into()))?;
    Ok(emb)
}

struct Recon<'a> {
    g: &'a Graph,
    rt: &'a RootedSpqrTree,
    sf: &'a SplitForest,
    ms: &'a MatrixSet,
    rotations: Vec<Vec<EdgeId>>,
    fans: Vec<Option<(Vec<EdgeId>, Vec<EdgeId>)>>,
}

impl<'a> Recon<'a> {
    /// Position of each matrix column of tree `ti` under the effective
    /// (possibly reversed) solved order.
    fn eff_pos(&self, ti: usize, parity: bool) -> Result<Vec<usize>> {
        let tm = &self.ms.per_tree[ti];
        let order = tm
            .solved
            .as_ref()
            .ok_or_else(|| Error::Internal("reconstruction before solving".into()))?;
        let mut pos = vec![0usize; tm.matrix.cols.max(1)];
        for (p, &c) in order.iter().enumerate() {
            pos[c] = if parity { order.len() - 1 - p } else { p };
        }
        Ok(pos)
    }

    /// Counterclockwise edge fans of the pertinent graph of `v` at its two
    /// poles; internal rotations are written directly.
    fn fan(&mut self, v: NodeId, parity: bool) -> Result<(Vec<EdgeId>, Vec<EdgeId>)> {
        if let Some(f) = &self.fans[v] {
            return Ok(f.clone());
        }
        let out = match self.rt.kind(v) {
            NodeKind::Q => {
                let e = self.rt.q_edge(v);
                (vec![e], vec![e])
            }
            NodeKind::S => {
                let chain = self.rt.chains[v].as_ref().expect("S-node chain").clone();
                let kids: Vec<NodeId> = self.rt.children[v].clone();
                debug_assert_eq!(chain.len(), kids.len());
                let mut fans = Vec::with_capacity(kids.len());
                for &c in &kids {
                    fans.push(self.fan(c, parity)?);
                }
                for i in 0..kids.len() - 1 {
                    let junction = chain[i].1;
                    let mut rot = fans[i + 1].0.clone();
                    rot.extend(fans[i].1.iter().copied());
                    self.rotations[junction] = rot;
                }
                (fans[0].0.clone(), fans[kids.len() - 1].1.clone())
            }
            NodeKind::P => {
                let (ti, _) = self.sf.locate[v];
                let pos = self.eff_pos(ti, parity)?;
                let tm = &self.ms.per_tree[ti];
                let mut kids: Vec<NodeId> = self.rt.children[v].clone();
                kids.sort_by_key(|&c| {
                    let (cti, csid) = self.sf.locate[c];
                    debug_assert_eq!(cti, ti);
                    let range = self.sf.trees[cti].nodes[csid].col_range;
                    pos[tm.reg_col[range.0]]
                });
                let mut s_fan = Vec::new();
                let mut t_fan = Vec::new();
                let mut t_parts = Vec::new();
                for &c in &kids {
                    let (sf_, tf_) = self.fan(c, parity)?;
                    s_fan.extend(sf_);
                    t_parts.push(tf_);
                }
                for tf_ in t_parts.into_iter().rev() {
                    t_fan.extend(tf_);
                }
                (s_fan, t_fan)
            }
            NodeKind::R => {
                let (ti, sid) = self.sf.locate[v];
                let pos = self.eff_pos(ti, parity)?;
                let tm = &self.ms.per_tree[ti];
                let tree = &self.sf.trees[ti];
                let pseudo = &tree.nodes[sid].children;
                debug_assert_eq!(pseudo.len(), 3);
                let col_of = |sid2: usize| tm.reg_col[tree.nodes[sid2].col_range.0];
                let flip = pos[col_of(pseudo[0])] > pos[col_of(pseudo[2])];

                let emb = self.rt.ref_embeds[v].as_ref().expect("R-node embedding");
                let (s, t) = self.rt.poles[v];
                let (ls, lt) = (emb.to_local[&s], emb.to_local[&t]);
                let mut s_fan = Vec::new();
                let mut t_fan = Vec::new();
                for (x, base_rot) in emb.rotations.iter().enumerate() {
                    let mut rot_local = base_rot.clone();
                    if flip {
                        rot_local.reverse();
                    }
                    let mut rot = Vec::new();
                    for ei in rot_local {
                        let child = match self.rt.tree.nodes[v].edges[ei].tag {
                            EdgeTag::Virtual { twin_node, .. } => twin_node,
                            EdgeTag::Real(_) => {
                                return Err(Error::Internal(
                                    "real edge in internal skeleton".into(),
                                ))
                            }
                        };
                        let child_parity = flip;
                        let (cs, ct) = self.fan(child, child_parity)?;
                        let gx = emb.from_local[x];
                        if gx == self.rt.poles[child].0 {
                            rot.extend(cs);
                        } else {
                            debug_assert_eq!(gx, self.rt.poles[child].1);
                            rot.extend(ct);
                        }
                    }
                    if x == ls {
                        s_fan = rot;
                    } else if x == lt {
                        t_fan = rot;
                    } else {
                        self.rotations[emb.from_local[x]] = rot;
                    }
                }
                (s_fan, t_fan)
            }
        };
        self.fans[v] = Some(out.clone());
        Ok(out)
    }
}

/// Per-root outcome classification, coarsest failure first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum BlockFailure {
    Inappropriate,
    SidesUnsatisfiable,
    C1pFailure,
}

#[derive(Debug, Clone)]
pub struct BlockOutcome {
    pub embedding: Option<Embedding>,
    /// Deepest stage reached across the rejected roots.
    pub failure: Option<BlockFailure>,
    /// (root edge, cluster-row count, total cluster size) per attempted
    /// root, for the matrix size bound.
    pub row_stats: Vec<(EdgeId, usize, usize)>,
}

/// Side assignments for every critical S-node, or `None` when some S-node
/// admits no consistent assignment.
pub fn compute_sides(
    g: &Graph,
    rt: &RootedSpqrTree,
    clusters: &[ClusterSpec],
    tables: &[LabelTable],
) -> Option<std::collections::BTreeMap<(NodeId, usize), Side>> {
    let mut out = std::collections::BTreeMap::new();
    for v in 0..rt.tree.nodes.len() {
        if rt.kind(v) != NodeKind::S {
            continue;
        }
        let criticals = critical_clusters(g, rt, tables, v);
        if criticals.is_empty() {
            continue;
        }
        let sides = assign_sides(&criticals, |a, b| {
            if a == b {
                crate::labeling::SideConstraint::Same
            } else {
                side_constraint(g, rt, v, &clusters[a].mask, &clusters[b].mask)
            }
        })?;
        for (c, side) in sides {
            out.insert((v, c), side);
        }
    }
    Some(out)
}

/// Label, split, build, solve and reconstruct for one root; the full §-free
/// engine step. Returns `None` when the matrices admit no ordering.
pub fn solve_and_embed(
    g: &Graph,
    rt: &RootedSpqrTree,
    sf: &SplitForest,
    ms: &mut MatrixSet,
    tie: TieBreak,
) -> Result<Option<Embedding>> {
    if !solve_matrices(ms, tie) {
        return Ok(None);
    }
    reconstruct_embedding(g, rt, sf, ms).map(Some)
}

/// Decide c-planarity of a 2-connected block for the given clusters with
/// exposure sets, iterating the suitable roots. The first success wins; its
/// embedding is verified before being returned.
pub fn test_block(
    g: &Graph,
    clusters_in: &[ClusterSpec],
    suitable_roots: &[EdgeId],
    tie: TieBreak,
) -> Result<BlockOutcome> {
    // Identical (cluster, exposure) pairs impose identical constraints.
    let mut clusters: Vec<ClusterSpec> = Vec::new();
    for c in clusters_in {
        if !clusters.iter().any(|d| d.mask == c.mask && d.cext == c.cext) {
            clusters.push(c.clone());
        }
    }
    let total_size: usize = clusters.iter().map(|c| c.size()).sum();

    let tree = build_spqr(g)?;
    let mut failure: Option<BlockFailure> = None;
    let mut row_stats = Vec::new();
    let bump = |f: &mut Option<BlockFailure>, new: BlockFailure| {
        if f.map_or(true, |old| new > old) {
            *f = Some(new);
        }
    };
    for &e in suitable_roots {
        let rt = root_at(g, &tree, tree.q_node_for_edge(e))?;
        let mut tables = Vec::new();
        for c in &clusters {
            tables.push(label_tree(g, &rt, &c.mask, &c.cext)?);
        }
        if tables.iter().any(|t| t.labels[rt.root] == Label::Inappropriate) {
            bump(&mut failure, BlockFailure::Inappropriate);
            continue;
        }
        let Some(sides) = compute_sides(g, &rt, &clusters, &tables) else {
            bump(&mut failure, BlockFailure::SidesUnsatisfiable);
            continue;
        };
        let sf = split_at_r_nodes(&rt, &clusters, &tables)?;
        let mut ms = build_matrices(g, &rt, &clusters, &tables, &sf, &sides)?;
        row_stats.push((e, ms.cluster_row_count(), total_size));
        match solve_and_embed(g, &rt, &sf, &mut ms, tie)? {
            None => {
                bump(&mut failure, BlockFailure::C1pFailure);
                continue;
            }
            Some(emb) => {
                verify_block_embedding(g, &clusters, &emb)?;
                if !crate::oracle::lemma1_conditions_hold(g, &rt, &clusters, &emb)? {
                    return Err(Error::Internal(
                        "reconstructed embedding violates the structural conditions".into(),
                    ));
                }
                return Ok(BlockOutcome { embedding: Some(emb), failure: None, row_stats });
            }
        }
    }
    Ok(BlockOutcome { embedding: None, failure, row_stats })
}

/// The definitional checks every returned block embedding must pass:
/// c-planarity for every cluster and exposure of every C_ext vertex.
pub fn verify_block_embedding(
    g: &Graph,
    clusters: &[ClusterSpec],
    emb: &Embedding,
) -> Result<()> {
    let fs = crate::embed::validate_embedding(g, emb)?;
    for c in clusters {
        if !crate::embed::cluster_outside_ok(g, &fs, emb.outer_face, &c.mask) {
            return Err(Error::Internal(format!(
                "embedding is not c-planar for cluster {:?}",
                c.name
            )));
        }
        if !crate::embed::cluster_exposure_ok(g, &fs, emb.outer_face, &c.mask, &c.cext) {
            return Err(Error::Internal(format!(
                "exposed vertices of cluster {:?} are not on its outer face",
                c.name
            )));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{oracle_c_planar, DEFAULT_BUDGET};
    use crate::graph::{Cluster, ClusteredGraph};

    fn mask_of(n: usize, vs: &[usize]) -> Vec<bool> {
        let mut m = vec![false; n];
        for &v in vs {
            m[v] = true;
        }
        m
    }

    fn all_roots(g: &Graph) -> Vec<EdgeId> {
        (0..g.num_edges()).collect()
    }

    fn check_engine_vs_oracle(g: &Graph, clusters: &[(&str, Vec<usize>)]) {
        let specs: Vec<ClusterSpec> = clusters
            .iter()
            .map(|(name, vs)| ClusterSpec::new(*name, mask_of(g.num_vertices(), vs), vec![]))
            .collect();
        let out = test_block(g, &specs, &all_roots(g), TieBreak::LexLeast).unwrap();
        let cg = ClusteredGraph::new(
            g.clone(),
            clusters.iter().map(|(n, vs)| Cluster::new(*n, vs.clone())).collect(),
        )
        .unwrap();
        let (want, _) = oracle_c_planar(&cg, DEFAULT_BUDGET).unwrap();
        assert_eq!(out.embedding.is_some(), want, "engine vs oracle");
        if let Some(emb) = &out.embedding {
            assert!(crate::embed::check_c_planar_embedding(&cg, emb).unwrap());
        }
    }

    #[test]
    fn k4_with_full_cluster_embeds_for_any_root() {
        let g = Graph::new(4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        for e in 0..g.num_edges() {
            let specs = vec![ClusterSpec::new("all", vec![true; 4], vec![])];
            let out = test_block(&g, &specs, &[e], TieBreak::LexLeast).unwrap();
            assert!(out.embedding.is_some(), "root {e}");
        }
    }

    #[test]
    fn k4_split_has_special_p_with_three_columns() {
        let g = Graph::new(4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let tree = build_spqr(&g).unwrap();
        let rt = root_at(&g, &tree, tree.q_node_for_edge(0)).unwrap();
        let specs = vec![ClusterSpec::new("all", vec![true; 4], vec![])];
        let tables = vec![label_tree(&g, &rt, &specs[0].mask, &[]).unwrap()];
        let sf = split_at_r_nodes(&rt, &specs, &tables).unwrap();
        assert_eq!(sf.trees.len(), 1, "R-node children are all leaves");
        let tr = &sf.trees[0];
        assert_eq!(tr.columns.len(), 3);
        assert!(tr
            .nodes
            .iter()
            .any(|n| matches!(n.kind, SplitKind::SpecialP(_))));
    }

    #[test]
    fn tree_without_r_nodes_stays_single_subtree() {
        let g = Graph::new(4, vec![(0, 1), (0, 2), (2, 1), (0, 3), (3, 1)]).unwrap();
        let tree = build_spqr(&g).unwrap();
        let rt = root_at(&g, &tree, tree.q_node_for_edge(0)).unwrap();
        let specs = vec![ClusterSpec::new("c", mask_of(4, &[0, 1, 2]), vec![])];
        let tables = vec![label_tree(&g, &rt, &specs[0].mask, &[]).unwrap()];
        let sf = split_at_r_nodes(&rt, &specs, &tables).unwrap();
        assert_eq!(sf.trees.len(), 1);
    }

    #[test]
    fn theta_cluster_engine_matches_oracle() {
        let g = Graph::new(4, vec![(0, 1), (0, 2), (2, 1), (0, 3), (3, 1)]).unwrap();
        check_engine_vs_oracle(&g, &[("c", vec![0, 1, 2])]);
    }

    #[test]
    fn c4_pair_cluster_embeds() {
        let g = Graph::new(4, vec![(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        check_engine_vs_oracle(&g, &[("c", vec![0, 1])]);
    }

    #[test]
    fn wheel_rim_embeds() {
        let g = Graph::new(
            5,
            vec![(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (2, 3), (3, 4), (4, 1)],
        )
        .unwrap();
        check_engine_vs_oracle(&g, &[("rim", vec![1, 2, 3, 4])]);
    }

    #[test]
    fn octahedron_equator_fails_at_all_roots() {
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
        let specs = vec![ClusterSpec::new("eq", mask_of(6, &[0, 1, 2, 3]), vec![])];
        let out = test_block(&g, &specs, &all_roots(&g), TieBreak::LexLeast).unwrap();
        assert!(out.embedding.is_none());
        assert_eq!(out.failure, Some(BlockFailure::Inappropriate));
    }

    #[test]
    fn two_clusters_with_exposure() {
        // C4 with one cluster and an exposed vertex: still embeddable.
        let g = Graph::new(4, vec![(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let specs = vec![ClusterSpec::new("c", mask_of(4, &[0, 1, 2]), vec![1])];
        let out = test_block(&g, &specs, &all_roots(&g), TieBreak::LexLeast).unwrap();
        assert!(out.embedding.is_some());
    }

    /// The running-example shape: a P-node over two branches, the second a
    /// chain of two further P-nodes, with two overlapping clusters.
    #[test]
    fn example_matrix_layout_and_rows() {
        let g = Graph::new(
            8,
            vec![
                (0, 1), // e, the root edge
                (0, 2),
                (2, 1), // branch through 2
                (0, 3),
                (3, 5), // chain part 0-3-5
                (0, 4),
                (4, 5), // chain part 0-4-5
                (5, 6),
                (6, 1), // tail 5-6-1
                (5, 1), // direct chord
                (5, 7),
                (7, 1), // tail 5-7-1
            ],
        )
        .unwrap();
        let r_cluster = mask_of(8, &[0, 1, 4, 5, 7]);
        let b_cluster = mask_of(8, &[0, 1, 2, 3, 5, 6]);
        let tree = build_spqr(&g).unwrap();
        let rt = root_at(&g, &tree, tree.q_node_for_edge(0)).unwrap();
        let specs = vec![
            ClusterSpec::new("R", r_cluster.clone(), vec![]),
            ClusterSpec::new("B", b_cluster.clone(), vec![]),
        ];
        let tables: Vec<LabelTable> = specs
            .iter()
            .map(|c| label_tree(&g, &rt, &c.mask, &[]).unwrap())
            .collect();

        // The top P-node and both nested P-nodes, and the S-chain between
        // them, are border for both clusters.
        let s_nodes: Vec<NodeId> = (0..rt.tree.nodes.len())
            .filter(|&v| rt.kind(v) == NodeKind::S && rt.children[v].iter().any(|&c| rt.kind(c) == NodeKind::P))
            .collect();
        assert_eq!(s_nodes.len(), 1);
        let s2 = s_nodes[0];
        for t in &tables {
            assert_eq!(t.labels[s2], Label::Border);
        }
        for v in 0..rt.tree.nodes.len() {
            if rt.kind(v) == NodeKind::P {
                for t in &tables {
                    assert_eq!(t.labels[v], Label::Border, "P-node {v}");
                }
            }
        }
        // Both clusters are critical for the chain S-node.
        assert_eq!(critical_clusters(&g, &rt, &tables, s2), vec![0, 1]);

        let sides = compute_sides(&g, &rt, &specs, &tables).unwrap();
        let sf = split_at_r_nodes(&rt, &specs, &tables).unwrap();
        let ms = build_matrices(&g, &rt, &specs, &tables, &sf, &sides).unwrap();
        assert_eq!(ms.per_tree.len(), 1);
        let tm = &ms.per_tree[0];

        // Column layout: six lowest-P-children plus the external column.
        assert_eq!(tm.matrix.cols, 7);

        // Initialization row of the top P-node covers all regular columns.
        let top_p = rt.children[rt.children[rt.root][0]].len(); // silence path; found below
        let _ = top_p;
        let top_p_split = sf.trees[0].nodes[sf.trees[0].root].children[0];
        let init_row = tm
            .matrix
            .row_labels
            .iter()
            .position(|l| matches!(l, RowLabel::Init(v) if *v == top_p_split))
            .expect("init row of the root child");
        let want: Vec<bool> = (0..7).map(|c| c != tm.ext_root.unwrap()).collect();
        assert_eq!(tm.matrix.rows[init_row], want);

        // The border row of the top P-node for cluster R spans the chain
        // columns and the external column, but not the first branch.
        let top_p_orig = rt.children[rt.root][0];
        let r1_row = tm
            .matrix
            .row_labels
            .iter()
            .position(|l| {
                matches!(l, RowLabel::Cluster { p_node, cluster: 0, kind: RowKind::R1 } if *p_node == top_p_orig)
            })
            .expect("border row for cluster R at the top P-node");
        let row = &tm.matrix.rows[r1_row];
        assert_eq!(
            row.iter().map(|&b| u8::from(b)).collect::<Vec<_>>(),
            vec![0, 1, 1, 1, 1, 1, 1],
        );

        // Cluster-attributable rows stay within the size bound.
        let total: usize = specs.iter().map(|c| c.size()).sum();
        assert!(ms.cluster_row_count() <= 3 * total);
    }

    #[test]
    fn engine_against_oracle_on_random_two_connected_instances() {
        use rand::Rng;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1234);
        let mut yes = 0;
        let mut no = 0;
        for round in 0..60 {
            let n = 4 + (round % 5);
            let g = crate::generate::random_two_connected_planar(&mut rng, n);
            // random connected clusters by BFS, biased toward mid-size sets
            // that can actually wrap around something
            let k = rng.gen_range(1..=3usize);
            let clusters: Vec<(String, Vec<usize>)> = (0..k)
                .map(|i| {
                    let size = rng.gen_range(3.min(n)..=n.saturating_sub(1).max(3).min(n));
                    (format!("c{i}"), random_connected_subset(&mut rng, &g, size))
                })
                .collect();
            let specs: Vec<ClusterSpec> = clusters
                .iter()
                .map(|(name, vs)| {
                    ClusterSpec::new(name.clone(), mask_of(g.num_vertices(), vs), vec![])
                })
                .collect();
            let out = test_block(&g, &specs, &all_roots(&g), TieBreak::LexLeast).unwrap();
            let cg = ClusteredGraph::new(
                g.clone(),
                clusters
                    .iter()
                    .map(|(n2, vs)| Cluster::new(n2.clone(), vs.clone()))
                    .collect(),
            )
            .unwrap();
            let (want, _) = oracle_c_planar(&cg, DEFAULT_BUDGET).unwrap();
            assert_eq!(
                out.embedding.is_some(),
                want,
                "round {round}: engine disagrees with oracle on {:?} clusters {:?}",
                g.edges(),
                clusters,
            );
            if want {
                yes += 1;
                let emb = out.embedding.unwrap();
                assert!(crate::embed::check_c_planar_embedding(&cg, &emb).unwrap());
            } else {
                no += 1;
            }
        }
        assert!(yes > 0 && no > 0, "suite should exercise both verdicts ({yes} yes, {no} no)");
    }

    fn random_connected_subset(rng: &mut impl rand::Rng, g: &Graph, size: usize) -> Vec<usize> {
        use rand::seq::SliceRandom;
        let n = g.num_vertices();
        let inc = g.incidence();
        let start = rng.gen_range(0..n);
        let mut chosen = vec![start];
        let mut in_set = vec![false; n];
        in_set[start] = true;
        while chosen.len() < size {
            let mut frontier: Vec<usize> = Vec::new();
            for &v in &chosen {
                for &e in &inc[v] {
                    let w = g.other_end(e, v);
                    if !in_set[w] {
                        frontier.push(w);
                    }
                }
            }
            frontier.sort_unstable();
            frontier.dedup();
            let Some(&next) = frontier.choose(rng) else { break };
            in_set[next] = true;
            chosen.push(next);
        }
        chosen.sort_unstable();
        chosen
    }
}
