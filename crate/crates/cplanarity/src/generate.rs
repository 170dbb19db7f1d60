//! Random instance generation: connected planar graphs sampled as random
//! maximal planar graphs minus random edges, clusters grown by random BFS,
//! and rejection sampling for partition structure. Deterministic per seed.

use crate::error::{Error, Result};
use crate::graph::{bc_tree, is_connected, Graph, VertexId};
use crate::partition::Partition;
use rand::seq::SliceRandom;
use rand::Rng;

/// Random maximal planar graph (a stacked triangulation) on `n >= 3`
/// vertices.
pub fn random_maximal_planar(rng: &mut impl Rng, n: usize) -> Graph {
    assert!(n >= 3);
    let mut edges = vec![(0, 1), (1, 2), (2, 0)];
    let mut faces = vec![[0, 1, 2], [0, 2, 1]];
    for v in 3..n {
        let fi = rng.gen_range(0..faces.len());
        let [a, b, c] = faces.swap_remove(fi);
        edges.push((a, v));
        edges.push((b, v));
        edges.push((c, v));
        faces.push([a, b, v]);
        faces.push([b, c, v]);
        faces.push([c, a, v]);
    }
    Graph::new(n, edges).expect("triangulation")
}

fn thin_out(
    rng: &mut impl Rng,
    n: usize,
    edges: Vec<(usize, usize)>,
    target_edges: usize,
    keep_ok: impl Fn(&Graph) -> bool,
) -> Graph {
    let mut order: Vec<usize> = (0..edges.len()).collect();
    order.shuffle(rng);
    let mut keep = vec![true; edges.len()];
    let mut count = edges.len();
    for &ei in &order {
        if count <= target_edges {
            break;
        }
        keep[ei] = false;
        let remaining: Vec<(usize, usize)> = edges
            .iter()
            .enumerate()
            .filter(|&(i, _)| keep[i])
            .map(|(_, &e)| e)
            .collect();
        let g = Graph::new(n, remaining).expect("subgraph");
        if keep_ok(&g) {
            count -= 1;
        } else {
            keep[ei] = true;
        }
    }
    let remaining: Vec<(usize, usize)> = edges
        .iter()
        .enumerate()
        .filter(|&(i, _)| keep[i])
        .map(|(_, &e)| e)
        .collect();
    Graph::new(n, remaining).expect("subgraph")
}

/// Random connected planar graph: a triangulation thinned to a sparse edge
/// count so that desk-scale enumeration stays cheap.
pub fn random_connected_planar(rng: &mut impl Rng, n: usize) -> Graph {
    let tri = random_maximal_planar(rng, n);
    let m = tri.num_edges();
    let lo = n - 1;
    // Small graphs may stay dense (their rotation systems remain cheap to
    // exhaust); larger ones are thinned so the oracle never refuses.
    let hi = if n <= 6 { m } else { (n + n / 2 + 1).min(m) };
    let target = rng.gen_range(lo..=hi);
    thin_out(rng, n, tri.edges().to_vec(), target, is_connected)
}

/// Random 2-connected planar graph; the thinning keeps a single block.
pub fn random_two_connected_planar(rng: &mut impl Rng, n: usize) -> Graph {
    let tri = random_maximal_planar(rng, n);
    let m = tri.num_edges();
    let lo = n;
    let hi = if n <= 6 { m } else { (n + n / 2 + 1).min(m) };
    let target = rng.gen_range(lo..=hi);
    thin_out(rng, n, tri.edges().to_vec(), target, |g| {
        is_connected(g)
            && g.num_edges() >= 3
            && bc_tree(g)
                .map(|t| t.blocks.len() == 1 && t.cut_vertices.is_empty())
                .unwrap_or(false)
    })
}

/// Random connected vertex subset of the given size, grown by BFS with a
/// randomly shuffled frontier.
pub fn random_connected_cluster(rng: &mut impl Rng, g: &Graph, size: usize) -> Vec<VertexId> {
    let n = g.num_vertices();
    let size = size.clamp(1, n);
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

/// Random partition of the vertex set into `parts` connected pieces, by
/// multi-source BFS with a shuffled frontier.
pub fn random_connected_partition(
    rng: &mut impl Rng,
    g: &Graph,
    parts: usize,
) -> Option<Partition> {
    let n = g.num_vertices();
    let parts = parts.clamp(1, n);
    let inc = g.incidence();
    let mut seeds: Vec<usize> = (0..n).collect();
    seeds.shuffle(rng);
    seeds.truncate(parts);
    let mut part_of = vec![usize::MAX; n];
    for (i, &s) in seeds.iter().enumerate() {
        part_of[s] = i;
    }
    let mut frontier: Vec<usize> = seeds.clone();
    while !frontier.is_empty() {
        frontier.shuffle(rng);
        let mut next = Vec::new();
        for &v in &frontier {
            for &e in &inc[v] {
                let w = g.other_end(e, v);
                if part_of[w] == usize::MAX {
                    part_of[w] = part_of[v];
                    next.push(w);
                }
            }
        }
        frontier = next;
    }
    if part_of.iter().any(|&p| p == usize::MAX) {
        return None; // disconnected graph
    }
    let mut lists: Vec<Vec<usize>> = vec![Vec::new(); parts];
    for (v, &p) in part_of.iter().enumerate() {
        lists[p].push(v);
    }
    lists.retain(|l| !l.is_empty());
    Partition::new(n, lists).ok()
}

/// Rejection-sample a partition whose parts and their complements all induce
/// connected subgraphs.
pub fn random_co_connected_partition(
    rng: &mut impl Rng,
    g: &Graph,
    parts: usize,
    rounds: usize,
) -> Result<Partition> {
    for _ in 0..rounds {
        let Some(p) = random_connected_partition(rng, g, parts) else { continue };
        let ok = p.parts.iter().all(|part| {
            let mut mask = vec![false; g.num_vertices()];
            for &v in part {
                mask[v] = true;
            }
            if !crate::graph::induced_subgraph_connected(g, &mask) {
                return false;
            }
            if mask.iter().all(|&b| b) {
                return true;
            }
            let co: Vec<bool> = mask.iter().map(|&b| !b).collect();
            crate::graph::induced_subgraph_connected(g, &co)
        });
        if ok {
            return Ok(p);
        }
    }
    Err(Error::GeneratorExhausted(rounds))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn generated_graphs_are_planar_connected_and_deterministic() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for n in 3..10 {
            let g = random_connected_planar(&mut rng, n);
            assert!(is_connected(&g));
            assert!(crate::embed::planar_embed(&g).unwrap().is_some());
        }
        let a = random_connected_planar(
            &mut rand_chacha::ChaCha8Rng::seed_from_u64(77),
            8,
        );
        let b = random_connected_planar(
            &mut rand_chacha::ChaCha8Rng::seed_from_u64(77),
            8,
        );
        assert_eq!(a.edges(), b.edges());
    }

    #[test]
    fn two_connected_generator_yields_single_blocks() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(6);
        for n in 4..10 {
            let g = random_two_connected_planar(&mut rng, n);
            let t = bc_tree(&g).unwrap();
            assert_eq!(t.blocks.len(), 1);
        }
    }

    #[test]
    fn clusters_are_connected() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let g = random_connected_planar(&mut rng, 7);
            let size = rng.gen_range(1..=7);
            let c = random_connected_cluster(&mut rng, &g, size);
            let mut mask = vec![false; 7];
            for &v in &c {
                mask[v] = true;
            }
            assert!(crate::graph::induced_subgraph_connected(&g, &mask));
        }
    }

    #[test]
    fn co_connected_partitions_validate() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(8);
        let g = random_two_connected_planar(&mut rng, 8);
        let p = random_co_connected_partition(&mut rng, &g, 2, 200).unwrap();
        for part in &p.parts {
            let mut mask = vec![false; 8];
            for &v in part {
                mask[v] = true;
            }
            assert!(crate::graph::induced_subgraph_connected(&g, &mask));
        }
    }
}
