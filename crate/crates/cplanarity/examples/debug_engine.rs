// temp: find lemma-1 disagreement round
use cplanarity::c1p::TieBreak;
use cplanarity::graph::{Cluster, ClusteredGraph, Graph};
use cplanarity::matrices::*;
use cplanarity::oracle::{lemma1_violation, oracle_c_planar, DEFAULT_BUDGET};
use cplanarity::spqr::{build_spqr, root_at};
use rand::Rng;
use rand::SeedableRng;

fn mask_of(n: usize, vs: &[usize]) -> Vec<bool> {
    let mut m = vec![false; n];
    for &v in vs { m[v] = true; }
    m
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
                if !in_set[w] { frontier.push(w); }
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

fn main() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1234);
    for round in 0..40 {
        let n = 4 + (round % 5);
        let g = cplanarity::generate::random_two_connected_planar(&mut rng, n);
        let k = rng.gen_range(1..=2usize);
        let clusters: Vec<(String, Vec<usize>)> = (0..k)
            .map(|i| {
                let size = rng.gen_range(1..=n);
                (format!("c{i}"), random_connected_subset(&mut rng, &g, size))
            })
            .collect();
        let specs: Vec<ClusterSpec> = clusters
            .iter()
            .map(|(name, vs)| ClusterSpec::new(name.clone(), mask_of(g.num_vertices(), vs), vec![]))
            .collect();
        let roots: Vec<usize> = (0..g.num_edges()).collect();
        match test_block(&g, &specs, &roots, TieBreak::LexLeast) {
            Ok(o) => {
                let cg = ClusteredGraph::new(
                    g.clone(),
                    clusters.iter().map(|(n2, vs)| Cluster::new(n2.clone(), vs.clone())).collect(),
                ).unwrap();
                let (want, _) = oracle_c_planar(&cg, DEFAULT_BUDGET).unwrap();
                if o.embedding.is_some() != want {
                    println!("round {round}: VERDICT MISMATCH engine={} oracle={} edges={:?} clusters={:?}",
                        o.embedding.is_some(), want, g.edges(), clusters);
                    return;
                }
            }
            Err(e) => {
                println!("round {round}: ERROR {e} edges={:?} clusters={:?}", g.edges(), clusters);
                // replay to find the violating root + details
                let tree = build_spqr(&g).unwrap();
                for e in 0..g.num_edges() {
                    let rt = root_at(&g, &tree, tree.q_node_for_edge(e)).unwrap();
                    let tables: Vec<_> = specs.iter()
                        .map(|c| cplanarity::labeling::label_tree(&g, &rt, &c.mask, &c.cext).unwrap())
                        .collect();
                    if tables.iter().any(|t| t.labels[rt.root] == cplanarity::labeling::Label::Inappropriate) {
                        continue;
                    }
                    let Some(sides) = compute_sides(&g, &rt, &specs, &tables) else { continue };
                    let sf = split_at_r_nodes(&rt, &specs, &tables).unwrap();
                    let mut ms = build_matrices(&g, &rt, &specs, &tables, &sf, &sides).unwrap();
                    if let Ok(Some(emb)) = solve_and_embed(&g, &rt, &sf, &mut ms, TieBreak::LexLeast) {
                        let defn = verify_block_embedding(&g, &specs, &emb);
                        let viol = lemma1_violation(&g, &rt, &specs, &emb).unwrap();
                        println!("  root {e}: definitional={:?} lemma1-violation={:?}", defn.is_ok(), viol);
                        if defn.is_ok() && viol.is_some() {
                            for v in 0..rt.tree.nodes.len() {
                                println!("    node {v} kind {:?} poles {:?} pert_v {:?}",
                                    rt.kind(v), rt.poles[v],
                                    (0..g.num_vertices()).filter(|&x| rt.pert_vertices[v][x]).collect::<Vec<_>>());
                            }
                            println!("    emb rotations {:?} outer {}", emb.rotations, emb.outer_face);
                        }
                        return;
                    }
                }
                return;
            }
        }
    }
    println!("all rounds ok");
}
