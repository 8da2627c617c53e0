use proptest::prelude::*;
use twinlab::{apply_sequence, class_histogram, ContractionSequence, Trigraph, VertexPartition};

fn graph_from_mask(n: usize, mask: u64) -> Trigraph {
    let mut edges = Vec::new();
    let mut bit = 0;
    for u in 1..=n {
        for v in u + 1..=n {
            if mask >> bit & 1 == 1 {
                edges.push((u, v));
            }
            bit += 1;
        }
    }
    Trigraph::from_edge_list(n, &edges).unwrap()
}

fn small_graph(max_n: usize) -> impl Strategy<Value = Trigraph> {
    (2..=max_n, any::<u64>()).prop_map(|(n, mask)| graph_from_mask(n, mask))
}

/// Graph with a block label in `0..blocks` per vertex.
fn graph_with_labels() -> impl Strategy<Value = (Trigraph, Vec<usize>)> {
    (2usize..=8, any::<u64>(), 1usize..=4).prop_flat_map(|(n, mask, k)| {
        (Just(graph_from_mask(n, mask)), proptest::collection::vec(0..k, n))
    })
}

fn blocks_of(labels: &[usize]) -> Vec<Vec<usize>> {
    let k = labels.iter().max().map_or(0, |m| m + 1);
    let mut blocks = vec![Vec::new(); k];
    for (i, &l) in labels.iter().enumerate() {
        blocks[l].push(i + 1);
    }
    blocks.retain(|b| !b.is_empty());
    blocks
}

proptest! {
    #[test]
    fn contraction_red_degree_matches_merged_vertex(g in small_graph(8), a in 0usize..8, b in 0usize..8) {
        let n = g.n();
        let (u, v) = (a % n + 1, b % n + 1);
        prop_assume!(u != v);
        let r = g.contraction_red_degree(u, v).unwrap();
        let h = g.contract(u, v).unwrap();
        prop_assert_eq!(r, h.red_degree(u.min(v)).unwrap());
        // plain graphs: symmetric difference of neighbourhoods minus the pair
        let nu: std::collections::BTreeSet<usize> = g.neighbors(u).unwrap().into_iter().collect();
        let nv: std::collections::BTreeSet<usize> = g.neighbors(v).unwrap().into_iter().collect();
        let direct = nu.symmetric_difference(&nv).filter(|&&x| x != u && x != v).count();
        prop_assert_eq!(r, direct);
    }

    #[test]
    fn quotient_equals_sequential_contraction((g, labels) in graph_with_labels(), order_seed in any::<u64>()) {
        let blocks = blocks_of(&labels);
        let q = g.quotient(&VertexPartition::new(blocks.clone()).unwrap()).unwrap();
        // realize every block by contracting its members in a shuffled order
        let mut steps = Vec::new();
        for b in &blocks {
            let mut rest: Vec<usize> = b.clone();
            let mut state = order_seed ^ b[0] as u64;
            while rest.len() > 1 {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                let i = (state >> 33) as usize % rest.len();
                let j = (i + 1 + (state >> 40) as usize % (rest.len() - 1)) % rest.len();
                let (x, y) = (rest[i], rest[j]);
                steps.push((x, y));
                let keep = x.min(y);
                rest.retain(|&z| z != x && z != y);
                rest.push(keep);
            }
        }
        // interleave blocks too: sort steps by a seed-dependent key
        let mut keyed: Vec<(u64, usize, (usize, usize))> = Vec::new();
        let mut per_block_index = std::collections::HashMap::new();
        for &(x, y) in &steps {
            let blk = labels[x - 1];
            let idx = per_block_index.entry(blk).or_insert(0usize);
            keyed.push(((blk as u64).wrapping_mul(order_seed | 1) % 7, *idx, (x, y)));
            *idx += 1;
        }
        keyed.sort_by_key(|k| (k.1, k.0));
        let mut h = g.clone();
        for (_, _, (x, y)) in keyed {
            h.contract_in_place(x, y).unwrap();
        }
        prop_assert_eq!(h, q);
    }

    #[test]
    fn twin_contraction_adds_no_red(g in small_graph(8), a in 0usize..8) {
        let n = g.n();
        let u = a % n + 1;
        // add a fresh false twin of u as vertex n + 1
        let mut edges = g.black_edges();
        for x in g.neighbors(u).unwrap() {
            edges.push((x, n + 1));
        }
        let h = Trigraph::from_edge_list(n + 1, &edges).unwrap();
        let c = h.contract(u, n + 1).unwrap();
        prop_assert_eq!(c.red_edge_count(), 0);
        prop_assert_eq!(h.contraction_red_degree(u, n + 1).unwrap(), 0);
    }

    #[test]
    fn red_monotonicity((g, labels) in graph_with_labels(), pick in any::<(usize, usize)>()) {
        let blocks = VertexPartition::new(blocks_of(&labels)).unwrap().completion(g.vertices());
        prop_assume!(blocks.len() >= 2);
        let s = &blocks[pick.0 % blocks.len()];
        let t = &blocks[(pick.0 % blocks.len() + 1 + pick.1 % (blocks.len() - 1)) % blocks.len()];
        let with_s = g.quotient(&VertexPartition::new(blocks.clone()).unwrap()).unwrap();
        let without: Vec<Vec<usize>> = blocks.iter().filter(|b| *b != s).cloned().collect();
        let split = g.quotient(&VertexPartition::new(without).unwrap()).unwrap();
        let label = t[0];
        prop_assert!(
            split.red_degree(label).unwrap() <= with_s.red_degree(label).unwrap() + s.len() - 1
        );
    }

    #[test]
    fn class_mass_identity(g in small_graph(8), picks in proptest::collection::vec(any::<(usize, usize)>(), 7)) {
        let mut alive: Vec<usize> = g.vertices().collect();
        let mut steps = Vec::new();
        for (i, j) in picks {
            if alive.len() < 2 {
                break;
            }
            let x = alive[i % alive.len()];
            let rest: Vec<usize> = alive.iter().copied().filter(|&z| z != x).collect();
            let y = rest[j % rest.len()];
            steps.push((x, y));
            alive.retain(|&z| z != x.max(y));
        }
        let trace = apply_sequence(&g, &ContractionSequence::new(steps).unwrap()).unwrap();
        for s in 1..=trace.steps.len() + 1 {
            let h = class_histogram(&trace, s).unwrap();
            let mass: usize = h.iter().map(|(i, c)| i * c).sum();
            prop_assert_eq!(mass, g.n());
            prop_assert_eq!(trace.class_mass[s - 1], g.n());
        }
    }
}

#[test]
fn spec_examples() {
    let p4 = Trigraph::from_edge_list(4, &[(1, 2), (2, 3), (3, 4)]).unwrap();
    let c = p4.contract(2, 3).unwrap();
    assert_eq!(c.red_edges(), vec![(1, 2), (2, 4)]);
    assert_eq!(c.max_red_degree(), 2);
    let c4 = Trigraph::from_edge_list(4, &[(1, 2), (2, 3), (3, 4), (4, 1)]).unwrap();
    assert_eq!(c4.contraction_red_degree(1, 3).unwrap(), 0);
    let c5 = Trigraph::from_edge_list(5, &[(1, 2), (2, 3), (3, 4), (4, 5), (5, 1)]).unwrap();
    assert_eq!(c5.contraction_red_degree(1, 2).unwrap(), 2);
    assert_eq!(c5.complement().unwrap().black_edge_count(), 5);

    let trace = apply_sequence(&c5, &ContractionSequence::new(vec![(1, 2), (1, 3)]).unwrap()).unwrap();
    let h = class_histogram(&trace, 3).unwrap();
    assert_eq!(h.into_iter().collect::<Vec<_>>(), vec![(1, 2), (3, 1)]);
}
