use crate::contraction::ContractionSequence;
use crate::trigraph::Trigraph;

/// Contracts, at every step, the pair whose contraction gives the smallest
/// global maximum red degree (smallest pair first on ties). Returns the full
/// sequence and its width. O(n^4) overall, so meant for modest `n`.
pub fn greedy_sequence(g: &Trigraph) -> (ContractionSequence, usize) {
    let mut live = g.clone();
    let mut seq = ContractionSequence::empty();
    let mut width = live.max_red_degree();
    while live.vertex_count() > 1 {
        let (u, v) = greedy_step(&live);
        live.contract_in_place(u, v).expect("greedy picks alive pairs");
        width = width.max(live.max_red_degree());
        seq.push(u, v);
    }
    (seq, width)
}

/// The pair a greedy step would contract (1-indexed, `u < v`).
pub(crate) fn greedy_step(g: &Trigraph) -> (usize, usize) {
    let vs: Vec<usize> = g.vertices().map(|v| v - 1).collect();
    let mut best = (usize::MAX, 0, 0);
    for (i, &a) in vs.iter().enumerate() {
        for &b in &vs[i + 1..] {
            let cost = g.preview_internal(a, b).max_red_degree;
            if cost < best.0 {
                best = (cost, a, b);
            }
        }
    }
    (best.1 + 1, best.2 + 1)
}
