//! Pair-counting lower-bound certificate, dense-subgraph peeling, and
//! complete bipartite `K_{2,m}` counting.

use serde::Serialize;

use super::{domain, NumericsError};
use crate::bitset;
use crate::trigraph::Trigraph;

fn require_plain(g: &Trigraph) -> Result<(), NumericsError> {
    if g.is_plain() {
        Ok(())
    } else {
        Err(NumericsError::NotPlain)
    }
}

/// Number of unordered pairs of alive vertices with `r(u, v) < threshold`.
pub fn count_low_pairs(g: &Trigraph, threshold: f64) -> Result<u64, NumericsError> {
    require_plain(g)?;
    let vs: Vec<usize> = g.vertices().map(|v| v - 1).collect();
    let mut count = 0;
    for (i, &a) in vs.iter().enumerate() {
        for &b in &vs[i + 1..] {
            if (g.merged_red_degree(a, b) as f64) < threshold {
                count += 1;
            }
        }
    }
    Ok(count)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LowerBoundCertificate {
    pub b: f64,
    pub d: f64,
    pub low_pair_count: u64,
    pub certified: bool,
    /// `Some(d)` when certified: the twin-width then exceeds `d`.
    pub certified_value: Option<f64>,
}

/// Fewer than `b` pairs with `r(u,v) < b + d` on at least `b + 2` vertices
/// certifies twin-width greater than `d`.
pub fn certified_lower_bound(
    g: &Trigraph,
    b: f64,
    d: f64,
) -> Result<LowerBoundCertificate, NumericsError> {
    if !(b > 0.0 && d > 0.0) {
        return Err(domain(format!("b = {b} and d = {d} must be positive")));
    }
    if (g.vertex_count() as f64) < b + 2.0 {
        return Err(domain(format!(
            "|V| >= b + 2 fails: |V| = {} < {}",
            g.vertex_count(),
            b + 2.0
        )));
    }
    let low_pair_count = count_low_pairs(g, b + d)?;
    let certified = (low_pair_count as f64) < b;
    Ok(LowerBoundCertificate {
        b,
        d,
        low_pair_count,
        certified,
        certified_value: certified.then_some(d),
    })
}

/// The certificate with the largest `d` over all integer `b` in
/// `1..=|V|-2`, or `None` when no positive `d` can be certified. With the
/// pair values sorted, `b` certifies every `d <= r_(b) - b`, where `r_(b)` is
/// the `b`-th smallest value.
pub fn strongest_certificate(g: &Trigraph) -> Result<Option<LowerBoundCertificate>, NumericsError> {
    require_plain(g)?;
    let vs: Vec<usize> = g.vertices().map(|v| v - 1).collect();
    let k = vs.len();
    if k < 3 {
        return Ok(None);
    }
    let mut r: Vec<usize> = Vec::with_capacity(k * (k - 1) / 2);
    for (i, &a) in vs.iter().enumerate() {
        for &b in &vs[i + 1..] {
            r.push(g.merged_red_degree(a, b));
        }
    }
    r.sort_unstable();
    let best = (1..=k - 2)
        .map(|b| (r[b - 1] as i64 - b as i64, b))
        .max_by_key(|&(d, b)| (d, std::cmp::Reverse(b)));
    match best {
        Some((d, b)) if d > 0 => certified_lower_bound(g, b as f64, d as f64).map(Some),
        _ => Ok(None),
    }
}

/// Repeatedly deletes a minimum-degree vertex while its degree is at most
/// the current `|E|/|V|`. The result has minimum degree above `|E(G)|/|V(G)|`.
pub fn min_degree_subgraph(g: &Trigraph) -> Result<Trigraph, NumericsError> {
    require_plain(g)?;
    let mut edges = g.black_edge_count();
    if edges == 0 {
        return Err(NumericsError::NoEdges);
    }
    let mut h = g.clone();
    let mut degree: Vec<usize> = (0..g.n())
        .map(|a| bitset::popcount(g.black_row(a)))
        .collect();
    let mut count = h.vertex_count();
    loop {
        let Some(v) = h.vertices().min_by_key(|&v| (degree[v - 1], v)) else {
            break;
        };
        // compare deg <= |E|/|V| without division
        if degree[v - 1] * count > edges {
            break;
        }
        for x in bitset::ones(h.black_row(v - 1)).collect::<Vec<_>>() {
            degree[x] -= 1;
        }
        edges -= degree[v - 1];
        degree[v - 1] = 0;
        h.delete_vertex(v).expect("peeled vertex is alive");
        count -= 1;
    }
    Ok(h)
}

fn common_neighbour_counts(g: &Trigraph) -> Vec<usize> {
    let vs: Vec<usize> = g.vertices().map(|v| v - 1).collect();
    let mut out = Vec::new();
    for (i, &a) in vs.iter().enumerate() {
        for &b in &vs[i + 1..] {
            let (ra, rb) = (g.black_row(a), g.black_row(b));
            out.push(ra.iter().zip(rb).map(|(x, y)| (x & y).count_ones() as usize).sum());
        }
    }
    out
}

fn choose(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Number of `K_{2,m}` subgraphs. Each copy is counted once: for `m >= 3`
/// its 2-side is unique; a `K_{2,2}` (4-cycle) has two 2-sides, so the pair
/// count is halved.
pub fn count_k2m(g: &Trigraph, m: usize) -> Result<u128, NumericsError> {
    require_plain(g)?;
    if m < 2 {
        return Err(domain(format!("m = {m} must be at least 2")));
    }
    let total: u128 = common_neighbour_counts(g).into_iter().map(|c| choose(c, m)).sum();
    Ok(if m == 2 { total / 2 } else { total })
}

/// Whether some pair of vertices has at least `m` common neighbours.
pub fn has_k2m(g: &Trigraph, m: usize) -> Result<bool, NumericsError> {
    require_plain(g)?;
    if m < 2 {
        return Err(domain(format!("m = {m} must be at least 2")));
    }
    let vs: Vec<usize> = g.vertices().map(|v| v - 1).collect();
    for (i, &a) in vs.iter().enumerate() {
        for &b in &vs[i + 1..] {
            let (ra, rb) = (g.black_row(a), g.black_row(b));
            let c: usize = ra.iter().zip(rb).map(|(x, y)| (x & y).count_ones() as usize).sum();
            if c >= m {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c5() -> Trigraph {
        Trigraph::from_edge_list(5, &[(1, 2), (2, 3), (3, 4), (4, 5), (5, 1)]).unwrap()
    }

    #[test]
    fn low_pairs_examples() {
        assert_eq!(count_low_pairs(&Trigraph::complete(4), 1.0).unwrap(), 6);
        assert_eq!(count_low_pairs(&c5(), 2.0).unwrap(), 0);
        assert_eq!(count_low_pairs(&Trigraph::edgeless(6), 0.5).unwrap(), 15);
    }

    #[test]
    fn certificate_examples() {
        let c = certified_lower_bound(&c5(), 1.0, 1.0).unwrap();
        assert!(c.certified);
        assert_eq!(c.certified_value, Some(1.0));
        for b in 1..=2 {
            let c = certified_lower_bound(&Trigraph::complete(4), b as f64, 1.0).unwrap();
            assert!(!c.certified);
        }
        assert!(certified_lower_bound(&Trigraph::complete(4), 3.0, 1.0).is_err());
        assert!(certified_lower_bound(&c5(), 0.0, 1.0).is_err());
    }

    #[test]
    fn strongest_certificate_is_certified_and_maximal() {
        let c = strongest_certificate(&c5()).unwrap().unwrap();
        assert!(c.certified);
        // every pair of C5 has r = 2, so b = 1 gives d = 1 and nothing larger works
        assert_eq!((c.b, c.d), (1.0, 1.0));
        assert!(strongest_certificate(&Trigraph::complete(5)).unwrap().is_none());
        let g = crate::randgen::gnp(crate::randgen::RandomGraphSpec::new(40, 0.5, 3).unwrap()).unwrap();
        let best = strongest_certificate(&g).unwrap().unwrap();
        assert!(best.certified);
        for b in 1..=38 {
            let c = certified_lower_bound(&g, b as f64, best.d + 1.0).unwrap();
            assert!(!c.certified, "b = {b}");
        }
    }

    #[test]
    fn peeling_examples() {
        let p4 = Trigraph::from_edge_list(4, &[(1, 2), (2, 3), (3, 4)]).unwrap();
        assert_eq!(min_degree_subgraph(&p4).unwrap(), p4);
        let paw = Trigraph::from_edge_list(4, &[(1, 2), (2, 3), (3, 1), (3, 4)]).unwrap();
        let h = min_degree_subgraph(&paw).unwrap();
        assert_eq!(h.vertices().collect::<Vec<_>>(), vec![1, 2, 3]);
        assert_eq!(h.black_edge_count(), 3);
        assert_eq!(min_degree_subgraph(&Trigraph::complete(5)).unwrap(), Trigraph::complete(5));
        assert_eq!(
            min_degree_subgraph(&Trigraph::edgeless(3)).unwrap_err(),
            NumericsError::NoEdges
        );
    }

    #[test]
    fn k2m_examples() {
        assert_eq!(count_k2m(&Trigraph::complete(4), 2).unwrap(), 3);
        let c4 = Trigraph::from_edge_list(4, &[(1, 2), (2, 3), (3, 4), (4, 1)]).unwrap();
        assert_eq!(count_k2m(&c4, 2).unwrap(), 1);
        let tree = Trigraph::from_edge_list(5, &[(1, 2), (1, 3), (3, 4), (3, 5)]).unwrap();
        assert_eq!(count_k2m(&tree, 2).unwrap(), 0);
        assert!(!has_k2m(&tree, 2).unwrap());
        assert!(has_k2m(&c4, 2).unwrap());
        let k23 = Trigraph::from_edge_list(
            5,
            &[(1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)],
        )
        .unwrap();
        assert_eq!(count_k2m(&k23, 3).unwrap(), 1);
    }
}
