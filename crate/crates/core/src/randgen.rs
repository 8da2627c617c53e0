//! Seeded random graphs.
//!
//! Every random bit comes from one counter-based generator: draw `i` of seed
//! `s` is the SplitMix64 finalizer applied to `s + GOLDEN * (i + 1)`. A pair
//! is an edge iff the top 53 bits of its draw fall below `ceil(p * 2^53)`, so
//! `p = 0` and `p = 1` are exact.
//!
//! In G(n,p) the pair `{u, v}` (0-indexed, `u < v`) uses draw number
//! `v(v-1)/2 + u`, its colexicographic rank. That rank does not depend on
//! `n`, so G(k,p) is the subgraph of G(n,p) induced by the first `k` labels
//! for the same seed, whatever the iteration order.

use thiserror::Error;

use crate::bitset;
use crate::trigraph::Trigraph;

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;
const BIPARTITE_DOMAIN: u64 = 0x6269_7061_7274_6974;
const COGRAPH_DOMAIN: u64 = 0x636f_6772_6170_6873;

#[derive(Debug, Error, PartialEq)]
pub enum RandGenError {
    #[error("edge probability {0} is outside [0, 1]")]
    InvalidProbability(f64),
    #[error("a graph needs at least one vertex")]
    NoVertices,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RandomGraphSpec {
    pub n: usize,
    pub p: f64,
    pub seed: u64,
}

impl RandomGraphSpec {
    pub fn new(n: usize, p: f64, seed: u64) -> Result<Self, RandGenError> {
        if n == 0 {
            return Err(RandGenError::NoVertices);
        }
        check_p(p)?;
        Ok(RandomGraphSpec { n, p, seed })
    }
}

fn check_p(p: f64) -> Result<(), RandGenError> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(RandGenError::InvalidProbability(p))
    }
}

/// Draw number `index` of stream `seed`.
#[inline]
pub fn draw(seed: u64, index: u64) -> u64 {
    let mut z = seed.wrapping_add(GOLDEN.wrapping_mul(index.wrapping_add(1)));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Acceptance cut on the top 53 bits of a draw.
fn cut(p: f64) -> u64 {
    (p * (1u64 << 53) as f64).ceil() as u64
}

#[inline]
fn accept(seed: u64, index: u64, cut: u64) -> bool {
    (draw(seed, index) >> 11) < cut
}

/// Uniform integer in `0..k`.
fn below(seed: u64, index: u64, k: usize) -> usize {
    ((draw(seed, index) as u128 * k as u128) >> 64) as usize
}

pub fn gnp(spec: RandomGraphSpec) -> Result<Trigraph, RandGenError> {
    let spec = RandomGraphSpec::new(spec.n, spec.p, spec.seed)?;
    let n = spec.n;
    let words = bitset::words_for(n);
    let cut = cut(spec.p);
    let mut rows = vec![0u64; n * words];

    // lower triangle: row v holds its neighbours u < v
    for v in 1..n {
        let base = (v as u64) * (v as u64 - 1) / 2;
        let row = &mut rows[v * words..(v + 1) * words];
        for (k, word) in row.iter_mut().enumerate().take(v.div_ceil(64)) {
            let lo = k * 64;
            let hi = (lo + 64).min(v);
            let mut bits = 0u64;
            for u in lo..hi {
                bits |= (accept(spec.seed, base + u as u64, cut) as u64) << (u - lo);
            }
            *word = bits;
        }
    }
    mirror_lower(&mut rows, n, words);
    Ok(Trigraph::from_black_rows(n, rows))
}

/// Copies the lower triangle onto the upper one, 64x64 blocks at a time.
fn mirror_lower(rows: &mut [u64], n: usize, words: usize) {
    let mut block = [0u64; 64];
    for bi in 0..words {
        for bj in 0..=bi {
            for (r, slot) in block.iter_mut().enumerate() {
                let row = bi * 64 + r;
                *slot = if row < n { rows[row * words + bj] } else { 0 };
            }
            bitset::transpose64(&mut block);
            for (r, &bits) in block.iter().enumerate() {
                let row = bj * 64 + r;
                if row < n {
                    rows[row * words + bi] |= bits;
                }
            }
        }
    }
}

/// A bipartite random graph with sides `A = 1..=a_count` and
/// `B = a_count+1..=a_count+b_count`.
#[derive(Clone, Debug)]
pub struct BipartiteGraph {
    pub graph: Trigraph,
    pub a_side: Vec<usize>,
    pub b_side: Vec<usize>,
}

/// Cross pair `(i, j)` (0-based positions within A and B) uses draw
/// `i * b_count + j` of a stream separated from the G(n,p) one.
pub fn bipartite_gnp(
    a_count: usize,
    b_count: usize,
    p: f64,
    seed: u64,
) -> Result<BipartiteGraph, RandGenError> {
    check_p(p)?;
    let n = a_count + b_count;
    if n == 0 {
        return Err(RandGenError::NoVertices);
    }
    let words = bitset::words_for(n);
    let cut = cut(p);
    let stream = seed ^ BIPARTITE_DOMAIN;
    let mut rows = vec![0u64; n * words];
    for i in 0..a_count {
        for j in 0..b_count {
            if accept(stream, (i * b_count + j) as u64, cut) {
                let b = a_count + j;
                bitset::set(&mut rows[i * words..(i + 1) * words], b);
                bitset::set(&mut rows[b * words..(b + 1) * words], i);
            }
        }
    }
    Ok(BipartiteGraph {
        graph: Trigraph::from_black_rows(n, rows),
        a_side: (1..=a_count).collect(),
        b_side: (a_count + 1..=n).collect(),
    })
}

/// A cograph built by repeatedly merging two random components with either a
/// disjoint union or a join.
pub fn random_cograph(n: usize, seed: u64) -> Result<Trigraph, RandGenError> {
    if n == 0 {
        return Err(RandGenError::NoVertices);
    }
    let stream = seed ^ COGRAPH_DOMAIN;
    let mut components: Vec<Vec<usize>> = (1..=n).map(|v| vec![v]).collect();
    let mut edges = Vec::new();
    let mut counter = 0u64;
    let mut next = |k: usize| {
        counter += 1;
        below(stream, counter, k)
    };
    while components.len() > 1 {
        let i = next(components.len());
        let mut j = next(components.len() - 1);
        if j >= i {
            j += 1;
        }
        let join = next(2) == 1;
        let (lo, hi) = (i.min(j), i.max(j));
        let second = components.swap_remove(hi);
        let first = &mut components[lo];
        if join {
            for &x in first.iter() {
                for &y in &second {
                    edges.push((x, y));
                }
            }
        }
        first.extend(second);
    }
    Ok(Trigraph::from_edge_list(n, &edges).expect("cograph construction yields a simple graph"))
}
