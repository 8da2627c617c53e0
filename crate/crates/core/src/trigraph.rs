//! Trigraphs: a vertex set with disjoint black and red symmetric edge sets.
//!
//! Adjacency is stored as two packed bit rows per vertex. Contraction keeps
//! the smaller label for the merged vertex and tombstones the other one, so
//! labels stay stable across a whole contraction sequence. Red degrees and a
//! histogram of them are maintained incrementally, which makes the maximum
//! red degree available in O(1) after every contraction.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use thiserror::Error;

use crate::bitset;

/// Deferred contractions buffered before the column bits are written back.
const FLUSH_AT: usize = 512;

#[derive(Debug, Error)]
pub enum TrigraphError {
    #[error("vertex {vertex} is out of range 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("vertex {0} is not alive")]
    DeadVertex(usize),
    #[error("cannot contract vertex {0} with itself")]
    SameVertex(usize),
    #[error("operation requires a plain graph but the trigraph has red edges")]
    HasRedEdges,
    #[error("vertex {0} appears in more than one block")]
    OverlappingBlocks(usize),
    #[error("partition contains an empty block")]
    EmptyBlock,
    #[error("vertex {0} is on both sides of the bipartition")]
    OverlappingSides(usize),
    #[error("vertex {0} of a block is outside the bipartite vertex set")]
    OutsideSides(usize),
    #[error("{0:?} is not a block of the completed partition")]
    NotABlock(Vec<usize>),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

type Result<T> = std::result::Result<T, TrigraphError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EdgeColor {
    Black,
    Red,
}

/// What a contraction did: the surviving label, the removed label, and the
/// red degree of the merged vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Merge {
    pub survivor: usize,
    pub removed: usize,
    pub merged_red_degree: usize,
}

/// Red degrees a contraction would produce, computed without performing it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ContractionPreview {
    pub merged_red_degree: usize,
    pub max_red_degree: usize,
}

#[derive(Clone, Debug)]
pub struct Trigraph {
    n: usize,
    words: usize,
    black: Vec<u64>,
    // Left empty until the first red edge appears; a plain graph on 10^5
    // vertices then costs one matrix instead of two.
    red: Vec<u64>,
    alive: Vec<u64>,
    alive_count: usize,
    red_degree: Vec<u32>,
    red_histogram: Vec<u32>,
    max_red: usize,
    // Deferred column updates. Between flushes, the row of the more recently
    // merged endpoint is authoritative for a pair, and columns of removed
    // vertices may still hold stale bits. Public reads always see a flushed
    // graph.
    pending: Vec<usize>,
    pending_dead: Vec<usize>,
    stamp: Vec<u64>,
    clock: u64,
}

impl Trigraph {
    /// `n` isolated vertices.
    pub fn edgeless(n: usize) -> Self {
        let words = bitset::words_for(n);
        let mut alive = vec![0u64; words];
        for i in 0..n {
            bitset::set(&mut alive, i);
        }
        let mut red_histogram = vec![0u32; n + 1];
        red_histogram[0] = n as u32;
        Trigraph {
            n,
            words,
            black: vec![0; n * words],
            red: Vec::new(),
            alive,
            alive_count: n,
            red_degree: vec![0; n],
            red_histogram,
            max_red: 0,
            pending: Vec::new(),
            pending_dead: Vec::new(),
            stamp: vec![0; n],
            clock: 0,
        }
    }

    /// Plain graph with the given black edges. Rejects out-of-range vertices,
    /// self-loops and duplicate edges.
    pub fn from_edge_list(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::edgeless(n);
        for &(u, v) in edges {
            let (a, b) = (g.index(u)?, g.index(v)?);
            if a == b {
                return Err(TrigraphError::SelfLoop(u));
            }
            if bitset::get(g.black_row(a), b) {
                return Err(TrigraphError::DuplicateEdge(u, v));
            }
            g.set_black(a, b);
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::edgeless(n);
        for a in 0..n {
            for b in a + 1..n {
                g.set_black(a, b);
            }
        }
        g
    }

    /// Plain graph from full symmetric black rows (0-indexed, `words_for(n)`
    /// words per row, diagonal clear).
    pub(crate) fn from_black_rows(n: usize, black: Vec<u64>) -> Self {
        let mut g = Self::edgeless(n);
        debug_assert_eq!(black.len(), n * g.words);
        g.black = black;
        g
    }

    /// Number of labels, alive or not.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of alive vertices.
    pub fn vertex_count(&self) -> usize {
        self.alive_count
    }

    pub fn is_alive(&self, v: usize) -> bool {
        v >= 1 && v <= self.n && bitset::get(&self.alive, v - 1)
    }

    /// Alive vertex labels in increasing order.
    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        bitset::ones(&self.alive).map(|i| i + 1)
    }

    /// True when the trigraph currently has no red edge.
    pub fn is_plain(&self) -> bool {
        self.max_red == 0
    }

    pub fn edge(&self, u: usize, v: usize) -> Option<EdgeColor> {
        if !self.is_alive(u) || !self.is_alive(v) || u == v {
            return None;
        }
        let (a, b) = (u - 1, v - 1);
        if bitset::get(self.black_row(a), b) {
            Some(EdgeColor::Black)
        } else if !self.red.is_empty() && bitset::get(self.red_row(a), b) {
            Some(EdgeColor::Red)
        } else {
            None
        }
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edge(u, v).is_some()
    }

    pub fn black_edges(&self) -> Vec<(usize, usize)> {
        self.edges_of(&self.black)
    }

    pub fn red_edges(&self) -> Vec<(usize, usize)> {
        if self.red.is_empty() {
            Vec::new()
        } else {
            self.edges_of(&self.red)
        }
    }

    fn edges_of(&self, rows: &[u64]) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in bitset::ones(&self.alive) {
            let row = &rows[a * self.words..(a + 1) * self.words];
            out.extend(bitset::ones(row).filter(|&b| b > a).map(|b| (a + 1, b + 1)));
        }
        out
    }

    pub fn black_edge_count(&self) -> usize {
        let total: usize = bitset::ones(&self.alive)
            .map(|a| bitset::popcount(self.black_row(a)))
            .sum();
        total / 2
    }

    pub fn red_edge_count(&self) -> usize {
        self.red_degree.iter().map(|&d| d as usize).sum::<usize>() / 2
    }

    /// Number of edges (black or red) at `v`.
    pub fn degree(&self, v: usize) -> Result<usize> {
        let a = self.alive_index(v)?;
        Ok(bitset::popcount(self.black_row(a)) + self.red_degree[a] as usize)
    }

    pub fn red_degree(&self, v: usize) -> Result<usize> {
        let a = self.alive_index(v)?;
        Ok(self.red_degree[a] as usize)
    }

    /// Maximum red degree over alive vertices; 0 when there are none.
    pub fn max_red_degree(&self) -> usize {
        self.max_red
    }

    /// Black and red neighbours of `v`.
    pub fn neighbors(&self, v: usize) -> Result<Vec<usize>> {
        let a = self.alive_index(v)?;
        let mut out: Vec<usize> = bitset::ones(self.black_row(a)).map(|b| b + 1).collect();
        if !self.red.is_empty() {
            out.extend(bitset::ones(self.red_row(a)).map(|b| b + 1));
            out.sort_unstable();
        }
        Ok(out)
    }

    pub fn red_neighbors(&self, v: usize) -> Result<Vec<usize>> {
        let a = self.alive_index(v)?;
        if self.red.is_empty() {
            return Ok(Vec::new());
        }
        Ok(bitset::ones(self.red_row(a)).map(|b| b + 1).collect())
    }

    /// Red degree the merged vertex would have after contracting `u` and `v`.
    /// On a plain graph this is `|(N(u) △ N(v)) \ {u, v}|`.
    pub fn contraction_red_degree(&self, u: usize, v: usize) -> Result<usize> {
        let (a, b) = self.pair_indices(u, v)?;
        Ok(self.merged_red_degree(a, b))
    }

    pub(crate) fn merged_red_degree(&self, a: usize, b: usize) -> usize {
        let (ba, bb) = (self.black_row(a), self.black_row(b));
        // Black and red rows are disjoint, so (ra | rb | ba ^ bb) never meets
        // ba & bb and no masking is needed.
        let (count, ends) = if self.red.is_empty() {
            let ends = [a, b]
                .iter()
                .filter(|&&y| bitset::get(ba, y) != bitset::get(bb, y))
                .count();
            (bitset::xor_popcount(ba, bb), ends)
        } else {
            let (ra, rb) = (self.red_row(a), self.red_row(b));
            let count = (0..self.words)
                .map(|k| (ra[k] | rb[k] | (ba[k] ^ bb[k])).count_ones() as usize)
                .sum();
            let ends = [a, b]
                .iter()
                .filter(|&&y| {
                    bitset::get(ra, y) || bitset::get(rb, y) || bitset::get(ba, y) != bitset::get(bb, y)
                })
                .count();
            (count, ends)
        };
        // a and b may appear in each other's rows
        count - ends
    }

    /// Merged and global red degrees after contracting `u` and `v`, without
    /// modifying the trigraph. O(n).
    pub fn preview_contraction(&self, u: usize, v: usize) -> Result<ContractionPreview> {
        let (a, b) = self.pair_indices(u, v)?;
        Ok(self.preview_internal(a, b))
    }

    pub(crate) fn preview_internal(&self, a: usize, b: usize) -> ContractionPreview {
        let merged = self.merged_red_degree(a, b);
        let mut max = merged;
        let (ba, bb) = (self.black_row(a), self.black_row(b));
        let has_red = !self.red.is_empty();
        for x in bitset::ones(&self.alive) {
            if x == a || x == b {
                continue;
            }
            let mut d = self.red_degree[x] as isize;
            let (xa_b, xb_b) = (bitset::get(ba, x), bitset::get(bb, x));
            let (xa_r, xb_r) = if has_red {
                (bitset::get(self.red_row(a), x), bitset::get(self.red_row(b), x))
            } else {
                (false, false)
            };
            let new_red = xa_r || xb_r || (xa_b != xb_b);
            d += new_red as isize - xa_r as isize - xb_r as isize;
            max = max.max(d as usize);
        }
        ContractionPreview {
            merged_red_degree: merged,
            max_red_degree: max,
        }
    }

    /// `G / {u, v}` as a new trigraph.
    pub fn contract(&self, u: usize, v: usize) -> Result<Trigraph> {
        let mut g = self.clone();
        g.contract_in_place(u, v)?;
        Ok(g)
    }

    /// Contracts `u` and `v` in place. The merged vertex keeps `min(u, v)`.
    pub fn contract_in_place(&mut self, u: usize, v: usize) -> Result<Merge> {
        let merge = self.contract_deferred(u, v)?;
        self.flush();
        Ok(merge)
    }

    /// Like `contract_in_place` but leaves the column bits of other rows
    /// stale until `flush`. Red degrees, the alive set and the maximum red
    /// degree are exact after every call; row reads are not.
    pub fn contract_deferred(&mut self, u: usize, v: usize) -> Result<Merge> {
        let (a, b) = self.pair_indices(u, v)?;
        let (w, d) = (a.min(b), a.max(b));
        if self.red.is_empty() {
            self.red = vec![0; self.n * self.words];
        }
        self.patch_row(w);
        self.patch_row(d);
        let merged = self.merge_rows(w, d);
        self.clock += 1;
        if self.stamp[w] == 0 {
            self.pending.push(w);
        }
        self.stamp[w] = self.clock;
        self.pending_dead.push(d);
        if self.pending.len() + self.pending_dead.len() >= FLUSH_AT {
            self.flush();
        }
        Ok(Merge {
            survivor: w + 1,
            removed: d + 1,
            merged_red_degree: merged,
        })
    }

    /// Brings every row up to date after deferred contractions.
    pub fn flush(&mut self) {
        if self.pending.is_empty() && self.pending_dead.is_empty() {
            return;
        }
        let words = self.words;
        let mut survivors: BTreeMap<usize, u64> = BTreeMap::new();
        let mut skip = vec![0u64; words];
        for &z in &self.pending {
            if bitset::get(&self.alive, z) {
                *survivors.entry(z / 64).or_default() |= 1 << (z % 64);
                bitset::set(&mut skip, z);
            }
        }
        let mut dead: BTreeMap<usize, u64> = BTreeMap::new();
        for &z in &self.pending_dead {
            *dead.entry(z / 64).or_default() |= 1 << (z % 64);
        }
        // Rows that are not pending are older than every pending survivor, so
        // they take those columns wholesale: one 64x64 transpose per block.
        let n = self.n;
        let alive = &self.alive;
        let mut matrices = vec![&mut self.black];
        if !self.red.is_empty() {
            matrices.push(&mut self.red);
        }
        let groups: Vec<(usize, u64)> = survivors.into_iter().collect();
        let dead: Vec<(usize, u64)> = dead.into_iter().collect();
        let mut blocks = vec![[0u64; 64]; groups.len()];
        for mat in matrices {
            // one pass over the rows per matrix; the touched words of a row
            // are usually adjacent
            for kx in 0..words {
                let rows = alive[kx] & !skip[kx];
                if rows == 0 {
                    continue;
                }
                for (block, &(kz, zmask)) in blocks.iter_mut().zip(&groups) {
                    *block = [0u64; 64];
                    for j in bitset::ones(std::slice::from_ref(&zmask)) {
                        block[j] = mat[(kz * 64 + j) * words + kx];
                    }
                    bitset::transpose64(block);
                }
                for i in bitset::ones(std::slice::from_ref(&rows)) {
                    let x = kx * 64 + i;
                    debug_assert!(x < n);
                    let row = &mut mat[x * words..(x + 1) * words];
                    for (block, &(kz, zmask)) in blocks.iter().zip(&groups) {
                        row[kz] = (row[kz] & !zmask) | (block[i] & zmask);
                    }
                    for &(k, m) in &dead {
                        row[k] &= !m;
                    }
                }
            }
        }
        for x in bitset::ones(&skip).collect::<Vec<_>>() {
            self.patch_row(x);
        }
        for &z in &self.pending {
            self.stamp[z] = 0;
        }
        self.pending.clear();
        self.pending_dead.clear();
    }

    /// Makes row `x` exact: pulls bits from rows merged after `x` and drops
    /// removed columns.
    fn patch_row(&mut self, x: usize) {
        let words = self.words;
        let xo = x * words;
        let sx = self.stamp[x];
        let has_red = !self.red.is_empty();
        for &z in &self.pending {
            if z == x || self.stamp[z] <= sx || !bitset::get(&self.alive, z) {
                continue;
            }
            let zo = z * words;
            let black = bitset::get(&self.black[zo..zo + words], x);
            bitset::assign(&mut self.black[xo..xo + words], z, black);
            if has_red {
                let red = bitset::get(&self.red[zo..zo + words], x);
                bitset::assign(&mut self.red[xo..xo + words], z, red);
            }
        }
        for &z in &self.pending_dead {
            bitset::clear(&mut self.black[xo..xo + words], z);
            if has_red {
                bitset::clear(&mut self.red[xo..xo + words], z);
            }
        }
    }

    /// Replaces rows `w` and `d` by the merged row at `w` and updates red
    /// degrees. Rows `w` and `d` must be exact; other rows are not touched.
    fn merge_rows(&mut self, w: usize, d: usize) -> usize {
        let words = self.words;
        let (wo, dof) = (w * words, d * words);
        let mut new_black = vec![0u64; words];
        let mut new_red = vec![0u64; words];
        let mut changed = vec![0u64; words];
        for k in 0..words {
            let (bw, bd) = (self.black[wo + k], self.black[dof + k]);
            let (rw, rd) = (self.red[wo + k], self.red[dof + k]);
            let nb = bw & bd;
            let nr = (rw | rd | (bw ^ bd)) & !nb;
            new_black[k] = nb;
            new_red[k] = nr;
            // red degree of x moves only if its red status towards w
            // changes or it loses a red edge to d
            changed[k] = (rw ^ nr) | rd;
        }
        for row in [&mut new_black, &mut new_red, &mut changed] {
            bitset::clear(row, w);
            bitset::clear(row, d);
        }

        for x in bitset::ones(&changed) {
            let was_red_w = bitset::get(&self.red[wo..wo + words], x);
            let was_red_d = bitset::get(&self.red[dof..dof + words], x);
            let now_red = bitset::get(&new_red, x);
            let old = self.red_degree[x] as usize;
            let new = old + now_red as usize - was_red_w as usize - was_red_d as usize;
            if new != old {
                self.move_in_histogram(x, new);
            }
        }

        let merged = bitset::popcount(&new_red);
        self.black[wo..wo + words].copy_from_slice(&new_black);
        self.red[wo..wo + words].copy_from_slice(&new_red);
        self.black[dof..dof + words].fill(0);
        self.red[dof..dof + words].fill(0);
        self.move_in_histogram(w, merged);
        self.red_histogram[self.red_degree[d] as usize] -= 1;
        self.red_degree[d] = 0;
        bitset::clear(&mut self.alive, d);
        self.alive_count -= 1;
        self.settle_max();
        merged
    }

    /// Removes `v` and its incident edges (`G \ v`).
    pub fn delete_vertex(&mut self, v: usize) -> Result<()> {
        self.flush();
        let a = self.alive_index(v)?;
        let words = self.words;
        let ao = a * words;
        let black_nbrs: Vec<usize> = bitset::ones(&self.black[ao..ao + words]).collect();
        for x in black_nbrs {
            bitset::clear(&mut self.black[x * words..(x + 1) * words], a);
        }
        if !self.red.is_empty() {
            let red_nbrs: Vec<usize> = bitset::ones(&self.red[ao..ao + words]).collect();
            for x in red_nbrs {
                bitset::clear(&mut self.red[x * words..(x + 1) * words], a);
                let new = self.red_degree[x] as usize - 1;
                self.move_in_histogram(x, new);
            }
            self.red[ao..ao + words].fill(0);
        }
        self.black[ao..ao + words].fill(0);
        self.red_histogram[self.red_degree[a] as usize] -= 1;
        self.red_degree[a] = 0;
        bitset::clear(&mut self.alive, a);
        self.alive_count -= 1;
        self.settle_max();
        Ok(())
    }

    /// Complement of a plain graph on its alive vertices.
    pub fn complement(&self) -> Result<Trigraph> {
        if !self.is_plain() {
            return Err(TrigraphError::HasRedEdges);
        }
        let mut g = self.clone();
        g.red = Vec::new();
        let words = self.words;
        for a in bitset::ones(&self.alive) {
            let row = &mut g.black[a * words..(a + 1) * words];
            for k in 0..words {
                row[k] = !row[k] & self.alive[k];
            }
            bitset::clear(row, a);
        }
        Ok(g)
    }

    /// `G / Π`: one vertex per block of the completion of `Π` (labelled by the
    /// block minimum); black when every cross pair is an edge, absent when
    /// none is, red otherwise.
    pub fn quotient(&self, partition: &VertexPartition) -> Result<Trigraph> {
        if !self.is_plain() {
            return Err(TrigraphError::HasRedEdges);
        }
        self.check_partition(partition)?;
        let blocks = partition.completion(self.vertices());
        let words = self.words;
        let mut all_rows = Vec::with_capacity(blocks.len());
        let mut any_rows = Vec::with_capacity(blocks.len());
        let mut member_rows = Vec::with_capacity(blocks.len());
        for block in &blocks {
            let mut all = self.alive.clone();
            let mut any = vec![0u64; words];
            let mut members = vec![0u64; words];
            for &v in block {
                let row = self.black_row(v - 1);
                for k in 0..words {
                    all[k] &= row[k];
                    any[k] |= row[k];
                }
                bitset::set(&mut members, v - 1);
            }
            all_rows.push(all);
            any_rows.push(any);
            member_rows.push(members);
        }

        let mut g = Trigraph::edgeless(self.n);
        g.red = vec![0; self.n * words];
        g.alive = vec![0; words];
        g.alive_count = blocks.len();
        for block in &blocks {
            bitset::set(&mut g.alive, block[0] - 1);
        }
        for (i, s) in blocks.iter().enumerate() {
            for (j, t) in blocks.iter().enumerate().skip(i + 1) {
                let members = &member_rows[j];
                let full = (0..words).all(|k| members[k] & !all_rows[i][k] == 0);
                let none = (0..words).all(|k| members[k] & any_rows[i][k] == 0);
                let (x, y) = (s[0] - 1, t[0] - 1);
                if full {
                    g.set_black(x, y);
                } else if !none {
                    g.set_red_raw(x, y);
                }
            }
        }
        g.rebuild_red_degrees();
        Ok(g)
    }

    /// Red degree of `block` in the quotient of the bipartite graph
    /// `G[a_side, b_side]` (cross edges only) by the completion of
    /// `partition` over `a_side ∪ b_side`.
    pub fn bipartite_red_degree(
        &self,
        a_side: &[usize],
        b_side: &[usize],
        partition: &VertexPartition,
        block: &[usize],
    ) -> Result<usize> {
        if !self.is_plain() {
            return Err(TrigraphError::HasRedEdges);
        }
        let mut side = vec![0u8; self.n];
        for (tag, list) in [(1u8, a_side), (2u8, b_side)] {
            for &v in list {
                let a = self.alive_index(v)?;
                if side[a] != 0 {
                    return Err(TrigraphError::OverlappingSides(v));
                }
                side[a] = tag;
            }
        }
        for b in partition.blocks() {
            for &v in b {
                if v == 0 || v > self.n || side[v - 1] == 0 {
                    return Err(TrigraphError::OutsideSides(v));
                }
            }
        }
        partition.validate()?;
        let universe = (1..=self.n).filter(|&v| side[v - 1] != 0);
        let blocks = partition.completion(universe);
        let mut wanted = block.to_vec();
        wanted.sort_unstable();
        if !blocks.contains(&wanted) {
            return Err(TrigraphError::NotABlock(wanted));
        }
        let mut red = 0;
        for t in blocks.iter().filter(|t| **t != wanted) {
            let mut edges = 0usize;
            for &x in &wanted {
                for &y in t {
                    let cross = side[x - 1] != side[y - 1];
                    if cross && bitset::get(self.black_row(x - 1), y - 1) {
                        edges += 1;
                    }
                }
            }
            if edges > 0 && edges < wanted.len() * t.len() {
                red += 1;
            }
        }
        Ok(red)
    }

    // ---- internal accessors (0-indexed) ----

    pub(crate) fn black_row(&self, a: usize) -> &[u64] {
        debug_assert!(self.pending.is_empty() && self.pending_dead.is_empty());
        &self.black[a * self.words..(a + 1) * self.words]
    }

    pub(crate) fn red_row(&self, a: usize) -> &[u64] {
        &self.red[a * self.words..(a + 1) * self.words]
    }

    fn index(&self, v: usize) -> Result<usize> {
        if v == 0 || v > self.n {
            Err(TrigraphError::VertexOutOfRange { vertex: v, n: self.n })
        } else {
            Ok(v - 1)
        }
    }

    fn alive_index(&self, v: usize) -> Result<usize> {
        let a = self.index(v)?;
        if bitset::get(&self.alive, a) {
            Ok(a)
        } else {
            Err(TrigraphError::DeadVertex(v))
        }
    }

    pub(crate) fn pair_indices(&self, u: usize, v: usize) -> Result<(usize, usize)> {
        let a = self.alive_index(u)?;
        let b = self.alive_index(v)?;
        if a == b {
            return Err(TrigraphError::SameVertex(u));
        }
        Ok((a, b))
    }

    fn set_black(&mut self, a: usize, b: usize) {
        let words = self.words;
        bitset::set(&mut self.black[a * words..(a + 1) * words], b);
        bitset::set(&mut self.black[b * words..(b + 1) * words], a);
    }

    fn set_red_raw(&mut self, a: usize, b: usize) {
        let words = self.words;
        bitset::set(&mut self.red[a * words..(a + 1) * words], b);
        bitset::set(&mut self.red[b * words..(b + 1) * words], a);
    }

    fn move_in_histogram(&mut self, a: usize, new: usize) {
        let old = self.red_degree[a] as usize;
        self.red_histogram[old] -= 1;
        self.red_histogram[new] += 1;
        self.red_degree[a] = new as u32;
        if new > self.max_red {
            self.max_red = new;
        }
    }

    fn settle_max(&mut self) {
        while self.max_red > 0 && self.red_histogram[self.max_red] == 0 {
            self.max_red -= 1;
        }
    }

    fn rebuild_red_degrees(&mut self) {
        self.red_histogram.iter_mut().for_each(|c| *c = 0);
        self.red_degree.iter_mut().for_each(|d| *d = 0);
        self.max_red = 0;
        for a in bitset::ones(&self.alive).collect::<Vec<_>>() {
            let d = if self.red.is_empty() {
                0
            } else {
                bitset::popcount(self.red_row(a))
            };
            self.red_degree[a] = d as u32;
            self.red_histogram[d] += 1;
            self.max_red = self.max_red.max(d);
        }
    }

    fn check_partition(&self, partition: &VertexPartition) -> Result<()> {
        partition.validate()?;
        for block in partition.blocks() {
            for &v in block {
                self.alive_index(v)?;
            }
        }
        Ok(())
    }

    // ---- text formats ----

    /// Parses the graph format (`n m` header, then `u v` black edges). Lines
    /// of the form `r u v` add red edges, which makes the result a trigraph.
    pub fn parse(text: &str) -> Result<Trigraph> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let (header_line, header) = lines.next().ok_or(TrigraphError::Parse {
            line: 1,
            message: "missing `n m` header".into(),
        })?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        let parse_num = |s: &str, line: usize| -> Result<usize> {
            s.parse().map_err(|_| TrigraphError::Parse {
                line,
                message: format!("expected a non-negative integer, found `{s}`"),
            })
        };
        if fields.len() != 2 {
            return Err(TrigraphError::Parse {
                line: header_line,
                message: "header must be `n m`".into(),
            });
        }
        let n = parse_num(fields[0], header_line)?;
        let m = parse_num(fields[1], header_line)?;
        let mut g = Trigraph::edgeless(n);
        let mut black_seen = 0;
        for (line, text) in lines {
            let fields: Vec<&str> = text.split_whitespace().collect();
            let (is_red, rest) = match fields.as_slice() {
                ["r", u, v] => (true, [*u, *v]),
                [u, v] => (false, [*u, *v]),
                _ => {
                    return Err(TrigraphError::Parse {
                        line,
                        message: format!("expected `u v` or `r u v`, found `{text}`"),
                    })
                }
            };
            let u = parse_num(rest[0], line)?;
            let v = parse_num(rest[1], line)?;
            let wrap = |e: TrigraphError| TrigraphError::Parse {
                line,
                message: e.to_string(),
            };
            let (a, b) = (g.index(u).map_err(wrap)?, g.index(v).map_err(wrap)?);
            if a == b {
                return Err(wrap(TrigraphError::SelfLoop(u)));
            }
            let already = bitset::get(g.black_row(a), b)
                || (!g.red.is_empty() && bitset::get(g.red_row(a), b));
            if already {
                return Err(wrap(TrigraphError::DuplicateEdge(u, v)));
            }
            if is_red {
                if g.red.is_empty() {
                    g.red = vec![0; n * g.words];
                }
                g.set_red_raw(a, b);
            } else {
                g.set_black(a, b);
                black_seen += 1;
            }
        }
        if black_seen != m {
            return Err(TrigraphError::Parse {
                line: header_line,
                message: format!("header announces {m} edges but {black_seen} were listed"),
            });
        }
        g.rebuild_red_degrees();
        Ok(g)
    }

    /// Graph format: header plus black edges. Red edges follow as `r u v`
    /// lines when present. Dead labels show up as isolated vertices.
    pub fn to_text(&self) -> String {
        let black = self.black_edges();
        let mut out = String::with_capacity(16 * (black.len() + 1));
        let _ = writeln!(out, "{} {}", self.n, black.len());
        for (u, v) in black {
            let _ = writeln!(out, "{u} {v}");
        }
        for (u, v) in self.red_edges() {
            let _ = writeln!(out, "r {u} {v}");
        }
        out
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Trigraph> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn write(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_text())?;
        Ok(())
    }
}

impl PartialEq for Trigraph {
    fn eq(&self, other: &Self) -> bool {
        if self.n != other.n || self.alive != other.alive {
            return false;
        }
        let zeros = vec![0u64; self.words];
        bitset::ones(&self.alive).all(|a| {
            let red_a = if self.red.is_empty() { &zeros[..] } else { self.red_row(a) };
            let red_b = if other.red.is_empty() { &zeros[..] } else { other.red_row(a) };
            self.black_row(a) == other.black_row(a) && red_a == red_b
        })
    }
}

impl Eq for Trigraph {}

/// A set of disjoint nonempty vertex blocks. Vertices not covered by any
/// block are implicit singletons.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VertexPartition {
    blocks: Vec<Vec<usize>>,
}

impl VertexPartition {
    pub fn new(blocks: Vec<Vec<usize>>) -> Result<Self> {
        let p = VertexPartition { blocks };
        p.validate()?;
        Ok(p)
    }

    /// The partition with no explicit block (all singletons).
    pub fn singletons() -> Self {
        Self::default()
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn validate(&self) -> Result<()> {
        let mut seen = std::collections::HashSet::new();
        for block in &self.blocks {
            if block.is_empty() {
                return Err(TrigraphError::EmptyBlock);
            }
            for &v in block {
                if !seen.insert(v) {
                    return Err(TrigraphError::OverlappingBlocks(v));
                }
            }
        }
        Ok(())
    }

    /// Canonical completion over `vertices`: the explicit blocks plus a
    /// singleton for every uncovered vertex, each block sorted, blocks
    /// ordered by their minimum.
    pub fn completion(&self, vertices: impl Iterator<Item = usize>) -> Vec<Vec<usize>> {
        let covered: std::collections::HashSet<usize> =
            self.blocks.iter().flatten().copied().collect();
        let mut out: Vec<Vec<usize>> = self
            .blocks
            .iter()
            .map(|b| {
                let mut b = b.clone();
                b.sort_unstable();
                b
            })
            .collect();
        out.extend(vertices.filter(|v| !covered.contains(v)).map(|v| vec![v]));
        out.sort_unstable_by_key(|b| b[0]);
        out
    }
}
