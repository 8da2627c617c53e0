//! Trigraph on at most 64 labels with one `u64` per row, cheap to clone
//! during search.

use crate::trigraph::{EdgeColor, Trigraph};

#[derive(Clone, Debug)]
pub(super) struct MaskGraph {
    pub alive: u64,
    pub black: Vec<u64>,
    pub red: Vec<u64>,
    // members of the class each alive label stands for
    pub class: Vec<u64>,
}

impl MaskGraph {
    pub fn from_trigraph(g: &Trigraph) -> Self {
        let n = g.n();
        let mut m = MaskGraph {
            alive: 0,
            black: vec![0; n],
            red: vec![0; n],
            class: vec![0; n],
        };
        for v in g.vertices() {
            m.alive |= 1 << (v - 1);
            m.class[v - 1] = 1 << (v - 1);
        }
        for u in g.vertices() {
            for v in g.vertices().filter(|&v| v > u) {
                let (a, b) = (u - 1, v - 1);
                match g.edge(u, v) {
                    Some(EdgeColor::Black) => {
                        m.black[a] |= 1 << b;
                        m.black[b] |= 1 << a;
                    }
                    Some(EdgeColor::Red) => {
                        m.red[a] |= 1 << b;
                        m.red[b] |= 1 << a;
                    }
                    None => {}
                }
            }
        }
        m
    }

    pub fn alive_count(&self) -> usize {
        self.alive.count_ones() as usize
    }

    pub fn max_red(&self) -> usize {
        ones(self.alive)
            .map(|i| self.red[i].count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    /// Contracts labels `a` and `b` (0-indexed); the smaller label survives.
    pub fn contract(&self, a: usize, b: usize) -> MaskGraph {
        let (w, d) = (a.min(b), a.max(b));
        let mut g = self.clone();
        let drop = !((1u64 << w) | (1u64 << d));
        let nb = self.black[w] & self.black[d] & drop;
        let nr = (self.red[w] | self.red[d] | (self.black[w] ^ self.black[d])) & !nb & drop;
        for x in ones(self.alive & drop) {
            let (wbit, dbit) = (1u64 << w, 1u64 << d);
            g.black[x] &= !(wbit | dbit);
            g.red[x] &= !(wbit | dbit);
            if nb >> x & 1 == 1 {
                g.black[x] |= wbit;
            }
            if nr >> x & 1 == 1 {
                g.red[x] |= wbit;
            }
        }
        g.black[w] = nb;
        g.red[w] = nr;
        g.black[d] = 0;
        g.red[d] = 0;
        g.class[w] |= g.class[d];
        g.class[d] = 0;
        g.alive &= !(1u64 << d);
        g
    }

    /// Red degree of the merged vertex if `a` and `b` were contracted.
    pub fn merged_red(&self, a: usize, b: usize) -> usize {
        let drop = !((1u64 << a) | (1u64 << b));
        let nb = self.black[a] & self.black[b];
        ((self.red[a] | self.red[b] | (self.black[a] ^ self.black[b])) & !nb & drop).count_ones()
            as usize
    }

    /// Labels `a` and `b` agree on every other vertex in both colours.
    pub fn are_twins(&self, a: usize, b: usize) -> bool {
        let drop = !((1u64 << a) | (1u64 << b));
        (self.black[a] ^ self.black[b]) & drop == 0 && (self.red[a] ^ self.red[b]) & drop == 0
    }

    /// Canonical encoding of the partition of original vertices into
    /// classes: classes ordered by minimum (which is the surviving label),
    /// members ascending, the first member of each class tagged with 0x80.
    pub fn key(&self) -> Vec<u8> {
        let mut key = Vec::with_capacity(self.class.len());
        for w in ones(self.alive) {
            let mut first = true;
            for v in ones(self.class[w]) {
                key.push(v as u8 | if first { 0x80 } else { 0 });
                first = false;
            }
        }
        key
    }
}

pub(super) fn ones(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}
