//! Exhaustive oracle: tries every contraction sequence on a plain colour
//! matrix, sharing nothing with the bit-row implementation.

use super::SolverError;
use crate::trigraph::{EdgeColor, Trigraph};

pub const BRUTE_FORCE_MAX_VERTICES: usize = 6;

const NONE: u8 = 0;
const BLACK: u8 = 1;
const RED: u8 = 2;

fn max_red(m: &[Vec<u8>]) -> usize {
    m.iter()
        .map(|row| row.iter().filter(|&&c| c == RED).count())
        .max()
        .unwrap_or(0)
}

fn contract(m: &[Vec<u8>], a: usize, b: usize) -> Vec<Vec<u8>> {
    let k = m.len();
    let merged: Vec<u8> = (0..k)
        .map(|x| match (m[a][x], m[b][x]) {
            _ if x == a || x == b => NONE,
            (BLACK, BLACK) => BLACK,
            (NONE, NONE) => NONE,
            _ => RED,
        })
        .collect();
    // keep vertex a (holding the merged row), drop vertex b
    let keep: Vec<usize> = (0..k).filter(|&x| x != b).collect();
    keep.iter()
        .map(|&x| {
            keep.iter()
                .map(|&y| {
                    if x == a {
                        merged[y]
                    } else if y == a {
                        merged[x]
                    } else {
                        m[x][y]
                    }
                })
                .collect()
        })
        .collect()
}

/// Minimum over all full sequences of the largest red degree along it.
fn best(m: &[Vec<u8>]) -> usize {
    let here = max_red(m);
    if m.len() <= 1 {
        return here;
    }
    let mut min = usize::MAX;
    for a in 0..m.len() {
        for b in a + 1..m.len() {
            min = min.min(best(&contract(m, a, b)));
        }
    }
    here.max(min)
}

/// Twin-width by enumerating all `prod_k C(k,2)` sequences. Alive vertices
/// only; at most six of them.
pub fn brute_force_twin_width(g: &Trigraph) -> Result<usize, SolverError> {
    let vs: Vec<usize> = g.vertices().collect();
    if vs.len() > BRUTE_FORCE_MAX_VERTICES {
        return Err(SolverError::TooLarge {
            n: vs.len(),
            max: BRUTE_FORCE_MAX_VERTICES,
        });
    }
    let m: Vec<Vec<u8>> = vs
        .iter()
        .map(|&u| {
            vs.iter()
                .map(|&v| match g.edge(u, v) {
                    Some(EdgeColor::Black) => BLACK,
                    Some(EdgeColor::Red) => RED,
                    None => NONE,
                })
                .collect()
        })
        .collect();
    Ok(best(&m))
}
