//! The nested family `B_1, B_2, ...` of subsets of `[m]`: first `a` pairs,
//! then `m - 2a` of those pairs grown to triples, then the remaining pairs
//! joined two at a time into quadruples.

use super::StrategyError;

fn check(m: usize, a: usize, i: usize) -> Result<(), StrategyError> {
    if a == 0 || 2 * a > m || m > 3 * a {
        return Err(StrategyError::InvalidParameter(format!(
            "need 1 <= a and 2a <= m <= 3a (m = {m}, a = {a})"
        )));
    }
    let max = (m + a) / 2;
    if i == 0 || i > max {
        return Err(StrategyError::IndexOutOfRange { i, max });
    }
    Ok(())
}

/// The two earlier sets (or pair base case) `B_i` is built from.
enum Parts {
    Pair(usize, usize),
    Extend(usize, usize),
    Union(usize, usize),
}

fn parts(m: usize, a: usize, i: usize) -> Parts {
    if i <= a {
        Parts::Pair(2 * i - 1, 2 * i)
    } else if i <= m - a {
        Parts::Extend(i - a, 2 * a + (i - a))
    } else {
        let j = (m - 2 * a) + 2 * (i - (m - a)) - 1;
        Parts::Union(j, j + 1)
    }
}

/// `B_i^{m,a}` in increasing order.
pub fn b_set(m: usize, a: usize, i: usize) -> Result<Vec<usize>, StrategyError> {
    check(m, a, i)?;
    Ok(b_set_unchecked(m, a, i))
}

fn b_set_unchecked(m: usize, a: usize, i: usize) -> Vec<usize> {
    let mut out = match parts(m, a, i) {
        Parts::Pair(x, y) => vec![x, y],
        Parts::Extend(j, x) => {
            let mut s = b_set_unchecked(m, a, j);
            s.push(x);
            s
        }
        Parts::Union(j, k) => {
            let mut s = b_set_unchecked(m, a, j);
            s.extend(b_set_unchecked(m, a, k));
            s
        }
    };
    out.sort_unstable();
    out
}

/// Maximal sets among `B_1, ..., B_i`, ordered by their minimum.
pub fn b_family(m: usize, a: usize, i: usize) -> Result<Vec<Vec<usize>>, StrategyError> {
    check(m, a, i)?;
    // each set is absorbed exactly by the set built from it
    let mut absorbed = vec![false; i + 1];
    for k in 1..=i {
        match parts(m, a, k) {
            Parts::Pair(..) => {}
            Parts::Extend(j, _) => absorbed[j] = true,
            Parts::Union(j, l) => {
                absorbed[j] = true;
                absorbed[l] = true;
            }
        }
    }
    let mut family: Vec<Vec<usize>> = (1..=i)
        .filter(|&k| !absorbed[k])
        .map(|k| b_set_unchecked(m, a, k))
        .collect();
    family.sort();
    Ok(family)
}

/// The contraction that turns the classes present after step `i - 1` into
/// those after step `i`: both labels are class minima, smaller first.
pub fn b_merge(m: usize, a: usize, i: usize) -> Result<(usize, usize), StrategyError> {
    check(m, a, i)?;
    Ok(match parts(m, a, i) {
        Parts::Pair(x, y) => (x, y),
        // B_j with j <= a always has minimum 2j - 1
        Parts::Extend(j, x) => (2 * j - 1, x),
        Parts::Union(j, k) => (2 * j - 1, 2 * k - 1),
    })
}
