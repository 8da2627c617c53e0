//! Branch-and-bound over contraction sequences.
//!
//! `decide(d)` is a depth-first search that never enters a trigraph with
//! maximum red degree above `d`. Failed states are memoized on the canonical
//! partition they induce, so the many merge orders reaching one partition are
//! explored once. When a state has trigraph twins only their contraction is
//! tried: it yields an induced subtrigraph, which cannot need a larger width.

use std::collections::HashSet;

use super::greedy::greedy_sequence;
use super::mask::{ones, MaskGraph};
use super::{SolverError, EXACT_MAX_LABEL};
use crate::contraction::ContractionSequence;
use crate::trigraph::Trigraph;

/// Failure-memo entries kept before the table is cleared.
const MEMO_CAP: usize = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DecideOutcome {
    /// A full sequence whose width is at most the queried bound.
    Yes(ContractionSequence),
    No,
    /// The node budget ran out before the question was settled.
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decision {
    pub outcome: DecideOutcome,
    pub nodes: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactResult {
    /// Best width found; equals the twin-width when `exact` is set.
    pub value: usize,
    pub lower_bound: usize,
    pub witness: ContractionSequence,
    pub exact: bool,
    pub nodes: u64,
}

struct Search {
    d: usize,
    budget: u64,
    nodes: u64,
    exhausted: bool,
    memo: HashSet<Vec<u8>>,
    path: Vec<(usize, usize)>,
}

impl Search {
    fn run(&mut self, g: &MaskGraph) -> bool {
        let alive = g.alive_count();
        if alive <= self.d + 1 {
            // every trigraph on at most d+1 vertices has red degree <= d
            let labels: Vec<usize> = ones(g.alive).collect();
            for &x in labels.iter().skip(1) {
                self.path.push((labels[0] + 1, x + 1));
            }
            return true;
        }
        if self.nodes >= self.budget {
            self.exhausted = true;
            return false;
        }
        self.nodes += 1;
        let key = g.key();
        if self.memo.contains(&key) {
            return false;
        }

        let labels: Vec<usize> = ones(g.alive).collect();
        let mut children: Vec<(usize, usize, usize, usize, MaskGraph)> = Vec::new();
        'twins: for (i, &a) in labels.iter().enumerate() {
            for &b in &labels[i + 1..] {
                if g.are_twins(a, b) {
                    let child = g.contract(a, b);
                    if child.max_red() <= self.d {
                        children.push((child.max_red(), 0, a, b, child));
                    }
                    break 'twins;
                }
            }
        }
        if children.is_empty() {
            for (i, &a) in labels.iter().enumerate() {
                for &b in &labels[i + 1..] {
                    if g.merged_red(a, b) > self.d {
                        continue;
                    }
                    let child = g.contract(a, b);
                    let max = child.max_red();
                    if max <= self.d {
                        children.push((max, g.merged_red(a, b), a, b, child));
                    }
                }
            }
            children.sort_by_key(|c| (c.0, c.1, c.2, c.3));
        }

        for (_, _, a, b, child) in children {
            self.path.push((a + 1, b + 1));
            if self.run(&child) {
                return true;
            }
            self.path.pop();
            if self.exhausted {
                return false;
            }
        }
        if self.memo.len() >= MEMO_CAP {
            self.memo.clear();
        }
        self.memo.insert(key);
        false
    }
}

fn check_size(g: &Trigraph) -> Result<(), SolverError> {
    if g.n() > EXACT_MAX_LABEL {
        Err(SolverError::TooLarge {
            n: g.n(),
            max: EXACT_MAX_LABEL,
        })
    } else {
        Ok(())
    }
}

fn decide_mask(g: &MaskGraph, d: usize, budget: u64) -> Decision {
    if g.max_red() > d {
        return Decision {
            outcome: DecideOutcome::No,
            nodes: 0,
        };
    }
    let mut search = Search {
        d,
        budget,
        nodes: 0,
        exhausted: false,
        memo: HashSet::new(),
        path: Vec::new(),
    };
    let found = search.run(g);
    let outcome = if found {
        DecideOutcome::Yes(
            ContractionSequence::new(search.path).expect("search emits distinct labels"),
        )
    } else if search.exhausted {
        DecideOutcome::Unknown
    } else {
        DecideOutcome::No
    };
    Decision {
        outcome,
        nodes: search.nodes,
    }
}

/// Is the twin-width of `g` at most `d`? Explores at most `node_budget`
/// search nodes.
pub fn decide_tww_le(g: &Trigraph, d: usize, node_budget: u64) -> Result<Decision, SolverError> {
    check_size(g)?;
    Ok(decide_mask(&MaskGraph::from_trigraph(g), d, node_budget))
}

/// Exact twin-width with a witness sequence. The greedy width seeds the
/// incumbent and the bound is lowered one step at a time until the decision
/// procedure refutes it. If the budget runs out the best bounds are returned
/// with `exact` unset.
pub fn exact_twin_width(g: &Trigraph, node_budget: u64) -> Result<ExactResult, SolverError> {
    check_size(g)?;
    let mask = MaskGraph::from_trigraph(g);
    let labels: Vec<usize> = ones(mask.alive).collect();
    let mut lower = mask.max_red();
    if labels.len() >= 2 {
        // the first contraction alone already creates this much red degree
        let mut min_r = usize::MAX;
        for (i, &a) in labels.iter().enumerate() {
            for &b in &labels[i + 1..] {
                min_r = min_r.min(mask.merged_red(a, b));
            }
        }
        lower = lower.max(min_r);
    }

    let (mut witness, mut value) = greedy_sequence(g);
    let mut nodes = 0u64;
    let mut exact = true;
    while value > lower {
        let remaining = node_budget.saturating_sub(nodes);
        let decision = decide_mask(&mask, value - 1, remaining);
        nodes += decision.nodes;
        match decision.outcome {
            DecideOutcome::Yes(seq) => {
                value = crate::contraction::apply_sequence(g, &seq)
                    .expect("solver witness replays")
                    .width;
                witness = seq;
            }
            DecideOutcome::No => {
                lower = value;
            }
            DecideOutcome::Unknown => {
                exact = false;
                break;
            }
        }
    }
    Ok(ExactResult {
        value,
        lower_bound: lower,
        witness,
        exact,
        nodes,
    })
}
