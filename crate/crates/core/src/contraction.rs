//! Contraction sequences, replay with per-step red-degree tracking, and the
//! class-size bookkeeping of a (partial) sequence.

use std::collections::BTreeMap;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use thiserror::Error;

use crate::trigraph::{Trigraph, TrigraphError};

#[derive(Debug, Error)]
pub enum SequenceError {
    #[error("step {position}: cannot contract a vertex with itself ({vertex} {vertex})")]
    SelfPair { position: usize, vertex: usize },
    #[error("step {position} ({u} {v}) is not replayable: {source}")]
    InvalidStep {
        position: usize,
        u: usize,
        v: usize,
        #[source]
        source: TrigraphError,
    },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("step index {s} outside 1..={max}")]
    StepOutOfRange { s: usize, max: usize },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

type Result<T> = std::result::Result<T, SequenceError>;

/// Ordered merge steps. A full sequence on `k` alive vertices has `k - 1`
/// steps; anything shorter is a partial sequence.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ContractionSequence {
    steps: Vec<(usize, usize)>,
}

impl ContractionSequence {
    pub fn new(steps: Vec<(usize, usize)>) -> Result<Self> {
        for (i, &(u, v)) in steps.iter().enumerate() {
            if u == v {
                return Err(SequenceError::SelfPair {
                    position: i + 1,
                    vertex: u,
                });
            }
        }
        Ok(ContractionSequence { steps })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn steps(&self) -> &[(usize, usize)] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Appends a step; panics on a self-pair since callers construct steps
    /// from two distinct alive labels.
    pub fn push(&mut self, u: usize, v: usize) {
        assert_ne!(u, v, "self-pair in contraction sequence");
        self.steps.push((u, v));
    }

    pub fn extend_from(&mut self, other: &ContractionSequence) {
        self.steps.extend_from_slice(&other.steps);
    }
}

/// Result of replaying a sequence.
///
/// Index `s` of `max_red` (0-based) holds the maximum red degree of the
/// trigraph after `s` contractions, so `max_red[0]` is the input itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceTrace {
    pub n: usize,
    pub initial_vertices: Vec<usize>,
    pub steps: Vec<(usize, usize)>,
    pub max_red: Vec<usize>,
    pub merged_red: Vec<usize>,
    pub width: usize,
    /// `sum_i i * C_{s,i}` after each prefix, from incrementally kept class
    /// sizes; equals the number of initial vertices when bookkeeping is sound.
    pub class_mass: Vec<usize>,
    pub final_vertex_count: usize,
}

impl SequenceTrace {
    pub fn width(&self) -> usize {
        self.width
    }

    /// True when the replay ended at a single vertex.
    pub fn is_full(&self) -> bool {
        self.final_vertex_count == 1
    }

    /// CSV with columns step,u,v,merged_rdeg,max_rdeg; one row per contraction.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["step", "u", "v", "merged_rdeg", "max_rdeg"])?;
        for (i, &(u, v)) in self.steps.iter().enumerate() {
            w.write_record([
                (i + 1).to_string(),
                u.to_string(),
                v.to_string(),
                self.merged_red[i].to_string(),
                self.max_red[i + 1].to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Incremental trace builder shared by replay and by schedule runners that
/// contract a live trigraph themselves.
pub(crate) struct TraceRecorder {
    trace: SequenceTrace,
    class_size: Vec<usize>,
    size_histogram: Vec<usize>,
    mass: usize,
}

impl TraceRecorder {
    pub(crate) fn new(g: &Trigraph) -> Self {
        let initial: Vec<usize> = g.vertices().collect();
        let mut class_size = vec![0; g.n() + 1];
        for &v in &initial {
            class_size[v] = 1;
        }
        let mut size_histogram = vec![0; g.n() + 1];
        size_histogram[1] = initial.len();
        let mass = initial.len();
        TraceRecorder {
            trace: SequenceTrace {
                n: g.n(),
                final_vertex_count: initial.len(),
                initial_vertices: initial,
                steps: Vec::new(),
                max_red: vec![g.max_red_degree()],
                merged_red: Vec::new(),
                width: g.max_red_degree(),
                class_mass: vec![mass],
            },
            class_size,
            size_histogram,
            mass,
        }
    }

    /// Contracts `u`,`v` in `g` and records the step. Column bits of `g`
    /// are left deferred; call `Trigraph::flush` before reading rows.
    pub(crate) fn contract(
        &mut self,
        g: &mut Trigraph,
        u: usize,
        v: usize,
    ) -> std::result::Result<usize, TrigraphError> {
        let merge = g.contract_deferred(u, v)?;
        let (w, d) = (merge.survivor, merge.removed);
        let (sw, sd) = (self.class_size[w], self.class_size[d]);
        // keep sum_i i * C_i in step with the histogram rather than assuming it
        for size in [sw, sd] {
            self.size_histogram[size] -= 1;
            self.mass -= size;
        }
        self.size_histogram[sw + sd] += 1;
        self.mass += sw + sd;
        self.class_size[w] = sw + sd;
        self.class_size[d] = 0;

        let t = &mut self.trace;
        t.steps.push((u, v));
        t.merged_red.push(merge.merged_red_degree);
        t.max_red.push(g.max_red_degree());
        t.width = t.width.max(g.max_red_degree());
        t.class_mass.push(self.mass);
        t.final_vertex_count = g.vertex_count();
        Ok(merge.merged_red_degree)
    }

    pub(crate) fn trace(&self) -> &SequenceTrace {
        &self.trace
    }

    pub(crate) fn finish(self) -> SequenceTrace {
        self.trace
    }
}

/// Replays `seq` on a copy of `g`.
pub fn apply_sequence(g: &Trigraph, seq: &ContractionSequence) -> Result<SequenceTrace> {
    apply_sequence_owned(g.clone(), seq)
}

/// Replays `seq` on `g` itself, avoiding a copy for very large inputs.
pub fn apply_sequence_owned(mut g: Trigraph, seq: &ContractionSequence) -> Result<SequenceTrace> {
    let mut rec = TraceRecorder::new(&g);
    for (i, &(u, v)) in seq.steps().iter().enumerate() {
        rec.contract(&mut g, u, v)
            .map_err(|source| SequenceError::InvalidStep {
                position: i + 1,
                u,
                v,
                source,
            })?;
    }
    g.flush();
    Ok(rec.finish())
}

/// True iff every trigraph along the replay, the input included, has maximum
/// red degree at most `d` and the sequence ends at a single vertex.
pub fn verify_width(g: &Trigraph, seq: &ContractionSequence, d: usize) -> Result<bool> {
    let trace = apply_sequence(g, seq)?;
    Ok(trace.is_full() && trace.width <= d)
}

pub fn verify_width_owned(g: Trigraph, seq: &ContractionSequence, d: usize) -> Result<bool> {
    let trace = apply_sequence_owned(g, seq)?;
    Ok(trace.is_full() && trace.width <= d)
}

/// `C_{s,i}`: number of classes of size `i` after the first `s - 1` steps,
/// recomputed from the recorded steps with a union-find (independent of the
/// incremental bookkeeping in the trace).
pub fn class_histogram(trace: &SequenceTrace, s: usize) -> Result<BTreeMap<usize, usize>> {
    let max = trace.steps.len() + 1;
    if s == 0 || s > max {
        return Err(SequenceError::StepOutOfRange { s, max });
    }
    let mut parent: Vec<usize> = (0..=trace.n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for &(u, v) in &trace.steps[..s - 1] {
        let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
        parent[ru.max(rv)] = ru.min(rv);
    }
    let mut size: BTreeMap<usize, usize> = BTreeMap::new();
    for &v in &trace.initial_vertices {
        *size.entry(find(&mut parent, v)).or_default() += 1;
    }
    let mut hist = BTreeMap::new();
    for (_, k) in size {
        *hist.entry(k).or_default() += 1;
    }
    Ok(hist)
}

pub fn parse_sequence(text: &str) -> Result<ContractionSequence> {
    let mut steps = Vec::new();
    for (i, line) in text.lines().enumerate() {
        steps.push(match parse_step(line, i + 1)? {
            Some(step) => step,
            None => continue,
        });
    }
    Ok(ContractionSequence { steps })
}

fn parse_step(line: &str, number: usize) -> Result<Option<(usize, usize)>> {
    let line = line.trim();
    if line.is_empty() {
        return Ok(None);
    }
    let fields: Vec<&str> = line.split_whitespace().collect();
    let err = |message: String| SequenceError::Parse {
        line: number,
        message,
    };
    if fields.len() != 2 {
        return Err(err(format!("expected `u v`, found `{line}`")));
    }
    let parse = |s: &str| -> Result<usize> {
        match s.parse::<usize>() {
            Ok(v) if v >= 1 => Ok(v),
            _ => Err(err(format!("expected a positive vertex label, found `{s}`"))),
        }
    };
    let (u, v) = (parse(fields[0])?, parse(fields[1])?);
    if u == v {
        return Err(err(format!("self-pair `{u} {v}`")));
    }
    Ok(Some((u, v)))
}

pub fn read_sequence(path: impl AsRef<Path>) -> Result<ContractionSequence> {
    let file = std::fs::File::open(path)?;
    let mut steps = Vec::new();
    for (i, line) in BufReader::new(file).lines().enumerate() {
        if let Some(step) = parse_step(&line?, i + 1)? {
            steps.push(step);
        }
    }
    Ok(ContractionSequence { steps })
}

pub fn write_sequence(path: impl AsRef<Path>, seq: &ContractionSequence) -> Result<()> {
    let mut out = std::io::BufWriter::new(std::fs::File::create(path)?);
    for &(u, v) in seq.steps() {
        writeln!(out, "{u} {v}")?;
    }
    out.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(steps: &[(usize, usize)]) -> ContractionSequence {
        ContractionSequence::new(steps.to_vec()).unwrap()
    }

    fn p4() -> Trigraph {
        Trigraph::from_edge_list(4, &[(1, 2), (2, 3), (3, 4)]).unwrap()
    }

    fn c5() -> Trigraph {
        Trigraph::from_edge_list(5, &[(1, 2), (2, 3), (3, 4), (4, 5), (5, 1)]).unwrap()
    }

    #[test]
    fn clique_has_width_zero() {
        let t = apply_sequence(&Trigraph::complete(4), &seq(&[(1, 2), (1, 3), (1, 4)])).unwrap();
        assert_eq!(t.width, 0);
        assert!(t.is_full());
    }

    #[test]
    fn p4_replay() {
        // (1,2): merged 1 sees 2's neighbour 3 only -> red 1-3, black none
        // (1,3): merged {1,2,3} sees 4 via 3 only -> red 1-4
        let t = apply_sequence(&p4(), &seq(&[(1, 2), (1, 3), (1, 4)])).unwrap();
        assert_eq!(t.merged_red, vec![1, 1, 0]);
        assert_eq!(t.max_red, vec![0, 1, 1, 0]);
        assert_eq!(t.width, 1);
    }

    #[test]
    fn c5_replay() {
        let s = seq(&[(1, 2), (3, 4), (1, 5), (1, 3)]);
        let t = apply_sequence(&c5(), &s).unwrap();
        assert_eq!(t.width, 2);
        assert!(verify_width(&c5(), &s, 2).unwrap());
        assert!(!verify_width(&c5(), &s, 1).unwrap());
    }

    #[test]
    fn verify_examples() {
        assert!(verify_width(&Trigraph::complete(4), &seq(&[(1, 2), (1, 3), (1, 4)]), 0).unwrap());
        assert!(!verify_width(&p4(), &seq(&[(1, 2), (1, 3), (1, 4)]), 0).unwrap());
        // partial sequences never verify
        assert!(!verify_width(&Trigraph::complete(4), &seq(&[(1, 2)]), 5).unwrap());
    }

    #[test]
    fn invalid_step_reports_position() {
        let err = apply_sequence(&p4(), &seq(&[(1, 2), (2, 3)])).unwrap_err();
        assert!(matches!(err, SequenceError::InvalidStep { position: 2, .. }));
        assert!(matches!(
            ContractionSequence::new(vec![(1, 2), (3, 3)]),
            Err(SequenceError::SelfPair { position: 2, vertex: 3 })
        ));
    }

    #[test]
    fn class_histogram_examples() {
        let g = Trigraph::edgeless(5);
        let t = apply_sequence(&g, &seq(&[(1, 2), (1, 3)])).unwrap();
        assert_eq!(class_histogram(&t, 1).unwrap(), BTreeMap::from([(1, 5)]));
        assert_eq!(class_histogram(&t, 2).unwrap(), BTreeMap::from([(1, 3), (2, 1)]));
        assert_eq!(class_histogram(&t, 3).unwrap(), BTreeMap::from([(1, 2), (3, 1)]));
        assert!(matches!(class_histogram(&t, 4), Err(SequenceError::StepOutOfRange { .. })));
        assert!(matches!(class_histogram(&t, 0), Err(SequenceError::StepOutOfRange { .. })));
        assert!(t.class_mass.iter().all(|&m| m == 5));
    }

    #[test]
    fn sequence_files() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("s.seq");
        let s = seq(&[(1, 2), (3, 4), (1, 5), (1, 3)]);
        write_sequence(&path, &s).unwrap();
        assert_eq!(read_sequence(&path).unwrap(), s);

        std::fs::write(&path, "").unwrap();
        assert!(read_sequence(&path).unwrap().is_empty());

        std::fs::write(&path, "1 2\n1 1\n").unwrap();
        assert!(matches!(read_sequence(&path), Err(SequenceError::Parse { line: 2, .. })));
        assert!(matches!(parse_sequence("1 2 3"), Err(SequenceError::Parse { line: 1, .. })));
        assert!(matches!(parse_sequence("0 2"), Err(SequenceError::Parse { line: 1, .. })));
    }

    #[test]
    fn trace_csv_columns() {
        let t = apply_sequence(&p4(), &seq(&[(2, 3)])).unwrap();
        let mut buf = Vec::new();
        t.write_csv(&mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "step,u,v,merged_rdeg,max_rdeg\n1,2,3,2,2\n"
        );
    }
}
