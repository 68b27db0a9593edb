//! File formats, weight assignment and reporting.
//!
//! Three surfaces live here: the METIS static-graph reader (1-indexed,
//! optional vertex weights), a minimal text format for edit sequences,
//! and CSV emission of per-update traces. Weight assignment uses a
//! named, versioned PRNG (ChaCha8) so published numbers reproduce
//! across platforms; weights are drawn as integers, never floats.

use crate::dynamic::UpdateStats;
use crate::graph::{Vertex, Weight};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::HashSet;
use std::fmt::Write as _;
use std::path::Path;
use std::time::Duration;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum IoError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

fn parse_err<T>(line: usize, msg: impl Into<String>) -> Result<T, IoError> {
    Err(IoError::Parse {
        line,
        msg: msg.into(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EventKind {
    Insert,
    Delete,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EditEvent {
    pub kind: EventKind,
    pub u: Vertex,
    pub v: Vertex,
}

/// Ordered list of edge updates over a fixed vertex universe `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EditSequence {
    pub n: usize,
    pub events: Vec<EditEvent>,
    /// Events normalized away at parse time (self-loops).
    pub obsolete_count: u64,
}

/// A static graph as read from a METIS file: weights plus the edge
/// list in order of first appearance.
#[derive(Debug, Clone, PartialEq)]
pub struct StaticGraph {
    pub n: usize,
    pub weights: Vec<Weight>,
    /// Normalized (min, max) pairs, deduplicated, file order.
    pub edges: Vec<(Vertex, Vertex)>,
    /// Self-loops and repeated mentions dropped during parsing.
    pub dropped: u64,
}

/// Parses a METIS adjacency file. Header is `n m [fmt]` where the
/// tens digit of `fmt` signals per-vertex weights (e.g. "10"); `%`
/// lines are comments. Vertex ids in the file are 1-indexed.
pub fn parse_metis(path: impl AsRef<Path>) -> Result<StaticGraph, IoError> {
    parse_metis_str(&std::fs::read_to_string(path)?)
}

pub fn parse_metis_str(text: &str) -> Result<StaticGraph, IoError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.trim_start().starts_with('%'));

    let (header_line, header) = match lines.next() {
        Some(x) => x,
        None => return parse_err(1, "empty file"),
    };
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() < 2 || fields.len() > 4 {
        return parse_err(header_line, "header must be `n m [fmt [ncon]]`");
    }
    let n: usize = match fields[0].parse() {
        Ok(v) => v,
        Err(_) => return parse_err(header_line, "bad vertex count"),
    };
    let m: usize = match fields[1].parse() {
        Ok(v) => v,
        Err(_) => return parse_err(header_line, "bad edge count"),
    };
    let fmt: u32 = match fields.get(2) {
        None => 0,
        Some(s) => match s.parse() {
            Ok(v) => v,
            Err(_) => return parse_err(header_line, "bad fmt field"),
        },
    };
    let has_vweights = (fmt / 10) % 10 == 1;
    let has_eweights = fmt % 10 == 1;

    let mut weights = Vec::with_capacity(n);
    let mut edges = Vec::with_capacity(m);
    let mut seen: HashSet<(Vertex, Vertex)> = HashSet::with_capacity(m);
    let mut dropped = 0u64;

    for u in 0..n {
        let (line_no, line) = match lines.next() {
            Some(x) => x,
            None => return parse_err(header_line, format!("expected {n} vertex lines")),
        };
        let mut tokens = line.split_whitespace();
        if has_vweights {
            let w: i64 = match tokens.next().map(str::parse) {
                Some(Ok(v)) => v,
                _ => return parse_err(line_no, "missing or bad vertex weight"),
            };
            if w < 0 {
                return parse_err(line_no, "negative vertex weight");
            }
            weights.push(w as Weight);
        } else {
            weights.push(1.0);
        }
        while let Some(tok) = tokens.next() {
            let nb: usize = match tok.parse() {
                Ok(v) => v,
                Err(_) => return parse_err(line_no, format!("bad neighbor token `{tok}`")),
            };
            if has_eweights && tokens.next().is_none() {
                return parse_err(line_no, "missing edge weight");
            }
            if nb == 0 || nb > n {
                return parse_err(line_no, format!("neighbor {nb} out of range 1..={n}"));
            }
            let v = (nb - 1) as Vertex;
            let u = u as Vertex;
            if u == v {
                dropped += 1;
                continue;
            }
            let key = (u.min(v), u.max(v));
            if seen.insert(key) {
                edges.push(key);
            } else if u > v {
                // second (mirror) mention: expected, not counted
            } else {
                dropped += 1; // parallel edge
            }
        }
    }

    Ok(StaticGraph {
        n,
        weights,
        edges,
        dropped,
    })
}

/// One insert event per edge, in order of first appearance in the
/// file. Replay starts from an empty graph and inserts everything.
pub fn static_to_sequence(g: &StaticGraph) -> EditSequence {
    EditSequence {
        n: g.n,
        events: g
            .edges
            .iter()
            .map(|&(u, v)| EditEvent {
                kind: EventKind::Insert,
                u,
                v,
            })
            .collect(),
        obsolete_count: 0,
    }
}

/// Parses the sequence text format: header `n <count>`, then one
/// event per line (`i u v` / `d u v`, 0-indexed); `#` lines are
/// comments. Self-loops are normalized away and counted.
pub fn parse_sequence(path: impl AsRef<Path>) -> Result<EditSequence, IoError> {
    parse_sequence_str(&std::fs::read_to_string(path)?)
}

pub fn parse_sequence_str(text: &str) -> Result<EditSequence, IoError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| {
            let t = l.trim();
            !t.is_empty() && !t.starts_with('#')
        });

    let (header_line, header) = match lines.next() {
        Some(x) => x,
        None => return parse_err(1, "empty file"),
    };
    let fields: Vec<&str> = header.split_whitespace().collect();
    let n: usize = match fields.as_slice() {
        ["n", count] => match count.parse() {
            Ok(v) => v,
            Err(_) => return parse_err(header_line, "bad vertex count"),
        },
        _ => return parse_err(header_line, "header must be `n <count>`"),
    };

    let mut events = Vec::new();
    let mut obsolete_count = 0;
    for (line_no, line) in lines {
        let fields: Vec<&str> = line.split_whitespace().collect();
        let [op, u, v] = fields.as_slice() else {
            return parse_err(line_no, "event must be `<op> <u> <v>`");
        };
        let kind = match *op {
            "i" => EventKind::Insert,
            "d" => EventKind::Delete,
            other => return parse_err(line_no, format!("unknown opcode `{other}`")),
        };
        let (Ok(u), Ok(v)): (Result<Vertex, _>, Result<Vertex, _>) = (u.parse(), v.parse()) else {
            return parse_err(line_no, "bad vertex id");
        };
        if u as usize >= n || v as usize >= n {
            return parse_err(line_no, format!("vertex id out of range 0..{n}"));
        }
        if u == v {
            obsolete_count += 1;
            continue;
        }
        events.push(EditEvent { kind, u, v });
    }
    Ok(EditSequence {
        n,
        events,
        obsolete_count,
    })
}

/// Inverse of [`parse_sequence_str`] for normalized sequences.
pub fn write_sequence(seq: &EditSequence) -> String {
    let mut out = format!("n {}\n", seq.n);
    for ev in &seq.events {
        let op = match ev.kind {
            EventKind::Insert => 'i',
            EventKind::Delete => 'd',
        };
        writeln!(out, "{op} {} {}", ev.u, ev.v).unwrap();
    }
    out
}

/// Uniform integer weights in `[lo, hi]`, deterministic per seed.
pub fn assign_random_weights(n: usize, seed: u64, lo: u32, hi: u32) -> Vec<Weight> {
    assert!(lo <= hi, "empty weight range");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| rng.random_range(lo..=hi) as Weight).collect()
}

/// Everything a benchmark run reports.
#[derive(Debug)]
pub struct RunReport {
    pub instance: String,
    pub algo: String,
    pub seed: u64,
    pub final_weight: Weight,
    pub final_cardinality: usize,
    /// Sum of per-update handle times; parsing is excluded.
    pub total_update_time: Duration,
    pub rows: Vec<UpdateStats>,
}

impl RunReport {
    pub fn new(instance: &str, algo: &str, seed: u64, rows: Vec<UpdateStats>) -> Self {
        let (final_weight, final_cardinality) = rows
            .last()
            .map(|r| (r.solution_weight, r.solution_cardinality))
            .unwrap_or((0.0, 0));
        let total_update_time = rows.iter().map(|r| r.elapsed).sum();
        Self {
            instance: instance.to_string(),
            algo: algo.to_string(),
            seed,
            final_weight,
            final_cardinality,
            total_update_time,
            rows,
        }
    }

    pub fn mean_update_time(&self) -> Duration {
        if self.rows.is_empty() {
            Duration::ZERO
        } else {
            self.total_update_time / self.rows.len() as u32
        }
    }

    /// CSV with the fixed column order; byte-identical across replays
    /// except for the elapsed_ns column.
    pub fn csv(&self) -> String {
        let mut out =
            String::from("update_index,kind,greedy_added,solved,solver_optimal,weight,cardinality,elapsed_ns\n");
        for r in &self.rows {
            let kind = match r.kind {
                EventKind::Insert => "insert",
                EventKind::Delete => "delete",
            };
            writeln!(
                out,
                "{},{},{},{},{},{},{},{}",
                r.update_index,
                kind,
                r.greedy_added,
                r.solved,
                r.solver_optimal,
                format_weight(r.solution_weight),
                r.solution_cardinality,
                r.elapsed.as_nanos()
            )
            .unwrap();
        }
        out
    }
}

/// Integer weights print without a decimal point.
pub fn format_weight(w: Weight) -> String {
    if w.fract() == 0.0 && w.abs() < 1e15 {
        format!("{}", w as i64)
    } else {
        format!("{w}")
    }
}
