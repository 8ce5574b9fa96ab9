//! Plain-text edge lists.
//!
//! One `u v` pair per line, whitespace separated; extra columns (weights,
//! timestamps) are ignored. Lines starting with `#` or `%` are comments. A
//! `# vertices: N` comment, as written by [`write_edge_list`], fixes the
//! vertex count and makes integer labels map to themselves, so isolated
//! vertices and ids survive a round trip. Without it, labels are remapped to
//! dense ids: numerically when every label is a non-negative integer, in
//! order of first appearance otherwise.

use std::collections::HashMap;
use std::fs;
use std::io::Write;
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::{DropReport, Graph, GraphBuilder};

const VERTICES_DIRECTIVE: &str = "vertices:";

#[derive(Clone, Debug, PartialEq)]
pub struct LoadedGraph {
    pub graph: Graph,
    /// Original label of each vertex id.
    pub labels: Vec<String>,
    pub dropped: DropReport,
}

impl LoadedGraph {
    pub fn label_map(&self) -> HashMap<&str, usize> {
        self.labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.as_str(), i))
            .collect()
    }
}

pub fn load_edge_list(path: impl AsRef<Path>, directed: bool) -> Result<LoadedGraph> {
    parse_edge_list(&fs::read_to_string(path)?, directed)
}

pub fn parse_edge_list(text: &str, directed: bool) -> Result<LoadedGraph> {
    let mut declared: Option<usize> = None;
    let mut pairs: Vec<(usize, &str, &str)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            if let Some(n) = comment.trim().strip_prefix(VERTICES_DIRECTIVE) {
                let n = n.trim().parse().map_err(|_| Error::Parse {
                    line: line_no,
                    message: format!("bad vertex count {:?}", n.trim()),
                })?;
                declared = Some(n);
            }
            continue;
        }
        if line.starts_with('%') {
            continue;
        }
        let mut fields = line.split_whitespace();
        match (fields.next(), fields.next()) {
            (Some(a), Some(b)) => pairs.push((line_no, a, b)),
            _ => {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("expected two vertex labels, got {line:?}"),
                })
            }
        }
    }
    if pairs.is_empty() && declared.is_none() {
        return Err(Error::InvalidParameter("edge list is empty".into()));
    }

    let (labels, ids) = match declared {
        Some(n) => identity_labels(n, &pairs)?,
        None => remap_labels(&pairs),
    };
    let mut builder = GraphBuilder::new(labels.len(), directed);
    for (&(a, b), _) in ids.iter().zip(&pairs) {
        builder.add_edge(a, b)?;
    }
    let dropped = builder.report();
    Ok(LoadedGraph {
        graph: builder.build(),
        labels,
        dropped,
    })
}

type Labeling = (Vec<String>, Vec<(usize, usize)>);

fn identity_labels(n: usize, pairs: &[(usize, &str, &str)]) -> Result<Labeling> {
    let parse = |line: usize, s: &str| -> Result<usize> {
        match s.parse::<usize>() {
            Ok(v) if v < n => Ok(v),
            _ => Err(Error::Parse {
                line,
                message: format!("label {s:?} is not an id below the declared {n} vertices"),
            }),
        }
    };
    let ids = pairs
        .iter()
        .map(|&(line, a, b)| Ok((parse(line, a)?, parse(line, b)?)))
        .collect::<Result<_>>()?;
    Ok(((0..n).map(|v| v.to_string()).collect(), ids))
}

fn remap_labels(pairs: &[(usize, &str, &str)]) -> Labeling {
    let mut labels: Vec<&str> = Vec::new();
    let mut seen = HashMap::new();
    for &(_, a, b) in pairs {
        for s in [a, b] {
            seen.entry(s).or_insert_with(|| {
                labels.push(s);
                labels.len() - 1
            });
        }
    }
    let numeric: Option<Vec<u64>> = labels.iter().map(|s| s.parse().ok()).collect();
    if let Some(values) = numeric {
        let mut order: Vec<usize> = (0..labels.len()).collect();
        order.sort_by_key(|&i| values[i]);
        labels = order.iter().map(|&i| labels[i]).collect();
        seen = labels.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    }
    let ids = pairs.iter().map(|&(_, a, b)| (seen[a], seen[b])).collect();
    (labels.into_iter().map(str::to_owned).collect(), ids)
}

/// Writes `g` with a vertex-count header, one edge per line.
pub fn write_edge_list<W: Write>(g: &Graph, mut out: W) -> Result<()> {
    writeln!(out, "# {VERTICES_DIRECTIVE} {}", g.vertex_count())?;
    for e in g.edges() {
        writeln!(out, "{} {}", e.0, e.1)?;
    }
    Ok(())
}

pub fn save_edge_list(g: &Graph, path: impl AsRef<Path>) -> Result<()> {
    let mut file = std::io::BufWriter::new(fs::File::create(path)?);
    write_edge_list(g, &mut file)?;
    file.flush()?;
    Ok(())
}
