//! Simple undirected graphs with dense integer vertex ids, plus edge-list
//! text I/O.
//!
//! Graphs are immutable after construction. Construction merges parallel
//! edges and drops self-loops, so a [`SimpleGraph`] value always satisfies
//! the simple-graph invariants.

use std::collections::BTreeMap;
use std::collections::HashMap;
use std::error::Error;
use std::fmt;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

pub type VertexId = u32;

/// An ordered list of raw edges. Ids must already be dense (`< n`); use
/// [`read_edge_list`] to remap arbitrary labels.
pub type EdgeList = Vec<(VertexId, VertexId)>;

/// Immutable simple undirected graph.
///
/// Invariants (enforced by [`build_simple_graph`]):
/// - no self-loops, each unordered pair present at most once
/// - neighbor lists sorted ascending
/// - `degrees[v] == adjacency[v].len()` and the degree sum is `2 * edge_count`
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    adjacency: Vec<Vec<VertexId>>,
    degrees: Vec<u32>,
    edge_count: usize,
}

impl SimpleGraph {
    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn degree(&self, v: VertexId) -> u32 {
        self.degrees[v as usize]
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn max_degree(&self) -> u32 {
        self.degrees.iter().copied().max().unwrap_or(0)
    }

    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adjacency[v as usize]
    }

    pub fn contains_edge(&self, u: VertexId, v: VertexId) -> bool {
        u != v && self.adjacency[u as usize].binary_search(&v).is_ok()
    }

    /// Iterates every edge once as `(u, v)` with `u < v`, in sorted order.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(u, nbrs)| {
            let u = u as VertexId;
            nbrs.iter()
                .copied()
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }

    /// Number of vertices of each degree, `k -> N_k`. Degree-zero vertices
    /// are included.
    pub fn degree_histogram(&self) -> BTreeMap<u32, usize> {
        let mut hist = BTreeMap::new();
        for &d in &self.degrees {
            *hist.entry(d).or_insert(0) += 1;
        }
        hist
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphBuildError {
    /// An edge endpoint was `>= n`.
    VertexOutOfRange { position: usize, id: VertexId, n: usize },
}

impl fmt::Display for GraphBuildError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphBuildError::VertexOutOfRange { position, id, n } => write!(
                f,
                "edge {position}: vertex id {id} out of range for graph on {n} vertices"
            ),
        }
    }
}

impl Error for GraphBuildError {}

/// Builds a simple graph from raw edges: self-loops are dropped and parallel
/// edges merged. Rebuilding a graph from its own edge set is a no-op.
pub fn build_simple_graph(n: usize, raw_edges: &[(VertexId, VertexId)]) -> Result<SimpleGraph, GraphBuildError> {
    let mut adjacency: Vec<Vec<VertexId>> = vec![Vec::new(); n];
    for (position, &(u, v)) in raw_edges.iter().enumerate() {
        for id in [u, v] {
            if id as usize >= n {
                return Err(GraphBuildError::VertexOutOfRange { position, id, n });
            }
        }
        if u == v {
            continue;
        }
        adjacency[u as usize].push(v);
        adjacency[v as usize].push(u);
    }
    let mut edge_count = 0usize;
    for nbrs in &mut adjacency {
        nbrs.sort_unstable();
        nbrs.dedup();
        edge_count += nbrs.len();
    }
    debug_assert!(edge_count.is_multiple_of(2));
    let degrees = adjacency.iter().map(|nbrs| nbrs.len() as u32).collect();
    Ok(SimpleGraph {
        adjacency,
        degrees,
        edge_count: edge_count / 2,
    })
}

#[derive(Debug)]
pub enum EdgeListError {
    Io(std::io::Error),
    /// Malformed line; `line` is 1-based.
    Parse { line: usize, message: String },
}

impl fmt::Display for EdgeListError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EdgeListError::Io(e) => write!(f, "edge list I/O error: {e}"),
            EdgeListError::Parse { line, message } => {
                write!(f, "edge list parse error at line {line}: {message}")
            }
        }
    }
}

impl Error for EdgeListError {}

impl From<std::io::Error> for EdgeListError {
    fn from(e: std::io::Error) -> Self {
        EdgeListError::Io(e)
    }
}

/// Result of ingesting an edge-list file: labels are remapped to dense ids
/// in order of first appearance, with the original labels retained.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeListFile {
    pub n: usize,
    pub edges: EdgeList,
    /// `labels[id]` is the label the file used for dense id `id`.
    pub labels: Vec<u64>,
}

/// Reads a whitespace-separated edge list (SNAP style): one `u v` pair per
/// line, `#`-prefixed comment lines and blank lines ignored. Arbitrary
/// non-negative integer labels are remapped to `0..n`.
pub fn read_edge_list(path: impl AsRef<Path>) -> Result<EdgeListFile, EdgeListError> {
    let file = File::open(path)?;
    parse_edge_list(BufReader::new(file))
}

pub fn parse_edge_list(reader: impl BufRead) -> Result<EdgeListFile, EdgeListError> {
    let mut remap: HashMap<u64, VertexId> = HashMap::new();
    let mut labels: Vec<u64> = Vec::new();
    let mut edges: EdgeList = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut fields = trimmed.split_whitespace();
        let mut next_label = |what: &str| -> Result<u64, EdgeListError> {
            let field = fields.next().ok_or_else(|| EdgeListError::Parse {
                line: idx + 1,
                message: format!("missing {what} vertex"),
            })?;
            field.parse::<u64>().map_err(|_| EdgeListError::Parse {
                line: idx + 1,
                message: format!("invalid vertex label {field:?}"),
            })
        };
        let a = next_label("source")?;
        let b = next_label("target")?;
        if let Some(extra) = fields.next() {
            return Err(EdgeListError::Parse {
                line: idx + 1,
                message: format!("unexpected trailing field {extra:?}"),
            });
        }
        let mut dense = |label: u64| -> VertexId {
            *remap.entry(label).or_insert_with(|| {
                labels.push(label);
                (labels.len() - 1) as VertexId
            })
        };
        let u = dense(a);
        let v = dense(b);
        edges.push((u, v));
    }
    Ok(EdgeListFile {
        n: labels.len(),
        edges,
        labels,
    })
}

/// Writes the graph as `u\tv` lines with `u < v`, sorted, no comments.
pub fn write_edge_list(graph: &SimpleGraph, path: impl AsRef<Path>) -> std::io::Result<()> {
    let file = File::create(path)?;
    let mut out = BufWriter::new(file);
    for (u, v) in graph.edges() {
        writeln!(out, "{u}\t{v}")?;
    }
    out.flush()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn merges_duplicates_and_drops_self_loops() {
        let g = build_simple_graph(3, &[(0, 1), (1, 0), (2, 2), (1, 2)]).unwrap();
        let edges: Vec<_> = g.edges().collect();
        assert_eq!(edges, vec![(0, 1), (1, 2)]);
        assert_eq!(g.degrees(), &[1, 2, 1]);
    }

    #[test]
    fn empty_graph() {
        let g = build_simple_graph(2, &[]).unwrap();
        assert_eq!(g.edge_count(), 0);
        assert_eq!(g.degrees(), &[0, 0]);
    }

    #[test]
    fn complete_graph_on_four() {
        let all_pairs = vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        let g = build_simple_graph(4, &all_pairs).unwrap();
        assert_eq!(g.edge_count(), 6);
        assert_eq!(g.degrees(), &[3, 3, 3, 3]);
    }

    #[test]
    fn rejects_out_of_range_ids() {
        let err = build_simple_graph(3, &[(0, 3)]).unwrap_err();
        assert_eq!(
            err,
            GraphBuildError::VertexOutOfRange {
                position: 0,
                id: 3,
                n: 3
            }
        );
    }

    #[test]
    fn degree_histogram_star_triangle_empty() {
        let star = build_simple_graph(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(star.degree_histogram(), BTreeMap::from([(1, 3), (3, 1)]));

        let triangle = build_simple_graph(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(triangle.degree_histogram(), BTreeMap::from([(2, 3)]));

        let empty = build_simple_graph(2, &[]).unwrap();
        assert_eq!(empty.degree_histogram(), BTreeMap::from([(0, 2)]));
    }

    #[test]
    fn parses_labels_in_first_appearance_order() {
        let parsed = parse_edge_list("# c\n1 2\n2 9\n".as_bytes()).unwrap();
        assert_eq!(parsed.n, 3);
        assert_eq!(parsed.edges, vec![(0, 1), (1, 2)]);
        assert_eq!(parsed.labels, vec![1, 2, 9]);
    }

    #[test]
    fn parses_empty_file() {
        let parsed = parse_edge_list("".as_bytes()).unwrap();
        assert_eq!(parsed.n, 0);
        assert!(parsed.edges.is_empty());
    }

    #[test]
    fn rejects_malformed_lines_with_line_number() {
        match parse_edge_list("0 1\na b\n".as_bytes()) {
            Err(EdgeListError::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
        match parse_edge_list("0\n".as_bytes()) {
            Err(EdgeListError::Parse { line, .. }) => assert_eq!(line, 1),
            other => panic!("expected parse error, got {other:?}"),
        }
        match parse_edge_list("0 1 2\n".as_bytes()) {
            Err(EdgeListError::Parse { line, .. }) => assert_eq!(line, 1),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn write_then_read_round_trips() {
        let g = build_simple_graph(5, &[(0, 4), (3, 1), (1, 0), (2, 4)]).unwrap();
        let dir = std::env::temp_dir().join("nullmodel-graph-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("roundtrip.tsv");
        write_edge_list(&g, &path).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert_eq!(text, "0\t1\n0\t4\n1\t3\n2\t4\n");
        let parsed = read_edge_list(&path).unwrap();
        let rebuilt = build_simple_graph(parsed.n, &parsed.edges).unwrap();
        assert_eq!(rebuilt.edge_count(), g.edge_count());
    }

    fn arbitrary_edges() -> impl Strategy<Value = (usize, Vec<(VertexId, VertexId)>)> {
        (1usize..24).prop_flat_map(|n| {
            let edge = (0..n as u32, 0..n as u32);
            (Just(n), proptest::collection::vec(edge, 0..60))
        })
    }

    proptest! {
        #[test]
        fn build_is_idempotent_and_handshake_holds((n, raw) in arbitrary_edges()) {
            let g = build_simple_graph(n, &raw).unwrap();
            let degree_sum: u64 = g.degrees().iter().map(|&d| d as u64).sum();
            prop_assert_eq!(degree_sum, 2 * g.edge_count() as u64);
            prop_assert_eq!(degree_sum % 2, 0);

            let edges: Vec<_> = g.edges().collect();
            let rebuilt = build_simple_graph(n, &edges).unwrap();
            prop_assert_eq!(rebuilt, g.clone());

            // adjacency symmetry
            for u in 0..n as u32 {
                for &v in g.neighbors(u) {
                    prop_assert!(g.neighbors(v).binary_search(&u).is_ok());
                }
            }

            // histogram totals
            let hist = g.degree_histogram();
            let total: usize = hist.values().sum();
            prop_assert_eq!(total, n);
            let weighted: u64 = hist.iter().map(|(&k, &c)| k as u64 * c as u64).sum();
            prop_assert_eq!(weighted, 2 * g.edge_count() as u64);
        }
    }
}
