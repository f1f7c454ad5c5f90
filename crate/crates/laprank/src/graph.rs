//! Weighted undirected graphs in CSR form, node/edge functions, and the
//! line-graph transform that reduces edge centrality to node centrality.
//!
//! A graph stores each undirected edge {i, j} as two ordered arcs (i, j) and
//! (j, i). Adjacency rows are sorted ascending by neighbor, which fixes the
//! summation order of every operator downstream and makes results
//! reproducible bit for bit regardless of thread count.

use std::collections::HashMap;
use std::io::{self, BufRead, Write};
use std::ops::Index;
use std::path::Path;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("record {index}: edge weight must be positive, got {weight}")]
    NonPositiveWeight { index: usize, weight: f64 },
    #[error("record {index}: self-loop on {label:?} rejected")]
    SelfLoop { index: usize, label: String },
    #[error("duplicate label {label:?}")]
    DuplicateLabel { label: String },
    #[error("node index {index} out of range for {count} nodes")]
    IndexOutOfRange { index: usize, count: usize },
    #[error("line graph of an edgeless graph is undefined")]
    Edgeless,
    #[error("{path}:{line}: {message}")]
    EdgeListFormat {
        path: String,
        line: usize,
        message: String,
    },
    #[error("failed to read {path}")]
    Io {
        path: String,
        #[source]
        source: io::Error,
    },
}

/// Undirected graph with strictly positive symmetric weights and unique
/// node labels. Immutable after construction; cheap to share across threads.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    labels: Vec<String>,
    /// CSR row offsets, length `n + 1`.
    offsets: Vec<usize>,
    /// Neighbor ids, ascending within each row; length `2m`.
    targets: Vec<usize>,
    /// Arc weights parallel to `targets`; `w[(i,j)] == w[(j,i)]`.
    weights: Vec<f64>,
    /// For the arc slot holding (i, j), the slot holding (j, i).
    reverse: Vec<usize>,
    /// Unordered edges (u, v, w) with u < v, sorted lexicographically.
    edge_list: Vec<(usize, usize, f64)>,
}

impl Graph {
    /// Builds a graph from labeled edge records. Duplicate unordered pairs
    /// have their weights summed; labels are interned in first-seen order.
    pub fn build<S: AsRef<str>>(records: &[(S, S, f64)]) -> Result<Graph, GraphError> {
        let mut labels: Vec<String> = Vec::new();
        let mut index: HashMap<String, usize> = HashMap::new();
        let mut intern = |name: &str, labels: &mut Vec<String>| -> usize {
            if let Some(&i) = index.get(name) {
                return i;
            }
            let i = labels.len();
            labels.push(name.to_owned());
            index.insert(name.to_owned(), i);
            i
        };
        let mut weight_of: HashMap<(usize, usize), f64> = HashMap::new();
        for (record_index, (a, b, w)) in records.iter().enumerate() {
            if w.is_nan() || *w <= 0.0 {
                return Err(GraphError::NonPositiveWeight {
                    index: record_index,
                    weight: *w,
                });
            }
            let ia = intern(a.as_ref(), &mut labels);
            let ib = intern(b.as_ref(), &mut labels);
            if ia == ib {
                return Err(GraphError::SelfLoop {
                    index: record_index,
                    label: a.as_ref().to_owned(),
                });
            }
            *weight_of.entry((ia.min(ib), ia.max(ib))).or_insert(0.0) += w;
        }
        Ok(Self::assemble(labels, weight_of))
    }

    /// Builds a graph from pre-indexed edges over an explicit label list.
    /// Duplicate pairs are summed, matching [`Graph::build`].
    pub fn from_indexed_edges(
        labels: Vec<String>,
        edges: &[(usize, usize, f64)],
    ) -> Result<Graph, GraphError> {
        let n = labels.len();
        let mut seen: HashMap<&str, ()> = HashMap::with_capacity(n);
        for label in &labels {
            if seen.insert(label, ()).is_some() {
                return Err(GraphError::DuplicateLabel {
                    label: label.clone(),
                });
            }
        }
        let mut weight_of: HashMap<(usize, usize), f64> = HashMap::new();
        for (record_index, &(u, v, w)) in edges.iter().enumerate() {
            if u >= n || v >= n {
                return Err(GraphError::IndexOutOfRange {
                    index: u.max(v),
                    count: n,
                });
            }
            if u == v {
                return Err(GraphError::SelfLoop {
                    index: record_index,
                    label: labels[u].clone(),
                });
            }
            if w.is_nan() || w <= 0.0 {
                return Err(GraphError::NonPositiveWeight {
                    index: record_index,
                    weight: w,
                });
            }
            *weight_of.entry((u.min(v), u.max(v))).or_insert(0.0) += w;
        }
        Ok(Self::assemble(labels, weight_of))
    }

    fn assemble(labels: Vec<String>, weight_of: HashMap<(usize, usize), f64>) -> Graph {
        let n = labels.len();
        let mut edge_list: Vec<(usize, usize, f64)> =
            weight_of.into_iter().map(|((u, v), w)| (u, v, w)).collect();
        edge_list.sort_unstable_by_key(|&(u, v, _)| (u, v));

        let mut adjacency: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n];
        for &(u, v, w) in &edge_list {
            adjacency[u].push((v, w));
            adjacency[v].push((u, w));
        }
        let mut offsets = Vec::with_capacity(n + 1);
        let mut targets = Vec::with_capacity(2 * edge_list.len());
        let mut weights = Vec::with_capacity(2 * edge_list.len());
        offsets.push(0);
        for row in &mut adjacency {
            row.sort_unstable_by_key(|&(j, _)| j);
            for &(j, w) in row.iter() {
                targets.push(j);
                weights.push(w);
            }
            offsets.push(targets.len());
        }
        // Pair up each arc with its reversal once, so operators can read
        // F_ji for the slot holding F_ij in O(1).
        let mut reverse = vec![0usize; targets.len()];
        for i in 0..n {
            for slot in offsets[i]..offsets[i + 1] {
                let j = targets[slot];
                let row = &targets[offsets[j]..offsets[j + 1]];
                let pos = row.binary_search(&i).expect("arc reversal must exist");
                reverse[slot] = offsets[j] + pos;
            }
        }
        Graph {
            labels,
            offsets,
            targets,
            weights,
            reverse,
            edge_list,
        }
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_list.len()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Linear scan; build your own map if you need many lookups.
    pub fn node_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Unordered edges (u, v, w) with u < v, sorted lexicographically.
    pub fn edges(&self) -> &[(usize, usize, f64)] {
        &self.edge_list
    }

    /// Sum of incident weights; 0 for isolated nodes.
    pub fn degree(&self, i: usize) -> f64 {
        self.check_node(i);
        self.weights[self.offsets[i]..self.offsets[i + 1]]
            .iter()
            .sum()
    }

    /// Adjacent nodes with weights, ascending by neighbor id.
    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.check_node(i);
        let range = self.offsets[i]..self.offsets[i + 1];
        self.targets[range.clone()]
            .iter()
            .copied()
            .zip(self.weights[range].iter().copied())
    }

    fn check_node(&self, i: usize) {
        assert!(
            i < self.node_count(),
            "node index {i} out of range for {} nodes",
            self.node_count()
        );
    }

    /// Number of ordered arc slots (`2 * edge_count`).
    pub(crate) fn arc_count(&self) -> usize {
        self.targets.len()
    }

    pub(crate) fn arc_range(&self, i: usize) -> std::ops::Range<usize> {
        self.offsets[i]..self.offsets[i + 1]
    }

    pub(crate) fn arc_target(&self, slot: usize) -> usize {
        self.targets[slot]
    }

    pub(crate) fn arc_weight(&self, slot: usize) -> f64 {
        self.weights[slot]
    }

    pub(crate) fn arc_reverse(&self, slot: usize) -> usize {
        self.reverse[slot]
    }

    /// The line graph: one node per edge of `self`, adjacent iff the edges
    /// share an endpoint. All line-graph weights are 1; the structural
    /// definition carries no natural weight. Labels are "(label_u, label_v)".
    pub fn line_graph(&self) -> Result<(Graph, LineGraphMap), GraphError> {
        if self.edge_list.is_empty() {
            return Err(GraphError::Edgeless);
        }
        let mut incident: Vec<Vec<usize>> = vec![Vec::new(); self.node_count()];
        for (k, &(u, v, _)) in self.edge_list.iter().enumerate() {
            incident[u].push(k);
            incident[v].push(k);
        }
        // In a simple graph two distinct edges share at most one endpoint,
        // so each line edge is generated exactly once.
        let mut line_edges = Vec::new();
        for edges_at_node in &incident {
            for (a, &k) in edges_at_node.iter().enumerate() {
                for &l in &edges_at_node[a + 1..] {
                    line_edges.push((k.min(l), k.max(l), 1.0));
                }
            }
        }
        let labels = self
            .edge_list
            .iter()
            .map(|&(u, v, _)| format!("({}, {})", self.labels[u], self.labels[v]))
            .collect();
        let graph = Graph::from_indexed_edges(labels, &line_edges)?;
        let entries = self.edge_list.iter().map(|&(u, v, _)| (u, v)).collect();
        Ok((graph, LineGraphMap { entries }))
    }

    /// Writes the tab-separated edge-list format: `label_a<TAB>label_b<TAB>w`,
    /// one edge per line. The output is a canonical form of the labeled
    /// graph: each pair is written in lexicographic label order and the
    /// lines are sorted, so two graphs with the same labeled edges produce
    /// identical bytes no matter how their nodes were numbered. Weights
    /// print in shortest round-trip form, so a write/read cycle reproduces
    /// every weight exactly.
    pub fn write_edge_list(&self, out: &mut impl Write) -> io::Result<()> {
        let mut lines: Vec<(&str, &str, f64)> = self
            .edge_list
            .iter()
            .map(|&(u, v, w)| {
                let (a, b) = (self.labels[u].as_str(), self.labels[v].as_str());
                if a <= b {
                    (a, b, w)
                } else {
                    (b, a, w)
                }
            })
            .collect();
        lines.sort_unstable_by(|x, y| (x.0, x.1).cmp(&(y.0, y.1)));
        for (a, b, w) in lines {
            writeln!(out, "{a}\t{b}\t{w}")?;
        }
        Ok(())
    }
}

/// Reads the edge-list format written by [`Graph::write_edge_list`].
/// Blank lines and lines starting with `#` are ignored.
pub fn read_edge_list(path: &Path) -> Result<Vec<(String, String, f64)>, GraphError> {
    let display = path.display().to_string();
    let file = std::fs::File::open(path).map_err(|source| GraphError::Io {
        path: display.clone(),
        source,
    })?;
    let mut records = Vec::new();
    for (line_index, line) in io::BufReader::new(file).lines().enumerate() {
        let line = line.map_err(|source| GraphError::Io {
            path: display.clone(),
            source,
        })?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let format_err = |message: String| GraphError::EdgeListFormat {
            path: display.clone(),
            line: line_index + 1,
            message,
        };
        let mut fields = trimmed.split('\t');
        let (a, b, w) = match (fields.next(), fields.next(), fields.next(), fields.next()) {
            (Some(a), Some(b), Some(w), None) => (a, b, w),
            _ => {
                return Err(format_err(
                    "expected 3 tab-separated fields: label_a, label_b, weight".into(),
                ))
            }
        };
        let weight: f64 = w
            .parse()
            .map_err(|_| format_err(format!("invalid weight {w:?}")))?;
        records.push((a.to_owned(), b.to_owned(), weight));
    }
    Ok(records)
}

/// Maps line-graph node k back to the original edge it represents.
#[derive(Debug, Clone, PartialEq)]
pub struct LineGraphMap {
    entries: Vec<(usize, usize)>,
}

impl LineGraphMap {
    /// Original-graph endpoints (u, v), u < v, for each line-graph node.
    pub fn entries(&self) -> &[(usize, usize)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Real-valued function on the nodes of a graph (an element of H(V)).
#[derive(Debug, Clone, PartialEq)]
pub struct NodeFunction {
    values: Vec<f64>,
}

impl NodeFunction {
    pub fn new(values: Vec<f64>) -> Self {
        NodeFunction { values }
    }

    pub fn constant(n: usize, value: f64) -> Self {
        NodeFunction {
            values: vec![value; n],
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    /// Inner product on H(V): sum over nodes of `f_i * g_i`.
    pub fn inner(&self, other: &NodeFunction) -> f64 {
        assert_eq!(self.len(), other.len(), "node function size mismatch");
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a * b)
            .sum()
    }
}

impl From<Vec<f64>> for NodeFunction {
    fn from(values: Vec<f64>) -> Self {
        NodeFunction { values }
    }
}

impl Index<usize> for NodeFunction {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.values[i]
    }
}

/// Real-valued function on the ordered arcs of a graph (an element of H(E)).
/// Both orientations of each edge are stored independently; values are laid
/// out in the graph's CSR arc order.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeFunction {
    values: Vec<f64>,
}

impl EdgeFunction {
    pub fn zeros(g: &Graph) -> Self {
        EdgeFunction {
            values: vec![0.0; g.arc_count()],
        }
    }

    /// Builds an edge function by evaluating `f(i, j)` on every ordered arc.
    pub fn from_fn(g: &Graph, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut values = vec![0.0; g.arc_count()];
        for i in 0..g.node_count() {
            for slot in g.arc_range(i) {
                values[slot] = f(i, g.arc_target(slot));
            }
        }
        EdgeFunction { values }
    }

    /// Value on the ordered arc (i, j). Panics if {i, j} is not an edge.
    pub fn value(&self, g: &Graph, i: usize, j: usize) -> f64 {
        let range = g.arc_range(i);
        let row = range.clone();
        let pos = g.targets[row.clone()]
            .binary_search(&j)
            .unwrap_or_else(|_| panic!("({i}, {j}) is not an arc of the graph"));
        self.values[range.start + pos]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub(crate) fn slots(&self) -> &[f64] {
        &self.values
    }

    pub(crate) fn slots_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    /// Inner product on H(E): sum over all ordered arcs of `F_ij * G_ij`.
    pub fn inner(&self, other: &EdgeFunction) -> f64 {
        assert_eq!(self.len(), other.len(), "edge function size mismatch");
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a * b)
            .sum()
    }
}
