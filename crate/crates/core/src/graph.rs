//! Dense undirected simple graphs and the combinatorial utilities built on
//! them: Laplacian construction, connectivity, hop distances and the Wiener
//! index.
//!
//! Graphs are stored as a dense symmetric 0/1 adjacency matrix. Every
//! operation here is pure.

use std::collections::VecDeque;
use std::fmt;
use std::io::{BufRead, Write};
use std::path::Path;
use std::str::FromStr;

use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// Hop distance between two nodes; `Unreachable` when no path exists.
///
/// Kept as a distinct variant so disconnection can never be confused with a
/// large finite distance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Hops {
    Finite(usize),
    Unreachable,
}

impl Hops {
    pub fn finite(self) -> Option<usize> {
        match self {
            Hops::Finite(d) => Some(d),
            Hops::Unreachable => None,
        }
    }
}

impl fmt::Display for Hops {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Hops::Finite(d) => write!(f, "{d}"),
            Hops::Unreachable => f.write_str("inf"),
        }
    }
}

/// Undirected simple graph on `n >= 2` nodes.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<bool>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

impl Graph {
    /// Graph with `n` nodes and no edges.
    pub fn empty(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidGraph(format!(
                "graph needs at least 2 nodes, got {n}"
            )));
        }
        Ok(Self {
            n,
            adj: vec![false; n * n],
        })
    }

    /// Builds a graph from unordered pairs. Duplicate pairs are rejected, as
    /// are self-loops and out-of-range endpoints.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Self::empty(n)?;
        for (i, j) in edges {
            if i >= n || j >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({i}, {j}) out of range for n={n}"
                )));
            }
            if i == j {
                return Err(Error::InvalidGraph(format!("self-loop at node {i}")));
            }
            if g.has_edge(i, j) {
                return Err(Error::InvalidGraph(format!("duplicate edge ({i}, {j})")));
            }
            g.set_edge(i, j, true);
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for i in 0..n {
            for j in i + 1..n {
                g.set_edge(i, j, true);
            }
        }
        Ok(g)
    }

    /// Path 0 - 1 - ... - (n-1).
    pub fn path(n: usize) -> Result<Self> {
        Self::from_edges(n, (1..n).map(|i| (i - 1, i)))
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges().count()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adj[i * self.n + j]
    }

    /// Adds or removes the edge `{i, j}`. Panics on a self-loop.
    pub fn set_edge(&mut self, i: usize, j: usize, present: bool) {
        assert!(i != j, "self-loops are not allowed");
        self.adj[i * self.n + j] = present;
        self.adj[j * self.n + i] = present;
    }

    /// Edges as `(i, j)` with `i < j`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |i| {
            (i + 1..self.n).filter_map(move |j| self.has_edge(i, j).then_some((i, j)))
        })
    }

    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        let row = &self.adj[i * self.n..(i + 1) * self.n];
        row.iter()
            .enumerate()
            .filter_map(|(j, &present)| present.then_some(j))
    }

    pub fn degree(&self, i: usize) -> usize {
        self.neighbors(i).count()
    }

    /// Relabels nodes so that old node `i` becomes `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n {
            return Err(Error::InvalidGraph(format!(
                "permutation has length {}, expected {}",
                perm.len(),
                self.n
            )));
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            if p >= self.n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidGraph("not a permutation".into()));
            }
        }
        Self::from_edges(self.n, self.edges().map(|(i, j)| (perm[i], perm[j])))
    }

    /// Connected components as sorted node lists, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut label = vec![usize::MAX; self.n];
        let mut out = Vec::new();
        for start in 0..self.n {
            if label[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![start];
            label[start] = id;
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for v in self.neighbors(u) {
                    if label[v] == usize::MAX {
                        label[v] = id;
                        members.push(v);
                        queue.push_back(v);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// Induced subgraph on `nodes`, relabelled `0..nodes.len()` in the given
    /// order.
    pub fn induced(&self, nodes: &[usize]) -> Result<Self> {
        let mut g = Self::empty(nodes.len())?;
        for (a, &u) in nodes.iter().enumerate() {
            for (b, &v) in nodes.iter().enumerate().skip(a + 1) {
                if self.has_edge(u, v) {
                    g.set_edge(a, b, true);
                }
            }
        }
        Ok(g)
    }

    pub fn read_edge_list<R: BufRead>(reader: R) -> Result<Self> {
        parse_edge_list(reader)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
        parse_edge_list(std::io::BufReader::new(file)).map_err(|e| match e {
            Error::Parse { line, message, .. } => Error::Parse {
                source_name: path.display().to_string(),
                line,
                message,
            },
            other => other,
        })
    }

    /// Writes the `n=<count>` header followed by one `i j` line per edge.
    pub fn write_edge_list<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "n={}", self.n)?;
        for (i, j) in self.edges() {
            writeln!(out, "{i} {j}")?;
        }
        Ok(())
    }
}

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        source_name: "<edge list>".into(),
        line,
        message: message.into(),
    }
}

fn parse_edge_list<R: BufRead>(reader: R) -> Result<Graph> {
    let mut graph: Option<Graph> = None;
    for (idx, line) in reader.lines().enumerate() {
        let lineno = idx + 1;
        let line = line.map_err(|e| parse_error(lineno, e.to_string()))?;
        let text = line.trim();
        if text.is_empty() || text.starts_with('#') {
            continue;
        }
        let Some(g) = graph.as_mut() else {
            let count = text
                .strip_prefix("n=")
                .ok_or_else(|| parse_error(lineno, "expected header line \"n=<count>\""))?;
            let n = usize::from_str(count.trim())
                .map_err(|_| parse_error(lineno, format!("bad node count {count:?}")))?;
            graph = Some(Graph::empty(n).map_err(|e| parse_error(lineno, e.to_string()))?);
            continue;
        };
        let mut fields = text.split_whitespace();
        let (Some(a), Some(b), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(parse_error(lineno, "expected two node indices \"i j\""));
        };
        let i: usize = a
            .parse()
            .map_err(|_| parse_error(lineno, format!("bad node index {a:?}")))?;
        let j: usize = b
            .parse()
            .map_err(|_| parse_error(lineno, format!("bad node index {b:?}")))?;
        if i >= j {
            return Err(parse_error(lineno, format!("expected i < j, got {i} {j}")));
        }
        if j >= g.n {
            return Err(parse_error(
                lineno,
                format!("node {j} out of range for n={}", g.n),
            ));
        }
        if g.has_edge(i, j) {
            return Err(parse_error(lineno, format!("duplicate edge {i} {j}")));
        }
        g.set_edge(i, j, true);
    }
    graph.ok_or_else(|| parse_error(0, "missing header line \"n=<count>\""))
}

/// `D - A` as a dense matrix.
pub fn build_laplacian(g: &Graph) -> DMatrix<f64> {
    let n = g.n;
    let mut lap = DMatrix::zeros(n, n);
    for (i, j) in g.edges() {
        lap[(i, j)] = -1.0;
        lap[(j, i)] = -1.0;
        lap[(i, i)] += 1.0;
        lap[(j, j)] += 1.0;
    }
    lap
}

/// Breadth-first search from node 0 reaches every node.
pub fn is_connected(g: &Graph) -> bool {
    bfs_hops(g, 0).iter().all(|d| *d != Hops::Unreachable)
}

fn bfs_hops(g: &Graph, source: usize) -> Vec<Hops> {
    let mut dist = vec![Hops::Unreachable; g.n];
    dist[source] = Hops::Finite(0);
    let mut queue = VecDeque::from([(source, 0usize)]);
    while let Some((u, d)) = queue.pop_front() {
        for v in g.neighbors(u) {
            if dist[v] == Hops::Unreachable {
                dist[v] = Hops::Finite(d + 1);
                queue.push_back((v, d + 1));
            }
        }
    }
    dist
}

/// All-pairs hop counts, one BFS per source. Row `i` holds distances from `i`.
pub fn shortest_path_distances(g: &Graph) -> Vec<Vec<Hops>> {
    (0..g.n).map(|s| bfs_hops(g, s)).collect()
}

/// Sum of hop distances over unordered pairs; `Unreachable` when disconnected.
pub fn wiener_index(g: &Graph) -> Hops {
    let mut total = 0usize;
    for (i, row) in shortest_path_distances(g).iter().enumerate() {
        for d in &row[i + 1..] {
            match d {
                Hops::Finite(d) => total += d,
                Hops::Unreachable => return Hops::Unreachable,
            }
        }
    }
    Hops::Finite(total)
}
