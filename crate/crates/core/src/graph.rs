//! Simple undirected graphs, paths, and their integer Laplacians.
//!
//! Every public interface speaks 1-based vertex labels. Storage is 0-based.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("invalid size {0}: need at least {1} vertices")]
    InvalidSize(usize, usize),
    #[error("vertex label {label} out of range 1..={n}")]
    LabelOutOfRange { label: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {{{0},{1}}}")]
    DuplicateEdge(usize, usize),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// A pair of distinct vertices `{a, b}`. The given order is kept since the
/// pair state `e_a - e_b` depends on it up to sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexPair {
    a: usize,
    b: usize,
}

impl VertexPair {
    pub fn new(a: usize, b: usize) -> Result<Self, GraphError> {
        if a == 0 {
            return Err(GraphError::LabelOutOfRange { label: a, n: 0 });
        }
        if b == 0 {
            return Err(GraphError::LabelOutOfRange { label: b, n: 0 });
        }
        if a == b {
            return Err(GraphError::SelfLoop(a));
        }
        Ok(Self { a, b })
    }

    pub fn sorted(a: usize, b: usize) -> Result<Self, GraphError> {
        Self::new(a.min(b), a.max(b))
    }

    /// The path edge `{a, a+1}`.
    pub fn edge_at(a: usize) -> Self {
        assert!(a >= 1, "vertex labels start at 1");
        Self { a, b: a + 1 }
    }

    pub fn a(&self) -> usize {
        self.a
    }

    pub fn b(&self) -> usize {
        self.b
    }

    /// Checks both labels against a vertex count.
    pub fn check(&self, n: usize) -> Result<(), GraphError> {
        for label in [self.a, self.b] {
            if label > n {
                return Err(GraphError::LabelOutOfRange { label, n });
            }
        }
        Ok(())
    }

    /// Zero-based indices `(a - 1, b - 1)`.
    pub(crate) fn indices(&self) -> (usize, usize) {
        (self.a - 1, self.b - 1)
    }
}

impl fmt::Display for VertexPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.a, self.b)
    }
}

impl FromStr for VertexPair {
    type Err = GraphError;

    /// Parses `"a,b"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || GraphError::Parse {
            line: 0,
            message: format!("expected a vertex pair like `1,2`, got `{s}`"),
        };
        let (a, b) = s.split_once(',').ok_or_else(bad)?;
        let a = a.trim().parse().map_err(|_| bad())?;
        let b = b.trim().parse().map_err(|_| bad())?;
        VertexPair::new(a, b)
    }
}

/// Undirected simple graph on vertices `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    // normalized (min, max), zero-based
    edges: BTreeSet<(usize, usize)>,
}

impl Graph {
    /// Graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::InvalidSize(n, 1));
        }
        Ok(Self {
            n,
            edges: BTreeSet::new(),
        })
    }

    /// Builds a graph from 1-based edges, rejecting loops, duplicates and
    /// out-of-range labels.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Self::empty(n)?;
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        for label in [u, v] {
            if label == 0 || label > self.n {
                return Err(GraphError::LabelOutOfRange { label, n: self.n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        let key = (u.min(v) - 1, u.max(v) - 1);
        if !self.edges.insert(key) {
            return Err(GraphError::DuplicateEdge(key.0 + 1, key.1 + 1));
        }
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as sorted 1-based pairs `(u, v)` with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().map(|&(u, v)| (u + 1, v + 1))
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        if u == 0 || v == 0 {
            return false;
        }
        self.edges.contains(&(u.min(v) - 1, u.max(v) - 1))
    }

    /// Degrees indexed by zero-based vertex.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    pub fn is_connected(&self) -> bool {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for &w in &adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Canonical edge-list serialization, the inverse of [`parse_graph`].
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("n {}\n", self.n);
        for (u, v) in self.edges() {
            out.push_str(&format!("e {u} {v}\n"));
        }
        out
    }
}

/// The path `P_n` with edges `{k, k+1}` for `k = 1..n-1`.
pub fn make_path(n: usize) -> Result<Graph, GraphError> {
    if n < 2 {
        return Err(GraphError::InvalidSize(n, 2));
    }
    Graph::from_edges(n, (1..n).map(|k| (k, k + 1)))
}

/// Exact integer Laplacian `D - A`, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaplacianMatrix {
    n: usize,
    entries: Vec<i64>,
}

impl LaplacianMatrix {
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.n + j]
    }

    pub fn row_sums(&self) -> Vec<i64> {
        self.entries.chunks(self.n).map(|r| r.iter().sum()).collect()
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Widens to floating point, row-major.
    pub fn to_f64(&self) -> Vec<f64> {
        self.entries.iter().map(|&x| x as f64).collect()
    }
}

pub fn laplacian(g: &Graph) -> LaplacianMatrix {
    let n = g.n;
    let mut entries = vec![0i64; n * n];
    for &(u, v) in &g.edges {
        entries[u * n + v] = -1;
        entries[v * n + u] = -1;
        entries[u * n + u] += 1;
        entries[v * n + v] += 1;
    }
    LaplacianMatrix { n, entries }
}

/// Parses the edge-list format: a header line `n <count>` followed by
/// lines `e <u> <v>`. `#` starts a comment; blank lines are ignored.
pub fn parse_graph(text: &str) -> Result<Graph, GraphError> {
    let mut graph: Option<Graph> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let err = |message: String| GraphError::Parse { line, message };
        let mut tokens = content.split_whitespace();
        let tag = tokens.next().unwrap_or_default();
        let args: Vec<&str> = tokens.collect();
        let number = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| err(format!("expected a non-negative integer, got `{s}`")))
        };
        match (tag, graph.as_mut()) {
            ("n", None) => {
                if args.len() != 1 {
                    return Err(err("header takes exactly one argument: `n <count>`".into()));
                }
                let n = number(args[0])?;
                graph = Some(Graph::empty(n).map_err(|e| err(e.to_string()))?);
            }
            ("n", Some(_)) => return Err(err("duplicate `n` header".into())),
            ("e", Some(g)) => {
                if args.len() != 2 {
                    return Err(err("edge line takes exactly two labels: `e <u> <v>`".into()));
                }
                let (u, v) = (number(args[0])?, number(args[1])?);
                g.add_edge(u, v).map_err(|e| err(e.to_string()))?;
            }
            ("e", None) => return Err(err("edge before `n` header".into())),
            (other, _) => return Err(err(format!("unknown record type `{other}`"))),
        }
    }
    graph.ok_or(GraphError::Parse {
        line: text.lines().count().max(1),
        message: "missing `n <count>` header".into(),
    })
}
