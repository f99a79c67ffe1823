//! Simple undirected graphs with the handful of primitives everything else
//! is built from: shortest-path distances, edge boundaries, vertex-deleted
//! subgraphs, and degree statistics.
//!
//! Vertices are 0-indexed throughout the library. The edge-list text format
//! and all emitted reports use 1-indexed labels; [`Graph::parse`] and the
//! report layer do the conversion.

use crate::extint::ExtInt;
use crate::{Error, Result};
use rand::Rng;
use std::collections::VecDeque;

/// An undirected graph without self-loops or parallel edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph on `n` vertices from an edge list. Edges may arrive in
    /// either orientation; duplicates and self-loops are rejected.
    pub fn new(n: usize, raw_edges: &[(usize, usize)]) -> Result<Graph> {
        if n == 0 {
            return Err(Error::invalid("a graph needs at least one vertex"));
        }
        let mut edges = Vec::with_capacity(raw_edges.len());
        for &(a, b) in raw_edges {
            if a >= n {
                return Err(Error::VertexRange { label: a + 1, n });
            }
            if b >= n {
                return Err(Error::VertexRange { label: b + 1, n });
            }
            if a == b {
                return Err(Error::SelfLoop { v: a + 1 });
            }
            edges.push((a.min(b), a.max(b)));
        }
        edges.sort_unstable();
        if let Some(w) = edges.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge {
                u: w[0].0 + 1,
                v: w[0].1 + 1,
            });
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph { n, edges, adj })
    }

    /// Parses the edge-list format: a header line `n m` followed by `m` lines
    /// `u v` with 1-indexed endpoints. Blank lines are skipped; anything
    /// after the last edge is an error.
    pub fn parse(text: &str) -> Result<Graph> {
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty());
        let (header_no, header) = lines.next().ok_or_else(|| Error::Parse {
            line: 1,
            msg: "empty input, expected a header line `n m`".into(),
        })?;
        let mut it = header.split_whitespace();
        let n: usize = parse_field(it.next(), header_no + 1, "vertex count")?;
        let m: usize = parse_field(it.next(), header_no + 1, "edge count")?;
        if it.next().is_some() {
            return Err(Error::Parse {
                line: header_no + 1,
                msg: "header has trailing fields, expected exactly `n m`".into(),
            });
        }
        if n == 0 {
            return Err(Error::Parse {
                line: header_no + 1,
                msg: "vertex count must be positive".into(),
            });
        }
        let mut edges = Vec::with_capacity(m);
        for _ in 0..m {
            let (line_no, line) = lines.next().ok_or_else(|| Error::Parse {
                line: header_no + 1,
                msg: format!("expected {m} edge lines, found {}", edges.len()),
            })?;
            let mut it = line.split_whitespace();
            let u: usize = parse_field(it.next(), line_no + 1, "edge endpoint")?;
            let v: usize = parse_field(it.next(), line_no + 1, "edge endpoint")?;
            if it.next().is_some() {
                return Err(Error::Parse {
                    line: line_no + 1,
                    msg: "edge line has trailing fields, expected exactly `u v`".into(),
                });
            }
            if u == 0 || v == 0 {
                return Err(Error::Parse {
                    line: line_no + 1,
                    msg: "vertex labels are 1-indexed".into(),
                });
            }
            edges.push((u - 1, v - 1));
        }
        if let Some((line_no, _)) = lines.next() {
            return Err(Error::Parse {
                line: line_no + 1,
                msg: "unexpected content after the last edge".into(),
            });
        }
        Graph::new(n, &edges)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as (min, max) pairs in sorted order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v && u < self.n && v < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn degree_profile(&self) -> DegreeProfile {
        let degrees: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        DegreeProfile {
            min_degree: degrees.iter().copied().min().unwrap_or(0),
            max_degree: degrees.iter().copied().max().unwrap_or(0),
            volume: degrees.iter().sum(),
            degrees,
        }
    }

    /// All-pairs shortest-path distances by BFS from every vertex.
    /// Unreachable pairs are [`ExtInt::Infinite`].
    pub fn all_pairs_distances(&self) -> DistanceMatrix {
        let mut d = vec![ExtInt::Infinite; self.n * self.n];
        let mut queue = VecDeque::new();
        for src in 0..self.n {
            let row = &mut d[src * self.n..(src + 1) * self.n];
            row[src] = ExtInt::Finite(0);
            queue.clear();
            queue.push_back(src);
            while let Some(u) = queue.pop_front() {
                let du = row[u].finite().expect("queued vertices are reached");
                for &w in &self.adj[u] {
                    if row[w] == ExtInt::Infinite {
                        row[w] = ExtInt::Finite(du + 1);
                        queue.push_back(w);
                    }
                }
            }
        }
        DistanceMatrix { n: self.n, d }
    }

    /// The edges with exactly one endpoint in `x`.
    pub fn edge_boundary(&self, x: &VertexSet) -> Result<Vec<(usize, usize)>> {
        x.check_range(self.n)?;
        let mut inside = vec![false; self.n];
        for &v in x.members() {
            inside[v] = true;
        }
        Ok(self
            .edges
            .iter()
            .copied()
            .filter(|&(u, v)| inside[u] != inside[v])
            .collect())
    }

    /// Deletes the vertices in `w` and relabels the rest contiguously.
    /// Returns the subgraph together with the kept original labels, indexed
    /// by new label.
    pub fn delete_vertices(&self, w: &VertexSet) -> Result<(Graph, Vec<usize>)> {
        w.check_range(self.n)?;
        if w.len() == self.n {
            return Err(Error::EmptyGraph {
                deleted: w.len(),
                n: self.n,
            });
        }
        let mut gone = vec![false; self.n];
        for &v in w.members() {
            gone[v] = true;
        }
        let kept: Vec<usize> = (0..self.n).filter(|&v| !gone[v]).collect();
        let mut new_label = vec![usize::MAX; self.n];
        for (new, &old) in kept.iter().enumerate() {
            new_label[old] = new;
        }
        let edges: Vec<(usize, usize)> = self
            .edges
            .iter()
            .filter(|&&(u, v)| !gone[u] && !gone[v])
            .map(|&(u, v)| (new_label[u], new_label[v]))
            .collect();
        Ok((Graph::new(kept.len(), &edges)?, kept))
    }

    /// Connected components as vertex sets, ordered by smallest member.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            queue.push_back(start);
            let mut comp = vec![start];
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(VertexSet { members: comp });
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    pub fn complete(n: usize) -> Graph {
        let edges: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        Graph::new(n, &edges).expect("complete graph is valid")
    }

    pub fn path(n: usize) -> Graph {
        let edges: Vec<(usize, usize)> = (1..n).map(|v| (v - 1, v)).collect();
        Graph::new(n, &edges).expect("path graph is valid")
    }

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3, "a cycle needs at least three vertices");
        let mut edges: Vec<(usize, usize)> = (1..n).map(|v| (v - 1, v)).collect();
        edges.push((0, n - 1));
        Graph::new(n, &edges).expect("cycle graph is valid")
    }

    /// Star with center 0 and `n - 1` leaves.
    pub fn star(n: usize) -> Graph {
        let edges: Vec<(usize, usize)> = (1..n).map(|v| (0, v)).collect();
        Graph::new(n, &edges).expect("star graph is valid")
    }

    /// Erdos-Renyi G(n, p) sample; each edge appears independently.
    pub fn random_gnp<R: Rng>(n: usize, p: f64, rng: &mut R) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen::<f64>() < p {
                    edges.push((u, v));
                }
            }
        }
        Graph::new(n, &edges).expect("sampled edges are valid")
    }
}

fn parse_field(field: Option<&str>, line: usize, what: &str) -> Result<usize> {
    let raw = field.ok_or_else(|| Error::Parse {
        line,
        msg: format!("missing {what}"),
    })?;
    raw.parse().map_err(|_| Error::Parse {
        line,
        msg: format!("{what} {raw:?} is not a nonnegative integer"),
    })
}

/// A sorted set of distinct vertices of some host graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    members: Vec<usize>,
}

impl VertexSet {
    /// Sorts and validates; duplicates are rejected.
    pub fn new(mut members: Vec<usize>) -> Result<VertexSet> {
        members.sort_unstable();
        if members.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::invalid("vertex set contains a duplicate label"));
        }
        Ok(VertexSet { members })
    }

    pub fn empty() -> VertexSet {
        VertexSet {
            members: Vec::new(),
        }
    }

    pub fn from_mask(mask: u64, n: usize) -> VertexSet {
        VertexSet {
            members: (0..n).filter(|&v| mask >> v & 1 == 1).collect(),
        }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    /// 1-indexed view for reports and error messages.
    pub fn external_labels(&self) -> Vec<usize> {
        self.members.iter().map(|&v| v + 1).collect()
    }

    fn check_range(&self, n: usize) -> Result<()> {
        if let Some(&v) = self.members.iter().find(|&&v| v >= n) {
            return Err(Error::VertexRange { label: v + 1, n });
        }
        Ok(())
    }
}

/// Dense all-pairs distance table.
#[derive(Debug, Clone)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<ExtInt>,
}

impl DistanceMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, u: usize, v: usize) -> ExtInt {
        self.d[u * self.n + v]
    }

    /// Largest finite entry, or infinity if any pair is unreachable.
    /// The diameter of the graph the table came from.
    pub fn diameter(&self) -> ExtInt {
        let mut best = ExtInt::Finite(0);
        for &v in &self.d {
            if v == ExtInt::Infinite {
                return ExtInt::Infinite;
            }
            best = best.max(v);
        }
        best
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeProfile {
    pub degrees: Vec<usize>,
    pub min_degree: usize,
    pub max_degree: usize,
    /// Sum of degrees: twice the edge count.
    pub volume: usize,
}
