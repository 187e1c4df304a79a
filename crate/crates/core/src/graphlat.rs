//! Graph lattices of connected multigraphs.
//!
//! The lattice `Λ(G)` is generated by the vertices with `v·v = d(v)` and
//! `v·w = -e(v,w)`, modulo the relation that all vertices sum to zero.

use std::fmt;
use std::str::FromStr;

use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::intlat::{self, GramLattice, IntVector};

/// Undirected multigraph on vertices `0..n`; parallel edges are repeated.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Multigraph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

/// Result of splitting a vertex along a cut edge of `G \ {v}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexSplit {
    /// Component containing `u1`; `x = v + [R]`.
    pub r: Vec<usize>,
    /// Component containing `u2`; `y = v + [S]`.
    pub s: Vec<usize>,
    pub u1: usize,
    pub u2: usize,
}

impl Multigraph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Multigraph> {
        for &(u, v) in &edges {
            if u >= n || v >= n {
                return invalid(format!("edge ({u},{v}) refers to a vertex outside 0..{n}"));
            }
        }
        let edges = edges.into_iter().map(|(u, v)| (u.min(v), u.max(v))).collect();
        Ok(Multigraph { n, edges })
    }

    /// Builds a graph from a symmetric matrix of edge multiplicities.
    pub fn from_multiplicities(m: &[Vec<i64>]) -> Result<Multigraph> {
        let n = m.len();
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i..n {
                if m[i][j] != m[j][i] || m[i][j] < 0 {
                    return invalid(format!("bad multiplicity at ({i},{j})"));
                }
                for _ in 0..m[i][j] {
                    edges.push((i, j));
                }
            }
        }
        Multigraph::new(n, edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn multiplicity(&self, u: usize, v: usize) -> usize {
        let key = (u.min(v), u.max(v));
        self.edges.iter().filter(|&&e| e == key).count()
    }

    /// Degree ignoring self-loops.
    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| a != b && (a == v || b == v))
            .count()
    }

    pub fn self_loops(&self) -> usize {
        self.edges.iter().filter(|(a, b)| a == b).count()
    }

    /// Matrix of edge multiplicities (self-loops excluded).
    pub fn adjacency(&self) -> Vec<Vec<i64>> {
        let mut m = vec![vec![0i64; self.n]; self.n];
        for &(a, b) in &self.edges {
            if a != b {
                m[a][b] += 1;
                m[b][a] += 1;
            }
        }
        m
    }

    /// The full pairing `v·w` on `Z^V`.
    pub fn laplacian(&self) -> Vec<Vec<i64>> {
        let mut m = self.adjacency();
        for (i, row) in m.iter_mut().enumerate() {
            let d: i64 = row.iter().sum();
            for x in row.iter_mut() {
                *x = -*x;
            }
            row[i] = d;
        }
        m
    }

    fn components_within(&self, keep: &[bool], skip_edge: Option<usize>) -> UnionFind<usize> {
        let mut uf = UnionFind::new(self.n);
        for (idx, &(a, b)) in self.edges.iter().enumerate() {
            if Some(idx) != skip_edge && keep[a] && keep[b] {
                uf.union(a, b);
            }
        }
        uf
    }

    /// True iff the subgraph induced by the marked vertices is connected
    /// (an empty set counts as connected).
    pub fn induces_connected(&self, keep: &[bool]) -> bool {
        let uf = self.components_within(keep, None);
        let mut root = None;
        for v in (0..self.n).filter(|&v| keep[v]) {
            let r = uf.find(v);
            match root {
                None => root = Some(r),
                Some(r0) if r0 != r => return false,
                _ => {}
            }
        }
        true
    }

    pub fn is_connected(&self) -> bool {
        self.induces_connected(&vec![true; self.n])
    }

    /// Vertices whose removal disconnects the graph.
    pub fn cut_vertices(&self) -> Vec<usize> {
        if self.n < 3 {
            return Vec::new();
        }
        (0..self.n)
            .filter(|&v| {
                let mut keep = vec![true; self.n];
                keep[v] = false;
                !self.induces_connected(&keep)
            })
            .collect()
    }

    pub fn is_two_connected(&self) -> bool {
        self.is_connected() && self.cut_vertices().is_empty()
    }

    /// Indices of edges whose removal disconnects the graph.
    pub fn cut_edges(&self) -> Vec<usize> {
        let keep = vec![true; self.n];
        let base = self.components_within(&keep, None);
        (0..self.edges.len())
            .filter(|&i| {
                let (a, b) = self.edges[i];
                if a == b || base.find(a) != base.find(b) {
                    return false;
                }
                let uf = self.components_within(&keep, Some(i));
                uf.find(a) != uf.find(b)
            })
            .collect()
    }

    pub fn has_cut_edge(&self) -> bool {
        !self.cut_edges().is_empty()
    }

    fn check_lattice_ready(&self) -> Result<()> {
        if self.n == 0 {
            return invalid("graph lattice of the empty graph");
        }
        if !self.is_connected() {
            return invalid("graph lattice needs a connected graph");
        }
        Ok(())
    }

    /// Gram matrix of the vertices other than `dropped`, in increasing order.
    pub fn graph_lattice_gram(&self, dropped: usize) -> Result<GramLattice> {
        self.check_lattice_ready()?;
        if dropped >= self.n {
            return invalid(format!("dropped vertex {dropped} out of range"));
        }
        let lap = self.laplacian();
        let keep: Vec<usize> = (0..self.n).filter(|&v| v != dropped).collect();
        GramLattice::new(
            keep.iter()
                .map(|&i| keep.iter().map(|&j| lap[i][j]).collect())
                .collect(),
        )
    }

    /// Coordinates of `Σ c_v v` in the basis used by [`graph_lattice_gram`](Self::graph_lattice_gram).
    pub fn element_coords(&self, coeffs: &[i64], dropped: usize) -> IntVector {
        let base = coeffs[dropped];
        (0..self.n)
            .filter(|&v| v != dropped)
            .map(|v| coeffs[v] - base)
            .collect()
    }

    /// `x·y` for elements given by vertex coefficients.
    pub fn pair(&self, x: &[i64], y: &[i64]) -> i64 {
        let lap = self.laplacian();
        x.iter()
            .zip(&lap)
            .map(|(xi, row)| xi * intlat::dot(row, y))
            .sum()
    }

    /// Number of spanning trees (0 for a disconnected graph).
    pub fn spanning_tree_count(&self) -> Result<i128> {
        if self.n == 0 {
            return Ok(0);
        }
        if !self.is_connected() {
            return Ok(0);
        }
        intlat::discriminant(&self.graph_lattice_gram(self.n - 1)?)
    }

    /// True iff both `R` and its complement induce connected subgraphs,
    /// which is exactly when `[R]` is irreducible.
    pub fn is_irreducible_sum(&self, region: &[usize]) -> Result<bool> {
        let mut keep = vec![false; self.n];
        for &v in region {
            if v >= self.n {
                return invalid(format!("vertex {v} out of range"));
            }
            keep[v] = true;
        }
        let size = keep.iter().filter(|&&k| k).count();
        if size == 0 || size == self.n {
            return invalid("region must be a nonempty proper subset");
        }
        let comp: Vec<bool> = keep.iter().map(|k| !k).collect();
        Ok(self.induces_connected(&keep) && self.induces_connected(&comp))
    }

    /// Looks for `v = x + y` with `x·y = -1` via a cut edge of `G \ {v}`.
    pub fn split_vertex(&self, v: usize) -> Result<Option<VertexSplit>> {
        if v >= self.n {
            return invalid(format!("vertex {v} out of range"));
        }
        let mut keep = vec![true; self.n];
        keep[v] = false;
        if !self.induces_connected(&keep) {
            return Ok(None);
        }
        for (idx, &(a, b)) in self.edges.iter().enumerate() {
            if a == b || a == v || b == v {
                continue;
            }
            let uf = self.components_within(&keep, Some(idx));
            if uf.find(a) == uf.find(b) {
                continue;
            }
            let ra = uf.find(a);
            let r: Vec<usize> = (0..self.n).filter(|&u| u != v && uf.find(u) == ra).collect();
            let s: Vec<usize> = (0..self.n).filter(|&u| u != v && uf.find(u) != ra).collect();
            return Ok(Some(VertexSplit { r, s, u1: a, u2: b }));
        }
        Ok(None)
    }
}

/// Shifts coefficients so that the minimum is zero.
pub fn normalize_element(coeffs: &[i64]) -> Vec<i64> {
    let m = coeffs.iter().copied().min().unwrap_or(0);
    coeffs.iter().map(|c| c - m).collect()
}

impl fmt::Display for Multigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.n)?;
        let mut classes: Vec<(usize, usize)> = self.edges.clone();
        classes.sort_unstable();
        classes.dedup();
        for (a, b) in classes {
            writeln!(f, "{a} {b} {}", self.multiplicity(a, b))?;
        }
        Ok(())
    }
}

impl FromStr for Multigraph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Multigraph> {
        let mut lines = s
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (_, first) = lines.next().ok_or_else(|| Error::Parse("empty graph file".into()))?;
        let n: usize = first
            .parse()
            .map_err(|_| Error::Parse("first line must be the vertex count".into()))?;
        let mut edges = Vec::new();
        for (lineno, line) in lines {
            let nums: Vec<usize> = line
                .split_whitespace()
                .map(str::parse)
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| Error::Parse(format!("line {lineno}: expected \"u v multiplicity\"")))?;
            let [u, v, m] = nums[..] else {
                return Err(Error::Parse(format!("line {lineno}: expected three integers")));
            };
            edges.extend(std::iter::repeat_n((u, v), m));
        }
        Multigraph::new(n, edges).map_err(|e| Error::Parse(e.to_string()))
    }
}
