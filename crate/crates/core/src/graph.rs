//! The bipartite multigraph type and its derived parameters.
//!
//! A [`Bigraph`] is a dense `nx × ny` matrix of edge multiplicities. Row `i`
//! is the X-vertex `x_i`, column `j` the Y-vertex `y_j` (both 0-indexed).
//! Neighbourhoods are handed around as `u64` bitmasks, so each side is
//! capped at [`MAX_SIDE`] vertices.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest number of vertices allowed on either side.
pub const MAX_SIDE: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bigraph {
    nx: usize,
    ny: usize,
    mult: Vec<u32>,
}

/// Parameters read off a graph: `t = ny - n`, `b = m - 2 ny`, `k` the minimum
/// X-degree, `r` the minimum number of distinct neighbours over X, and the
/// same two quantities over Y.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphParams {
    pub n: usize,
    pub ny: usize,
    pub t: i64,
    pub m: u64,
    pub b: i64,
    pub k: u64,
    pub r: usize,
    #[serde(rename = "deltaY")]
    pub delta_y: u64,
    #[serde(rename = "rY")]
    pub r_y: usize,
}

/// An induced subgraph together with the original indices of its rows and
/// columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedSubgraph {
    pub graph: Bigraph,
    pub x_map: Vec<usize>,
    pub y_map: Vec<usize>,
}

fn check_side(len: usize, what: &str) -> Result<()> {
    if len > MAX_SIDE {
        return Err(Error::TooLarge(format!("{what} has {len} vertices; at most {MAX_SIDE} supported")));
    }
    Ok(())
}

pub(crate) fn mask_of(indices: impl IntoIterator<Item = usize>) -> u64 {
    indices.into_iter().fold(0u64, |acc, i| acc | (1u64 << i))
}

pub(crate) fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}

impl Bigraph {
    /// Builds a graph from `(i, j, multiplicity)` triples. Repeated pairs
    /// accumulate.
    pub fn build(nx: usize, ny: usize, edges: &[(usize, usize, u32)]) -> Result<Self> {
        if nx == 0 || ny == 0 {
            return Err(Error::EmptySide { nx, ny });
        }
        check_side(nx, "X")?;
        check_side(ny, "Y")?;
        let mut g = Self::zeros(nx, ny);
        for &(i, j, m) in edges {
            if i >= nx {
                return Err(Error::XIndex { index: i, nx });
            }
            if j >= ny {
                return Err(Error::YIndex { index: j, ny });
            }
            if m == 0 {
                return Err(Error::ZeroMultiplicity { i, j });
            }
            let cell = &mut g.mult[i * ny + j];
            *cell =
                cell.checked_add(m).ok_or_else(|| Error::TooLarge(format!("multiplicity of ({i}, {j}) overflows")))?;
        }
        Ok(g)
    }

    /// Builds a graph from a row-major multiplicity matrix.
    pub fn from_rows<R: AsRef<[u32]>>(rows: &[R]) -> Result<Self> {
        let nx = rows.len();
        let ny = rows.first().map_or(0, |r| r.as_ref().len());
        if nx == 0 || ny == 0 {
            return Err(Error::EmptySide { nx, ny });
        }
        check_side(nx, "X")?;
        check_side(ny, "Y")?;
        let mut mult = Vec::with_capacity(nx * ny);
        for row in rows {
            let row = row.as_ref();
            if row.len() != ny {
                return Err(Error::Parse(format!("ragged matrix: expected {ny} columns, got {}", row.len())));
            }
            mult.extend_from_slice(row);
        }
        Ok(Self { nx, ny, mult })
    }

    /// All-zero matrix. Either side may be empty; such graphs only arise as
    /// the result of vertex deletion.
    pub(crate) fn zeros(nx: usize, ny: usize) -> Self {
        Self { nx, ny, mult: vec![0; nx * ny] }
    }

    pub fn nx(&self) -> usize {
        self.nx
    }

    pub fn ny(&self) -> usize {
        self.ny
    }

    #[inline]
    pub fn mult(&self, i: usize, j: usize) -> u32 {
        self.mult[i * self.ny + j]
    }

    #[inline]
    pub(crate) fn set_mult(&mut self, i: usize, j: usize, m: u32) {
        self.mult[i * self.ny + j] = m;
    }

    #[inline]
    pub(crate) fn add_mult(&mut self, i: usize, j: usize, m: u32) {
        self.mult[i * self.ny + j] += m;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.mult[i * self.ny..(i + 1) * self.ny]
    }

    pub fn rows(&self) -> Vec<Vec<u32>> {
        (0..self.nx).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn degree_x(&self, i: usize) -> u64 {
        self.row(i).iter().map(|&m| u64::from(m)).sum()
    }

    pub fn degree_y(&self, j: usize) -> u64 {
        (0..self.nx).map(|i| u64::from(self.mult(i, j))).sum()
    }

    /// Neighbours of `x_i` as a bitmask over Y.
    #[inline]
    pub fn nbr_mask_x(&self, i: usize) -> u64 {
        self.row(i).iter().enumerate().filter(|(_, &m)| m > 0).fold(0, |acc, (j, _)| acc | (1u64 << j))
    }

    /// Neighbours of `y_j` as a bitmask over X.
    pub fn nbr_mask_y(&self, j: usize) -> u64 {
        (0..self.nx).filter(|&i| self.mult(i, j) > 0).fold(0, |acc, i| acc | (1u64 << i))
    }

    /// `N(S)` for a bitmask `S` over X.
    pub fn neighborhood_mask(&self, s: u64) -> u64 {
        bits(s).fold(0, |acc, i| acc | self.nbr_mask_x(i))
    }

    /// `N(S)` for an explicit set of X-indices.
    pub fn neighborhood(&self, s: &[usize]) -> Result<BTreeSet<usize>> {
        for &i in s {
            if i >= self.nx {
                return Err(Error::XIndex { index: i, nx: self.nx });
            }
        }
        Ok(bits(self.neighborhood_mask(mask_of(s.iter().copied()))).collect())
    }

    pub fn edge_count(&self) -> u64 {
        self.mult.iter().map(|&m| u64::from(m)).sum()
    }

    /// Positive entries as `(i, j, multiplicity)`, sorted by `(i, j)`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, u32)> + '_ {
        let ny = self.ny;
        self.mult.iter().enumerate().filter(|(_, &m)| m > 0).map(move |(idx, &m)| (idx / ny, idx % ny, m))
    }

    pub fn is_simple(&self) -> bool {
        self.mult.iter().all(|&m| m <= 1)
    }

    pub fn params(&self) -> GraphParams {
        let m = self.edge_count();
        let k = (0..self.nx).map(|i| self.degree_x(i)).min().unwrap_or(0);
        let r = (0..self.nx).map(|i| self.nbr_mask_x(i).count_ones() as usize).min().unwrap_or(0);
        let delta_y = (0..self.ny).map(|j| self.degree_y(j)).min().unwrap_or(0);
        let r_y = (0..self.ny).map(|j| self.nbr_mask_y(j).count_ones() as usize).min().unwrap_or(0);
        GraphParams {
            n: self.nx,
            ny: self.ny,
            t: self.ny as i64 - self.nx as i64,
            m,
            b: m as i64 - 2 * self.ny as i64,
            k,
            r,
            delta_y,
            r_y,
        }
    }

    /// Appends `p` Y-vertices joined by single edges to every X-vertex.
    pub fn add_universal_vertices(&self, p: usize) -> Result<Self> {
        check_side(self.ny + p, "Y")?;
        let ny = self.ny + p;
        let mut g = Self::zeros(self.nx, ny);
        for i in 0..self.nx {
            g.mult[i * ny..i * ny + self.ny].copy_from_slice(self.row(i));
            g.mult[i * ny + self.ny..(i + 1) * ny].fill(1);
        }
        Ok(g)
    }

    /// The subgraph on rows `s` and columns `t`, in the order given.
    pub fn induced_subgraph(&self, s: &[usize], t: &[usize]) -> Result<InducedSubgraph> {
        if s.is_empty() || t.is_empty() {
            return Err(Error::EmptySide { nx: s.len(), ny: t.len() });
        }
        for &i in s {
            if i >= self.nx {
                return Err(Error::XIndex { index: i, nx: self.nx });
            }
        }
        for &j in t {
            if j >= self.ny {
                return Err(Error::YIndex { index: j, ny: self.ny });
            }
        }
        Ok(InducedSubgraph { graph: self.select(s, t), x_map: s.to_vec(), y_map: t.to_vec() })
    }

    /// Unchecked row/column selection; either list may be empty.
    pub(crate) fn select(&self, s: &[usize], t: &[usize]) -> Self {
        let mut g = Self::zeros(s.len(), t.len());
        for (a, &i) in s.iter().enumerate() {
            for (b, &j) in t.iter().enumerate() {
                g.set_mult(a, b, self.mult(i, j));
            }
        }
        g
    }

    /// `G - xs - ys`. The result may have an empty side.
    pub fn delete_vertices(&self, xs: &[usize], ys: &[usize]) -> Self {
        let keep_x: Vec<usize> = (0..self.nx).filter(|i| !xs.contains(i)).collect();
        let keep_y: Vec<usize> = (0..self.ny).filter(|j| !ys.contains(j)).collect();
        self.select(&keep_x, &keep_y)
    }

    /// Same graph with every positive multiplicity replaced by 1.
    pub fn underlying_simple(&self) -> Self {
        Self { nx: self.nx, ny: self.ny, mult: self.mult.iter().map(|&m| u32::from(m > 0)).collect() }
    }

    /// Swaps the roles of X and Y.
    pub fn transpose(&self) -> Self {
        let mut g = Self::zeros(self.ny, self.nx);
        for (i, j, m) in self.edges() {
            g.set_mult(j, i, m);
        }
        g
    }

    /// Applies row and column permutations: row `i` of the result is row
    /// `row_perm[i]` of `self`, and likewise for columns.
    pub fn permuted(&self, row_perm: &[usize], col_perm: &[usize]) -> Self {
        self.select(row_perm, col_perm)
    }

    /// Connectivity of the whole graph, isolated vertices included.
    pub fn is_connected(&self) -> bool {
        self.component_count_without(None) <= 1
    }

    /// Number of connected components, optionally after removing one vertex
    /// (`(is_x, index)`).
    pub(crate) fn component_count_without(&self, removed: Option<(bool, usize)>) -> usize {
        let total = self.nx + self.ny;
        let removed_id = removed.map(|(is_x, v)| if is_x { v } else { self.nx + v });
        let mut seen = vec![false; total];
        if let Some(r) = removed_id {
            seen[r] = true;
        }
        let mut comps = 0;
        let mut stack = Vec::new();
        for start in 0..total {
            if seen[start] {
                continue;
            }
            comps += 1;
            seen[start] = true;
            stack.push(start);
            while let Some(v) = stack.pop() {
                let next: Vec<usize> = if v < self.nx {
                    bits(self.nbr_mask_x(v)).map(|j| self.nx + j).collect()
                } else {
                    bits(self.nbr_mask_y(v - self.nx)).collect()
                };
                for w in next {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
        }
        comps
    }

    /// Canonical JSON: `{"nx":..,"ny":..,"edges":[[i,j,mult],..]}` with edges
    /// in `(i, j)` order.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&GraphFile::from(self)).expect("graph serialization cannot fail")
    }

    /// Terse text: `nx ny` then one `i j mult` line per positive entry.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.nx, self.ny);
        for (i, j, m) in self.edges() {
            s.push_str(&format!("{i} {j} {m}\n"));
        }
        s
    }

    /// Parses either format; JSON is recognised by a leading `{`.
    pub fn parse(input: &str) -> Result<Self> {
        if input.trim_start().starts_with('{') {
            let file: GraphFile = serde_json::from_str(input).map_err(|e| Error::Parse(e.to_string()))?;
            Self::try_from(file)
        } else {
            parse_text(input)
        }
    }
}

fn parse_text(input: &str) -> Result<Bigraph> {
    let mut lines = input.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines.next().ok_or_else(|| Error::Parse("empty input".into()))?;
    let dims = parse_ints(header)?;
    if dims.len() != 2 {
        return Err(Error::Parse(format!("header must be `nx ny`, got `{header}`")));
    }
    let mut edges = Vec::new();
    for line in lines {
        let f = parse_ints(line)?;
        if f.len() != 3 {
            return Err(Error::Parse(format!("edge line must be `i j mult`, got `{line}`")));
        }
        let m = u32::try_from(f[2]).map_err(|_| Error::Parse(format!("multiplicity too large in `{line}`")))?;
        edges.push((f[0] as usize, f[1] as usize, m));
    }
    Bigraph::build(dims[0] as usize, dims[1] as usize, &edges)
}

fn parse_ints(line: &str) -> Result<Vec<u64>> {
    line.split_whitespace()
        .map(|w| w.parse::<u64>().map_err(|_| Error::Parse(format!("not a non-negative integer: `{w}`"))))
        .collect()
}

#[derive(Serialize, Deserialize)]
struct GraphFile {
    nx: usize,
    ny: usize,
    edges: Vec<(usize, usize, u32)>,
}

impl From<&Bigraph> for GraphFile {
    fn from(g: &Bigraph) -> Self {
        GraphFile { nx: g.nx, ny: g.ny, edges: g.edges().collect() }
    }
}

impl TryFrom<GraphFile> for Bigraph {
    type Error = Error;

    fn try_from(f: GraphFile) -> Result<Self> {
        Bigraph::build(f.nx, f.ny, &f.edges)
    }
}

impl Serialize for Bigraph {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        GraphFile::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Bigraph {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let file = GraphFile::deserialize(deserializer)?;
        Bigraph::try_from(file).map_err(serde::de::Error::custom)
    }
}

impl fmt::Debug for Bigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Bigraph{:?}", self.rows())
    }
}

impl fmt::Display for Bigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.nx {
            let row: Vec<String> = self.row(i).iter().map(u32::to_string).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f4() -> Bigraph {
        Bigraph::build(2, 2, &[(0, 0, 3), (0, 1, 1), (1, 0, 3), (1, 1, 1)]).unwrap()
    }

    #[test]
    fn build_accumulates_and_validates() {
        assert_eq!(f4().rows(), vec![vec![3, 1], vec![3, 1]]);
        let g = Bigraph::build(2, 2, &[(0, 0, 1), (0, 0, 2)]).unwrap();
        assert_eq!(g.mult(0, 0), 3);
        let k11 = Bigraph::build(1, 1, &[(0, 0, 1)]).unwrap();
        assert_eq!(k11.edge_count(), 1);

        assert_eq!(Bigraph::build(2, 2, &[(2, 0, 1)]), Err(Error::XIndex { index: 2, nx: 2 }));
        assert_eq!(Bigraph::build(2, 2, &[(0, 5, 1)]), Err(Error::YIndex { index: 5, ny: 2 }));
        assert_eq!(Bigraph::build(2, 2, &[(0, 0, 0)]), Err(Error::ZeroMultiplicity { i: 0, j: 0 }));
        assert!(matches!(Bigraph::build(0, 2, &[]), Err(Error::EmptySide { .. })));
        assert!(matches!(Bigraph::build(65, 2, &[]), Err(Error::TooLarge(_))));
    }

    #[test]
    fn params_of_f4_and_k11() {
        let p = f4().params();
        assert_eq!((p.n, p.ny, p.t, p.m, p.b, p.k, p.r, p.delta_y), (2, 2, 0, 8, 4, 4, 2, 2));
        let p = Bigraph::build(1, 1, &[(0, 0, 1)]).unwrap().params();
        assert_eq!((p.n, p.ny, p.t, p.m, p.b, p.k, p.r), (1, 1, 0, 1, -1, 1, 1));
    }

    #[test]
    fn neighborhoods() {
        let g = f4();
        assert_eq!(g.neighborhood(&[]).unwrap(), BTreeSet::new());
        assert_eq!(g.neighborhood(&[1]).unwrap(), BTreeSet::from([0, 1]));
        assert!(g.neighborhood(&[2]).is_err());
    }

    #[test]
    fn universal_vertices() {
        let k11 = Bigraph::build(1, 1, &[(0, 0, 1)]).unwrap();
        assert_eq!(k11.add_universal_vertices(1).unwrap().rows(), vec![vec![1, 1]]);
        assert_eq!(k11.add_universal_vertices(0).unwrap(), k11);
        let col = Bigraph::from_rows(&[[1], [1]]).unwrap();
        assert_eq!(col.add_universal_vertices(1).unwrap().rows(), vec![vec![1, 1], vec![1, 1]]);
    }

    #[test]
    fn induced_and_simple() {
        let g = f4();
        let sub = g.induced_subgraph(&[1], &[0]).unwrap();
        assert_eq!(sub.graph.rows(), vec![vec![3]]);
        assert_eq!(sub.x_map, vec![1]);
        assert!(g.induced_subgraph(&[], &[0]).is_err());
        assert_eq!(g.induced_subgraph(&[0, 1], &[0, 1]).unwrap().graph, g);
        let s = g.underlying_simple();
        assert_eq!(s.rows(), vec![vec![1, 1], vec![1, 1]]);
        assert_eq!(s.underlying_simple(), s);
    }

    #[test]
    fn text_and_json_formats() {
        let g = Bigraph::build(2, 3, &[(1, 2, 2), (0, 0, 1)]).unwrap();
        assert_eq!(g.to_json(), r#"{"nx":2,"ny":3,"edges":[[0,0,1],[1,2,2]]}"#);
        assert_eq!(g.to_text(), "2 3\n0 0 1\n1 2 2\n");
        assert_eq!(Bigraph::parse(&g.to_json()).unwrap(), g);
        assert_eq!(Bigraph::parse(&g.to_text()).unwrap(), g);
        assert_eq!(Bigraph::parse("# comment\n2 3\n\n1 2 1\n1 2 1\n0 0 1\n").unwrap(), g);
        assert!(matches!(Bigraph::parse("2 x"), Err(Error::Parse(_))));
        assert!(matches!(Bigraph::parse("2 2\n0 0"), Err(Error::Parse(_))));
        assert!(Bigraph::parse(r#"{"nx":1,"ny":1,"edges":[[0,0,0]]}"#).is_err());
    }

    #[test]
    fn connectivity() {
        assert!(f4().is_connected());
        let two = Bigraph::from_rows(&[[1, 0], [0, 1]]).unwrap();
        assert!(!two.is_connected());
        let path = Bigraph::from_rows(&[[1, 1, 0], [0, 1, 1]]).unwrap();
        assert_eq!(path.component_count_without(Some((false, 1))), 2);
    }
}
