//! Odd ear decompositions of elementary graphs and their validation.

use serde::{Deserialize, Serialize};

use crate::error::{precondition, Error, Result};
use crate::graph::Bigraph;
use crate::matching::maximum_matching;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Vertex {
    X(usize),
    Y(usize),
}

/// An initial edge followed by ears. Each ear is a vertex sequence whose
/// endpoints are already present and whose interior vertices are new. A
/// two-vertex ear adds one more copy of an edge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EarDecomposition {
    pub base: (usize, usize),
    pub ears: Vec<Vec<Vertex>>,
}

impl EarDecomposition {
    /// Base plus ears.
    pub fn items(&self) -> usize {
        1 + self.ears.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EarValidation {
    pub valid: bool,
    pub reasons: Vec<String>,
}

struct Grow {
    in_x: Vec<bool>,
    in_y: Vec<bool>,
    used: Vec<Vec<u32>>,
}

impl Grow {
    fn contains(&self, v: Vertex) -> bool {
        match v {
            Vertex::X(i) => self.in_x[i],
            Vertex::Y(j) => self.in_y[j],
        }
    }

    fn insert(&mut self, v: Vertex) {
        match v {
            Vertex::X(i) => self.in_x[i] = true,
            Vertex::Y(j) => self.in_y[j] = true,
        }
    }

    fn spanning(&self) -> bool {
        self.in_x.iter().chain(&self.in_y).all(|&b| b)
    }
}

fn pair(a: Vertex, b: Vertex) -> Option<(usize, usize)> {
    match (a, b) {
        (Vertex::X(i), Vertex::Y(j)) | (Vertex::Y(j), Vertex::X(i)) => Some((i, j)),
        _ => None,
    }
}

/// Builds an odd ear decomposition of an elementary graph.
///
/// A perfect matching `M` is fixed and the grown subgraph `H` always has
/// `M` restricted to it as a perfect matching. For the lowest edge `uw` with
/// `u ∈ H`, `w ∉ H`, take a perfect matching `M′` through `uw` and follow the
/// `M Δ M′` cycle from `u` through `w` until it re-enters `H`. Entry happens
/// along an edge of `M′`, so the walked path is an odd ear. Once `H` spans,
/// every remaining edge copy is a single-edge ear.
pub fn odd_ear_decomposition(g: &Bigraph) -> Result<EarDecomposition> {
    if !super::is_elementary(g)? {
        return Err(precondition("graph is not elementary"));
    }
    let m = maximum_matching(g);
    let mate_x: Vec<usize> = m.mate_x.iter().map(|v| v.expect("perfect matching")).collect();
    let mate_y: Vec<usize> = m.mate_y.iter().map(|v| v.expect("perfect matching")).collect();
    let base = (0, mate_x[0]);
    let mut h = Grow { in_x: vec![false; g.nx()], in_y: vec![false; g.ny()], used: vec![vec![0; g.ny()]; g.nx()] };
    h.in_x[0] = true;
    h.in_y[base.1] = true;
    h.used[0][base.1] = 1;
    let mut ears = Vec::new();

    while !h.spanning() {
        let (i, j) = g
            .edges()
            .map(|(i, j, _)| (i, j))
            .find(|&(i, j)| h.in_x[i] != h.in_y[j])
            .ok_or_else(|| Error::Internal("no edge leaves the grown subgraph".into()))?;
        let (u, w) = if h.in_x[i] { (Vertex::X(i), Vertex::Y(j)) } else { (Vertex::Y(j), Vertex::X(i)) };
        // M′: a perfect matching of G - x_i - y_j plus the edge itself.
        let rest = g.delete_vertices(&[i], &[j]);
        let rm = maximum_matching(&rest);
        let mut other_x = vec![usize::MAX; g.nx()];
        let mut other_y = vec![usize::MAX; g.ny()];
        other_x[i] = j;
        other_y[j] = i;
        for (a, mate) in rm.mate_x.iter().enumerate() {
            let b = mate.ok_or_else(|| Error::Internal("G - x - y lacks a perfect matching".into()))?;
            let (xa, yb) = (if a >= i { a + 1 } else { a }, if b >= j { b + 1 } else { b });
            other_x[xa] = yb;
            other_y[yb] = xa;
        }
        let mut path = vec![u, w];
        let mut cur = w;
        let mut use_m = true;
        loop {
            let next = match (cur, use_m) {
                (Vertex::X(a), true) => Vertex::Y(mate_x[a]),
                (Vertex::Y(b), true) => Vertex::X(mate_y[b]),
                (Vertex::X(a), false) => Vertex::Y(other_x[a]),
                (Vertex::Y(b), false) => Vertex::X(other_y[b]),
            };
            path.push(next);
            if h.contains(next) {
                if use_m {
                    return Err(Error::Internal("alternating walk re-entered along M".into()));
                }
                break;
            }
            if path.len() > g.nx() + g.ny() + 1 {
                return Err(Error::Internal("alternating walk did not close".into()));
            }
            cur = next;
            use_m = !use_m;
        }
        for win in path.windows(2) {
            let (a, b) = pair(win[0], win[1]).expect("bipartite walk");
            h.used[a][b] += 1;
        }
        for &v in &path {
            h.insert(v);
        }
        ears.push(path);
    }

    for (i, j, mult) in g.edges() {
        for _ in h.used[i][j]..mult {
            ears.push(vec![Vertex::X(i), Vertex::Y(j)]);
        }
    }
    Ok(EarDecomposition { base, ears })
}

/// Checks that `d` rebuilds `g` exactly with odd ears.
pub fn validate_ear_decomposition(g: &Bigraph, d: &EarDecomposition) -> EarValidation {
    let mut reasons = Vec::new();
    let mut h = Grow { in_x: vec![false; g.nx()], in_y: vec![false; g.ny()], used: vec![vec![0; g.ny()]; g.nx()] };
    let (bx, by) = d.base;
    if bx >= g.nx() || by >= g.ny() || g.mult(bx, by) == 0 {
        reasons.push(format!("base ({bx}, {by}) is not an edge"));
        return EarValidation { valid: false, reasons };
    }
    h.in_x[bx] = true;
    h.in_y[by] = true;
    h.used[bx][by] = 1;

    for (e, ear) in d.ears.iter().enumerate() {
        if ear.len() < 2 {
            reasons.push(format!("ear {e} has fewer than two vertices"));
            continue;
        }
        let in_range = ear.iter().all(|&v| match v {
            Vertex::X(i) => i < g.nx(),
            Vertex::Y(j) => j < g.ny(),
        });
        if !in_range {
            reasons.push(format!("ear {e} has a vertex out of range"));
            continue;
        }
        if (ear.len() - 1) % 2 == 0 {
            reasons.push(format!("ear {e} has even length {}", ear.len() - 1));
        }
        let (first, last) = (ear[0], ear[ear.len() - 1]);
        if !h.contains(first) || !h.contains(last) {
            reasons.push(format!("ear {e} has an endpoint outside the current subgraph"));
        }
        let interior = &ear[1..ear.len() - 1];
        for (p, &v) in interior.iter().enumerate() {
            if h.contains(v) || interior[..p].contains(&v) {
                reasons.push(format!("ear {e} reuses interior vertex {v:?}"));
            }
        }
        if ear.len() > 2 && first == last {
            reasons.push(format!("ear {e} is closed"));
        }
        for win in ear.windows(2) {
            match pair(win[0], win[1]) {
                Some((i, j)) => {
                    h.used[i][j] += 1;
                    if h.used[i][j] > g.mult(i, j) {
                        reasons.push(format!("ear {e} uses ({i}, {j}) more often than its multiplicity"));
                    }
                }
                None => reasons.push(format!("ear {e} joins two vertices of the same part")),
            }
        }
        for &v in ear {
            h.insert(v);
        }
    }
    if !h.spanning() {
        reasons.push("decomposition does not span the graph".into());
    }
    for (i, j, mult) in g.edges() {
        if h.used[i][j] < mult {
            reasons.push(format!("edge ({i}, {j}) covered {} of {mult} times", h.used[i][j]));
        }
    }
    EarValidation { valid: reasons.is_empty(), reasons }
}
