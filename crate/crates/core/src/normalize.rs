//! Φ-non-increasing transforms: reduction of `𝒢_{n,k,r}` members to the
//! one-heavy-edge profile, and merging of Y-vertices.
//!
//! `𝒢_{n,k,r}` is the class of graphs with `|X| = n` satisfying Hall's
//! condition in which every X-vertex has degree at least `k` and at least
//! `r` distinct neighbours.

use serde::{Deserialize, Serialize};

use crate::error::{param_err, precondition, Error, Result};
use crate::graph::{bits, Bigraph};
use crate::matching::{maximum_matching, phi};
use crate::structure::{hall_check, tight_sets};

/// All copies of `x from_y` but `from_y`'s remainder moved onto `x to_y`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShiftStep {
    pub x: usize,
    pub from_y: usize,
    pub to_y: usize,
    pub copies: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "lowercase")]
pub enum Step {
    Shift(ShiftStep),
    /// Deletes `copies` copies of `x y`.
    Trim {
        x: usize,
        y: usize,
        copies: u32,
    },
    /// Overwrites row `x`. Used for the single-vertex base case and for the
    /// vertices outside a tight set.
    Replace {
        x: usize,
        row: Vec<u32>,
    },
}

impl Step {
    fn remap(self, xs: &[usize], ys: &[usize], ny: usize) -> Step {
        match self {
            Step::Shift(s) => {
                Step::Shift(ShiftStep { x: xs[s.x], from_y: ys[s.from_y], to_y: ys[s.to_y], copies: s.copies })
            }
            Step::Trim { x, y, copies } => Step::Trim { x: xs[x], y: ys[y], copies },
            Step::Replace { x, row } => {
                let mut full = vec![0; ny];
                for (j, m) in row.into_iter().enumerate() {
                    full[ys[j]] = m;
                }
                Step::Replace { x: xs[x], row: full }
            }
        }
    }

    /// Re-applies this step to `g`.
    pub fn apply(&self, g: &mut Bigraph) -> Result<()> {
        match self {
            Step::Shift(s) => {
                if s.from_y == s.to_y || s.copies == 0 || g.mult(s.x, s.from_y) < s.copies {
                    return Err(param_err(format!("invalid shift {s:?}")));
                }
                g.set_mult(s.x, s.from_y, g.mult(s.x, s.from_y) - s.copies);
                g.add_mult(s.x, s.to_y, s.copies);
            }
            Step::Trim { x, y, copies } => {
                if g.mult(*x, *y) < *copies {
                    return Err(param_err(format!("cannot trim {copies} copies of ({x}, {y})")));
                }
                g.set_mult(*x, *y, g.mult(*x, *y) - copies);
            }
            Step::Replace { x, row } => {
                if row.len() != g.ny() {
                    return Err(param_err("replacement row has the wrong length"));
                }
                for (j, &m) in row.iter().enumerate() {
                    g.set_mult(*x, j, m);
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Normalized {
    pub graph: Bigraph,
    pub k: u64,
    pub r: u64,
    pub steps: Vec<Step>,
}

/// Whether row `i` has exactly `r` distinct neighbours, one with
/// multiplicity `k - r + 1` and the others with multiplicity 1.
pub fn has_target_profile(g: &Bigraph, i: usize, k: u64, r: u64) -> bool {
    let mut ms: Vec<u64> = g.row(i).iter().filter(|&&m| m > 0).map(|&m| u64::from(m)).collect();
    ms.sort_unstable();
    ms.len() as u64 == r && ms.last() == Some(&(k - r + 1)) && ms[..ms.len() - 1].iter().all(|&m| m == 1)
}

/// [`normalize_with`] using `k = δ_X` and `r` the least number of distinct
/// neighbours of an X-vertex.
pub fn normalize_lemma22(g: &Bigraph) -> Result<Normalized> {
    let p = g.params();
    normalize_with(g, p.k, p.r as u64)
}

/// Transforms `g ∈ 𝒢_{n,k,r}` into a member of the same class with no more
/// maximum matchings. For `r > 1` every X-vertex ends in the target profile
/// (see [`has_target_profile`]); for `r = 1` only vertices with a single
/// neighbour are trimmed to degree `k`.
pub fn normalize_with(g: &Bigraph, k: u64, r: u64) -> Result<Normalized> {
    if r == 0 || r > k {
        return Err(param_err("need 1 <= r <= k"));
    }
    if !hall_check(g).0 {
        return Err(precondition("Hall's condition fails"));
    }
    for i in 0..g.nx() {
        if g.degree_x(i) < k || u64::from(g.nbr_mask_x(i).count_ones()) < r {
            return Err(precondition(format!("x{i} has degree below {k} or fewer than {r} neighbours")));
        }
    }
    let mut graph = g.clone();
    let mut steps = Vec::new();
    if r == 1 {
        for i in 0..graph.nx() {
            if graph.nbr_mask_x(i).count_ones() == 1 {
                trim_row(&mut graph, i, k, &mut steps);
            }
        }
    } else {
        reduce(&mut graph, k, r, &mut steps)?;
    }
    Ok(Normalized { graph, k, r, steps })
}

/// Lowers the heaviest edges of row `i` until its degree is `k`.
fn trim_row(g: &mut Bigraph, i: usize, k: u64, steps: &mut Vec<Step>) {
    while g.degree_x(i) > k {
        let (y, m) = (0..g.ny()).map(|j| (j, g.mult(i, j))).max_by_key(|&(j, m)| (m, std::cmp::Reverse(j))).unwrap();
        let excess = g.degree_x(i) - k;
        // Never remove the last copy, so the neighbour count is unchanged.
        let copies = (m - 1).min(excess as u32);
        if copies == 0 {
            break;
        }
        g.set_mult(i, y, m - copies);
        steps.push(Step::Trim { x: i, y, copies });
    }
}

fn profile_row(ny: usize, k: u64, r: u64, keep: Option<usize>, heavy: usize, light: &[usize]) -> Vec<u32> {
    let mut row = vec![0; ny];
    if let Some(y) = keep {
        row[y] = 1;
    }
    row[heavy] = (k - r + 1) as u32;
    for &y in light {
        row[y] = 1;
    }
    row
}

fn reduce(g: &mut Bigraph, k: u64, r: u64, steps: &mut Vec<Step>) -> Result<()> {
    if g.nx() == 1 {
        // Φ is the degree; keep the r heaviest neighbours.
        let mut nbrs: Vec<usize> = bits(g.nbr_mask_x(0)).collect();
        nbrs.sort_by_key(|&j| (std::cmp::Reverse(g.mult(0, j)), j));
        nbrs.truncate(r as usize);
        let row = profile_row(g.ny(), k, r, None, nbrs[0], &nbrs[1..]);
        if row != g.row(0) {
            let step = Step::Replace { x: 0, row };
            step.apply(g)?;
            steps.push(step);
        }
        return Ok(());
    }
    loop {
        if let (Some(s), _) = tight_sets(g)? {
            return reduce_tight(g, k, r, &s, steps);
        }
        let Some((x, y, y2)) = shift_candidate(g, r) else { break };
        let sigma = phi(&g.delete_vertices(&[x], &[y]))?.count;
        let sigma2 = phi(&g.delete_vertices(&[x], &[y2]))?.count;
        let (to_y, from_y) = if sigma <= sigma2 { (y, y2) } else { (y2, y) };
        let all = g.mult(x, from_y);
        let copies = if g.nbr_mask_x(x).count_ones() as u64 > r { all } else { all - 1 };
        let step = Step::Shift(ShiftStep { x, from_y, to_y, copies });
        step.apply(g)?;
        steps.push(step);
    }
    for i in 0..g.nx() {
        trim_row(g, i, k, steps);
    }
    Ok(())
}

/// First X-vertex with more than `r` neighbours or with two multiedges,
/// together with two of its neighbours of the same kind (both single or
/// both multiple), lower index first.
fn shift_candidate(g: &Bigraph, r: u64) -> Option<(usize, usize, usize)> {
    for x in 0..g.nx() {
        let nbrs: Vec<usize> = bits(g.nbr_mask_x(x)).collect();
        let heavy: Vec<usize> = nbrs.iter().copied().filter(|&y| g.mult(x, y) >= 2).collect();
        let single: Vec<usize> = nbrs.iter().copied().filter(|&y| g.mult(x, y) == 1).collect();
        if heavy.len() >= 2 {
            return Some((x, heavy[0], heavy[1]));
        }
        if nbrs.len() as u64 > r && single.len() >= 2 {
            return Some((x, single[0], single[1]));
        }
    }
    None
}

/// Tight `s`: normalize the block on `S ∪ N(S)`, then give each vertex
/// outside `S` one copy of its matched edge plus the profile into `N(S)`.
fn reduce_tight(g: &mut Bigraph, k: u64, r: u64, s: &[usize], steps: &mut Vec<Step>) -> Result<()> {
    let ns: Vec<usize> = g.neighborhood(s)?.into_iter().collect();
    let mut block = g.select(s, &ns);
    let mut inner = Vec::new();
    reduce(&mut block, k, r, &mut inner)?;
    for step in inner {
        let step = step.remap(s, &ns, g.ny());
        step.apply(g)?;
        steps.push(step);
    }
    let m = maximum_matching(g);
    for x in (0..g.nx()).filter(|x| !s.contains(x)) {
        let y = m.mate_x[x].ok_or_else(|| Error::Internal("tight reduction lost the X-matching".into()))?;
        let row = profile_row(g.ny(), k, r, Some(y), ns[0], &ns[1..r as usize - 1]);
        if row != g.row(x) {
            let step = Step::Replace { x, row };
            step.apply(g)?;
            steps.push(step);
        }
    }
    Ok(())
}

/// Identifies `y1` and `y2`: the merged column is their sum and sits at the
/// lower index; the higher column is removed.
pub fn merge_y(g: &Bigraph, y1: usize, y2: usize) -> Result<Bigraph> {
    for y in [y1, y2] {
        if y >= g.ny() {
            return Err(Error::YIndex { index: y, ny: g.ny() });
        }
    }
    if y1 == y2 {
        return Err(param_err("cannot merge a vertex with itself"));
    }
    let (lo, hi) = (y1.min(y2), y1.max(y2));
    let mut out = g.clone();
    for i in 0..g.nx() {
        out.add_mult(i, lo, g.mult(i, hi));
    }
    let keep: Vec<usize> = (0..g.ny()).filter(|&j| j != hi).collect();
    let rows: Vec<usize> = (0..g.nx()).collect();
    Ok(out.select(&rows, &keep))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{gen_g7, gen_sharp1, gen_t_plus_1_star};
    use crate::matching::count_max_matchings_oracle;

    fn check(g: &Bigraph) -> Normalized {
        let out = normalize_lemma22(g).unwrap();
        for i in 0..g.nx() {
            assert!(has_target_profile(&out.graph, i, out.k, out.r), "{:?} -> {:?}", g, out.graph);
        }
        assert!(count_max_matchings_oracle(&out.graph).count <= count_max_matchings_oracle(g).count);
        let mut replay = g.clone();
        for s in &out.steps {
            s.apply(&mut replay).unwrap();
        }
        assert_eq!(replay, out.graph);
        out
    }

    #[test]
    fn fixed_point() {
        let (f4, _) = gen_sharp1(2, 4, 2).unwrap();
        let out = check(&f4);
        assert!(out.steps.is_empty());
        assert_eq!(out.graph, f4);
    }

    #[test]
    fn already_in_profile() {
        let g = Bigraph::from_rows(&[[2, 1], [1, 2]]).unwrap();
        let out = check(&g);
        assert_eq!((out.k, out.r), (3, 2));
        assert!(out.steps.is_empty());
    }

    #[test]
    fn surplus_and_tight_cases() {
        check(&Bigraph::from_rows(&[[1, 1, 1, 1], [1, 1, 1, 1], [1, 1, 1, 1]]).unwrap());
        check(&Bigraph::from_rows(&[[2, 2, 1, 0], [0, 1, 2, 2], [1, 0, 1, 3]]).unwrap());
        check(&Bigraph::from_rows(&[[2, 1, 0, 0], [1, 2, 0, 0], [1, 1, 1, 1]]).unwrap());
        check(&Bigraph::from_rows(&[[3, 2, 2]]).unwrap());
    }

    #[test]
    fn r_equal_one() {
        let g = Bigraph::from_rows(&[[5, 0], [1, 3]]).unwrap();
        let out = normalize_lemma22(&g).unwrap();
        assert_eq!(out.graph.rows(), vec![vec![4, 0], vec![1, 3]]);
    }

    #[test]
    fn rejects_outside_class() {
        assert!(normalize_lemma22(&Bigraph::from_rows(&[[1], [1]]).unwrap()).is_err());
        assert!(normalize_with(&Bigraph::from_rows(&[[1, 1]]).unwrap(), 3, 2).is_err());
    }

    #[test]
    fn merging() {
        let (g, _) = gen_t_plus_1_star(2, 1).unwrap();
        let m = merge_y(&g, 2, 1).unwrap();
        assert_eq!(m.rows(), vec![vec![1, 1], vec![0, 1]]);
        let (g7, _) = gen_g7();
        let m = merge_y(&g7, 0, 3).unwrap();
        assert_eq!((m.nx(), m.ny()), (3, 3));
        assert!((0..3).any(|j| m.degree_y(j) >= 4));
        assert!(merge_y(&g7, 1, 1).is_err());
        assert!(merge_y(&g7, 1, 4).is_err());
    }
}
