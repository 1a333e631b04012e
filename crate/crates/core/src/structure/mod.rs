//! Hall's condition, defect, tight sets, surplus and related predicates.
//!
//! Everything here is driven by maximum matchings. The subset enumerations
//! in [`subsets`] compute the same quantities directly and serve as the
//! reference in tests.

mod ears;
pub mod subsets;

pub use ears::{odd_ear_decomposition, validate_ear_decomposition, EarDecomposition, EarValidation, Vertex};

use serde::{Deserialize, Serialize};

use crate::error::{precondition, Result};
use crate::graph::{bits, mask_of, Bigraph, GraphParams};
use crate::matching::{max_matching_size, maximum_matching, Matching};

/// Summary of the hypotheses a graph satisfies.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureReport {
    pub hall: bool,
    pub violator: Option<Vec<usize>>,
    pub defect: usize,
    pub tight_min: Option<Vec<usize>>,
    pub tight_max: Option<Vec<usize>>,
    pub x_surplus: bool,
    /// Only defined when `|X| = |Y|` and a perfect matching exists.
    pub elementary: Option<bool>,
    pub leafless: bool,
    pub params: GraphParams,
}

/// A [`StructureReport`] plus the two diagnostic predicates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnostics {
    #[serde(flatten)]
    pub report: StructureReport,
    pub has_pendant_4cycle: bool,
    /// `None` when `nx` is too large for subset enumeration.
    pub slim_sets: Option<Vec<Vec<usize>>>,
    pub slim_sets_skipped: bool,
}

fn mask_to_vec(mask: u64) -> Vec<usize> {
    bits(mask).collect()
}

/// X-vertices and Y-vertices reachable from `start` by alternating paths
/// (any edge from X, matching edge back from Y).
fn alternating_reach(g: &Bigraph, m: &Matching, start: usize) -> (u64, u64) {
    let mut xs = 1u64 << start;
    let mut ys = 0u64;
    let mut stack = vec![start];
    while let Some(x) = stack.pop() {
        for y in bits(g.nbr_mask_x(x) & !ys) {
            ys |= 1 << y;
            if let Some(x2) = m.mate_y[y] {
                if xs & (1 << x2) == 0 {
                    xs |= 1 << x2;
                    stack.push(x2);
                }
            }
        }
    }
    (xs, ys)
}

/// `(true, None)` when `G` has an X-matching, else `(false, Some(S))` with
/// `|N(S)| < |S|`.
pub fn hall_check(g: &Bigraph) -> (bool, Option<Vec<usize>>) {
    let m = maximum_matching(g);
    match m.mate_x.iter().position(Option::is_none) {
        None => (true, None),
        Some(free) => {
            let (xs, ys) = alternating_reach(g, &m, free);
            debug_assert!(ys.count_ones() < xs.count_ones());
            (false, Some(mask_to_vec(xs)))
        }
    }
}

/// `p = |X| - α′(G)`.
pub fn defect(g: &Bigraph) -> usize {
    g.nx() - max_matching_size(g)
}

/// Whether `|N(S)| > |S|` for every nonempty proper `S ⊂ X`. When the answer
/// is no, the witness is either a Hall violator or a tight set.
///
/// With Hall's condition in force, `S` is tight exactly when some `G - x - y`
/// with `x ∉ S`, `y ∈ N(S)` has no `(X - x)`-matching; the Hall violator of
/// that smaller graph is such an `S`.
pub fn is_x_surplus(g: &Bigraph) -> Result<(bool, Option<Vec<usize>>)> {
    if g.nx() < 2 {
        return Err(precondition("X-surplus test needs at least two X-vertices"));
    }
    if let (false, violator) = hall_check(g) {
        return Ok((false, violator));
    }
    for x in 0..g.nx() {
        for y in 0..g.ny() {
            let h = g.delete_vertices(&[x], &[y]);
            if let (false, Some(s)) = hall_check(&h) {
                let s = s.into_iter().map(|i| if i >= x { i + 1 } else { i }).collect();
                return Ok((false, Some(s)));
            }
        }
    }
    Ok((true, None))
}

/// X-vertex indices in increasing order.
pub type VertexSet = Vec<usize>;

/// Minimum-size and maximum-size nonempty proper tight sets, if any.
///
/// Fix an X-matching `M`. A set is tight exactly when every neighbour of it
/// is matched into it, so tight sets are the sets closed under
/// `x -> M⁻¹(y)` for `y ∈ N(x)` that avoid X-vertices adjacent to unmatched
/// Y-vertices. Closed sets are unions of reachability sets, which gives the
/// smallest one directly. The union of all tight sets is tight; when it is
/// all of `X` (only possible with `|X| = |Y|`) the largest proper one is `X`
/// minus a smallest set closed under the reverse relation.
pub fn tight_sets(g: &Bigraph) -> Result<(Option<VertexSet>, Option<VertexSet>)> {
    if g.nx() < 2 {
        return Err(precondition("tight sets need at least two X-vertices"));
    }
    let m = maximum_matching(g);
    if m.size() < g.nx() {
        return Err(precondition("Hall's condition fails"));
    }
    let nx = g.nx();
    let full = (1u64 << nx) - 1;
    let succ: Vec<u64> =
        (0..nx).map(|x| bits(g.nbr_mask_x(x)).filter_map(|y| m.mate_y[y]).fold(0, |a, x2| a | (1 << x2))).collect();
    let bad: u64 = mask_of((0..nx).filter(|&x| bits(g.nbr_mask_x(x)).any(|y| m.mate_y[y].is_none())));
    let reach = |start: usize, edges: &[u64]| {
        let mut seen = 1u64 << start;
        let mut frontier = seen;
        while frontier != 0 {
            let next = bits(frontier).fold(0, |a, v| a | edges[v]) & !seen;
            seen |= next;
            frontier = next;
        }
        seen
    };
    let good: Vec<u64> = (0..nx).map(|x| reach(x, &succ)).filter(|r| r & bad == 0).collect();
    let smallest = |sets: &mut dyn Iterator<Item = u64>| sets.min_by_key(|s| (s.count_ones(), *s));
    let min = smallest(&mut good.iter().copied().filter(|&s| s != full));
    let union = good.iter().fold(0, |a, s| a | s);
    let max = if union == 0 {
        None
    } else if union != full {
        Some(union)
    } else {
        let mut pred = vec![0u64; nx];
        for (x, &s) in succ.iter().enumerate() {
            for x2 in bits(s) {
                pred[x2] |= 1 << x;
            }
        }
        smallest(&mut (0..nx).map(|x| reach(x, &pred)).filter(|&s| s != full)).map(|s| full & !s)
    };
    Ok((min.map(mask_to_vec), max.map(mask_to_vec)))
}

/// Whether `G - x - y` has a perfect matching for every `x`, `y`.
pub fn is_elementary(g: &Bigraph) -> Result<bool> {
    if g.nx() != g.ny() {
        return Err(precondition("elementary test needs |X| = |Y|"));
    }
    if max_matching_size(g) != g.nx() {
        return Err(precondition("elementary test needs a perfect matching"));
    }
    for x in 0..g.nx() {
        for y in 0..g.ny() {
            let h = g.delete_vertices(&[x], &[y]);
            if max_matching_size(&h) != h.nx() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Every vertex on both sides has at least two distinct neighbours.
pub fn is_leafless(g: &Bigraph) -> bool {
    (0..g.nx()).all(|i| g.nbr_mask_x(i).count_ones() >= 2) && (0..g.ny()).all(|j| g.nbr_mask_y(j).count_ones() >= 2)
}

/// Full classification. `x_surplus` is reported together with Hall's
/// condition: a graph failing Hall is never reported as X-surplus, even
/// when `|X| = 1` makes the subset condition vacuous.
pub fn analyze(g: &Bigraph) -> Result<StructureReport> {
    let (hall, violator) = hall_check(g);
    let defect = defect(g);
    if hall != (defect == 0) {
        return Err(crate::Error::Internal("Hall check disagrees with defect".into()));
    }
    let (x_surplus, (tight_min, tight_max)) = if !hall {
        (false, (None, None))
    } else if g.nx() < 2 {
        (true, (None, None))
    } else {
        let (surplus, _) = is_x_surplus(g)?;
        let tight = tight_sets(g)?;
        if surplus != tight.0.is_none() {
            return Err(crate::Error::Internal("surplus test disagrees with tight sets".into()));
        }
        (surplus, tight)
    };
    let elementary = if g.nx() == g.ny() && hall { Some(is_elementary(g)?) } else { None };
    if elementary == Some(true) && !x_surplus {
        return Err(crate::Error::Internal("elementary graph is not X-surplus".into()));
    }
    Ok(StructureReport {
        hall,
        violator,
        defect,
        tight_min,
        tight_max,
        x_surplus,
        elementary,
        leafless: is_leafless(g),
        params: g.params(),
    })
}

/// A 4-cycle in the underlying graph with three vertices of degree 2 and
/// the fourth a cut vertex.
pub fn has_pendant_4cycle(g: &Bigraph) -> bool {
    let base = g.component_count_without(None);
    for a in 0..g.nx() {
        for b in a + 1..g.nx() {
            let common = g.nbr_mask_x(a) & g.nbr_mask_x(b);
            for c in bits(common) {
                for d in bits(common & !((2u64 << c) - 1)) {
                    let verts = [(true, a), (true, b), (false, c), (false, d)];
                    let deg = |(is_x, v): (bool, usize)| if is_x { g.degree_x(v) } else { g.degree_y(v) };
                    let heavy: Vec<_> = verts.iter().copied().filter(|&v| deg(v) != 2).collect();
                    if let [cut] = heavy[..] {
                        if g.component_count_without(Some(cut)) > base {
                            return true;
                        }
                    }
                }
            }
        }
    }
    false
}

pub fn diagnostics(g: &Bigraph) -> Result<Diagnostics> {
    let report = analyze(g)?;
    let skipped = g.nx() > subsets::ENUM_MAX_NX;
    let slim_sets = (!skipped).then(|| subsets::slim_sets(g).into_iter().map(mask_to_vec).collect());
    Ok(Diagnostics { report, has_pendant_4cycle: has_pendant_4cycle(g), slim_sets, slim_sets_skipped: skipped })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(rows: &[&[u32]]) -> Bigraph {
        Bigraph::from_rows(rows).unwrap()
    }

    #[test]
    fn hall_and_defect() {
        let k23 = g(&[&[1, 1, 1], &[1, 1, 1]]);
        assert_eq!(hall_check(&k23), (true, None));
        let col = g(&[&[1], &[1]]);
        assert_eq!(hall_check(&col), (false, Some(vec![0, 1])));
        assert_eq!(defect(&col), 1);
        assert_eq!(defect(&g(&[&[1], &[1], &[1]])), 2);
    }

    #[test]
    fn surplus_witnesses() {
        let k23 = g(&[&[1, 1, 1], &[1, 1, 1]]);
        assert_eq!(is_x_surplus(&k23).unwrap(), (true, None));
        // x0 has the single neighbour y0.
        let h = g(&[&[4, 0, 0], &[3, 1, 0], &[3, 0, 1]]);
        let (ok, s) = is_x_surplus(&h).unwrap();
        assert!(!ok);
        let s = s.unwrap();
        assert_eq!(h.neighborhood(&s).unwrap().len(), s.len());
        assert!(is_x_surplus(&g(&[&[1, 1]])).is_err());
    }

    #[test]
    fn tight_set_extremes() {
        let k23 = g(&[&[1, 1, 1], &[1, 1, 1]]);
        assert_eq!(tight_sets(&k23).unwrap(), (None, None));
        let h = g(&[&[3, 0, 0], &[2, 1, 0], &[2, 0, 1]]);
        assert_eq!(tight_sets(&h).unwrap(), (Some(vec![0]), Some(vec![0, 2])));
        // Two disjoint 4-cycles: no unique maximal proper tight set; the
        // largest is one of the two components.
        let two = g(&[&[1, 1, 0, 0], &[1, 1, 0, 0], &[0, 0, 1, 1], &[0, 0, 1, 1]]);
        let (min, max) = tight_sets(&two).unwrap();
        assert_eq!(min.unwrap().len(), 2);
        assert_eq!(max.unwrap().len(), 2);
    }

    #[test]
    fn elementary_examples() {
        assert!(is_elementary(&g(&[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]])).unwrap());
        assert!(is_elementary(&g(&[&[0, 1, 1], &[1, 1, 1], &[1, 1, 1]])).unwrap());
        assert!(!is_elementary(&g(&[&[1, 0], &[1, 1]])).unwrap());
        assert!(is_elementary(&g(&[&[1, 1]])).is_err());
    }

    #[test]
    fn pendant_cycles() {
        // Two 4-cycles sharing x1: x0,x1 on y0,y1 and x1,x2 on y2,y3.
        let two = g(&[&[1, 1, 0, 0], &[1, 1, 1, 1], &[0, 0, 1, 1]]);
        assert!(has_pendant_4cycle(&two));
        let c8 = g(&[&[1, 1, 0, 0], &[0, 1, 1, 0], &[0, 0, 1, 1], &[1, 0, 0, 1]]);
        assert!(!has_pendant_4cycle(&c8));
        let d = diagnostics(&c8).unwrap();
        assert_eq!(d.slim_sets, Some(vec![]));
        assert!(d.report.leafless && d.report.x_surplus);
    }

    #[test]
    fn report_on_single_vertex() {
        let r = analyze(&g(&[&[0]])).unwrap();
        assert!(!r.hall && !r.x_surplus);
        assert_eq!(r.elementary, None);
        let r = analyze(&g(&[&[2]])).unwrap();
        assert!(r.hall && r.x_surplus);
        assert_eq!(r.elementary, Some(true));
    }
}
