//! Exhaustive enumeration of small multiplicity matrices, bound
//! verification over whole classes, and extremal-structure checks.
//!
//! The space for each `(nx, ny)` is split by the first row; partitions are
//! independent and their results are merged in partition order, so reports
//! do not depend on the number of workers.

use std::cmp::Ordering;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::bounds::{self, Facts, THEOREM_IDS};
use crate::error::{param_err, Error, Result};
use crate::graph::Bigraph;
use crate::matching::{max_matching_size, phi};
use crate::structure::{self, subsets};

/// Largest `ny` for which canonical forms are computed (`ny!` column
/// permutations per graph).
pub const CANON_MAX_NY: usize = 6;

/// Hypothesis bundle describing the graphs to enumerate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct ClassConstraint {
    pub nx_min: usize,
    pub nx_max: usize,
    pub ny_min: usize,
    pub ny_max: usize,
    pub max_mult: u32,
    pub hall: bool,
    pub x_surplus: bool,
    pub leafless: bool,
    pub elementary: bool,
    /// Minimum degree of an X-vertex.
    pub min_deg_x: u64,
    /// Minimum degree of a Y-vertex.
    pub min_deg_y: u64,
    /// Minimum number of distinct neighbours of an X-vertex.
    pub min_nbrs_x: usize,
    /// Minimum number of distinct neighbours of a Y-vertex.
    pub min_nbrs_y: usize,
    /// Exact value of `b = m - 2|Y|`.
    pub excess: Option<i64>,
}

impl Default for ClassConstraint {
    fn default() -> Self {
        Self {
            nx_min: 1,
            nx_max: 3,
            ny_min: 1,
            ny_max: 4,
            max_mult: 3,
            hall: false,
            x_surplus: false,
            leafless: false,
            elementary: false,
            min_deg_x: 0,
            min_deg_y: 0,
            min_nbrs_x: 0,
            min_nbrs_y: 0,
            excess: None,
        }
    }
}

impl ClassConstraint {
    /// Exactly `nx × ny` matrices with entries at most `max_mult`.
    pub fn sized(nx: usize, ny: usize, max_mult: u32) -> Self {
        Self { nx_min: nx, nx_max: nx, ny_min: ny, ny_max: ny, max_mult, ..Self::default() }
    }

    /// All sizes up to `nx_max × ny_max`.
    pub fn up_to(nx_max: usize, ny_max: usize, max_mult: u32) -> Self {
        Self { nx_max, ny_max, max_mult, ..Self::default() }
    }

    fn validate(&self) -> Result<()> {
        if self.nx_min == 0 || self.ny_min == 0 || self.nx_min > self.nx_max || self.ny_min > self.ny_max {
            return Err(param_err("side ranges must be nonempty and start at 1 or more"));
        }
        if self.max_mult == 0 || self.max_mult > 255 {
            return Err(param_err("maximum multiplicity must lie in 1..=255"));
        }
        if self.nx_max > crate::MAX_SIDE || self.ny_max > crate::MAX_SIDE {
            return Err(param_err("sides too large"));
        }
        Ok(())
    }

    fn row_nbrs(&self) -> usize {
        self.min_nbrs_x.max(if self.leafless { 2 } else { 0 })
    }

    fn col_nbrs(&self) -> usize {
        self.min_nbrs_y.max(if self.leafless { 2 } else { 0 })
    }

    /// The whole-graph predicates not already enforced row by row.
    pub fn accepts(&self, g: &Bigraph) -> bool {
        let p = g.params();
        if p.n < self.nx_min || p.n > self.nx_max || p.ny < self.ny_min || p.ny > self.ny_max {
            return false;
        }
        if g.rows().iter().flatten().any(|&m| m > self.max_mult) {
            return false;
        }
        if p.k < self.min_deg_x || p.r < self.row_nbrs() || p.delta_y < self.min_deg_y || p.r_y < self.col_nbrs() {
            return false;
        }
        if self.excess.is_some_and(|b| b != p.b) {
            return false;
        }
        let needs_hall = self.hall || self.x_surplus || self.elementary;
        if needs_hall && max_matching_size(g) < g.nx() {
            return false;
        }
        if self.x_surplus && g.nx() >= 2 {
            let surplus = if g.nx() <= subsets::ENUM_MAX_NX {
                subsets::is_x_surplus_by_enumeration(g)
            } else {
                structure::is_x_surplus(g).is_ok_and(|(s, _)| s)
            };
            if !surplus {
                return false;
            }
        }
        if self.elementary && (g.nx() != g.ny() || !structure::is_elementary(g).unwrap_or(false)) {
            return false;
        }
        true
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchOptions {
    /// Keep one graph per isomorphism class (only when `ny <= 6`).
    pub dedup: bool,
    /// Upper limit on the estimated number of candidate matrices.
    pub budget: u128,
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self { dedup: true, budget: 50_000_000, jobs: None }
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    fn go(k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == cur.len() {
            out.push(cur.clone());
            return;
        }
        for i in k..cur.len() {
            cur.swap(k, i);
            go(k + 1, cur, out);
            cur.swap(k, i);
        }
    }
    go(0, &mut cur, &mut out);
    out.sort();
    out
}

/// The lexicographically least matrix (rows compared lexicographically,
/// then the row sequence) over all row and column permutations.
pub fn canonical(g: &Bigraph) -> Result<Bigraph> {
    if g.ny() > CANON_MAX_NY {
        return Err(Error::TooLarge(format!("canonical form needs ny <= {CANON_MAX_NY}")));
    }
    let rows = g.rows();
    let best = permutations(g.ny())
        .iter()
        .map(|perm| {
            let mut m: Vec<Vec<u32>> = rows.iter().map(|r| perm.iter().map(|&j| r[j]).collect()).collect();
            m.sort();
            m
        })
        .min()
        .expect("at least one permutation");
    Bigraph::from_rows(&best)
}

fn pack(row: &[u32]) -> u64 {
    row.iter().fold(0, |acc, &m| (acc << 8) | u64::from(m))
}

fn pack_perm(row: &[u32], perm: &[usize]) -> u64 {
    perm.iter().fold(0, |acc, &j| (acc << 8) | u64::from(row[j]))
}

/// One `(nx, ny)` slice of the space.
struct Layout<'a> {
    c: &'a ClassConstraint,
    nx: usize,
    ny: usize,
    rows: Vec<Vec<u32>>,
    dedup: bool,
    perms: Vec<Vec<usize>>,
}

impl<'a> Layout<'a> {
    fn new(c: &'a ClassConstraint, nx: usize, ny: usize, dedup: bool) -> Self {
        let base = c.max_mult + 1;
        let total = (base as u64).pow(ny as u32);
        let mut rows = Vec::new();
        for code in 0..total {
            let mut row = vec![0u32; ny];
            let mut v = code;
            for j in (0..ny).rev() {
                row[j] = (v % base as u64) as u32;
                v /= base as u64;
            }
            let deg: u64 = row.iter().map(|&m| u64::from(m)).sum();
            let nbrs = row.iter().filter(|&&m| m > 0).count();
            if deg >= c.min_deg_x && nbrs >= c.row_nbrs() {
                rows.push(row);
            }
        }
        let dedup = dedup && ny <= CANON_MAX_NY;
        let perms = if dedup { permutations(ny).into_iter().skip(1).collect() } else { Vec::new() };
        Self { c, nx, ny, rows, dedup, perms }
    }

    fn estimate(&self) -> u128 {
        let r = self.rows.len() as u128;
        if self.dedup {
            // C(r + nx - 1, nx)
            (0..self.nx as u128).fold(1u128, |acc, i| acc.saturating_mul(r + i) / (i + 1))
        } else {
            r.saturating_pow(self.nx as u32)
        }
    }

    fn is_canonical(&self, chosen: &[usize]) -> bool {
        let mut keys = vec![0u64; self.nx];
        let own: Vec<u64> = chosen.iter().map(|&i| pack(&self.rows[i])).collect();
        for perm in &self.perms {
            for (slot, &i) in keys.iter_mut().zip(chosen) {
                *slot = pack_perm(&self.rows[i], perm);
            }
            keys.sort_unstable();
            if keys.as_slice().cmp(own.as_slice()) == Ordering::Less {
                return false;
            }
        }
        true
    }

    fn run<A>(
        &self,
        first: usize,
        acc: &mut A,
        visit: &(impl Fn(&mut A, &Bigraph) -> Result<()> + ?Sized),
    ) -> Result<()> {
        let mut chosen = vec![first];
        let mut deg = vec![0u64; self.ny];
        let mut nbrs = vec![0usize; self.ny];
        self.push(first, &mut deg, &mut nbrs);
        self.dfs(&mut chosen, &mut deg, &mut nbrs, acc, visit)
    }

    fn push(&self, i: usize, deg: &mut [u64], nbrs: &mut [usize]) {
        for (j, &m) in self.rows[i].iter().enumerate() {
            deg[j] += u64::from(m);
            nbrs[j] += usize::from(m > 0);
        }
    }

    fn pop(&self, i: usize, deg: &mut [u64], nbrs: &mut [usize]) {
        for (j, &m) in self.rows[i].iter().enumerate() {
            deg[j] -= u64::from(m);
            nbrs[j] -= usize::from(m > 0);
        }
    }

    fn dfs<A>(
        &self,
        chosen: &mut Vec<usize>,
        deg: &mut [u64],
        nbrs: &mut [usize],
        acc: &mut A,
        visit: &(impl Fn(&mut A, &Bigraph) -> Result<()> + ?Sized),
    ) -> Result<()> {
        let left = (self.nx - chosen.len()) as u64;
        let reachable = (0..self.ny).all(|j| {
            deg[j] + left * u64::from(self.c.max_mult) >= self.c.min_deg_y
                && nbrs[j] + left as usize >= self.c.col_nbrs()
        });
        if !reachable {
            return Ok(());
        }
        if left == 0 {
            if self.dedup && !self.is_canonical(chosen) {
                return Ok(());
            }
            let rows: Vec<&[u32]> = chosen.iter().map(|&i| self.rows[i].as_slice()).collect();
            let g = Bigraph::from_rows(&rows)?;
            if self.c.accepts(&g) {
                visit(acc, &g)?;
            }
            return Ok(());
        }
        let start = if self.dedup { *chosen.last().expect("first row chosen") } else { 0 };
        for i in start..self.rows.len() {
            chosen.push(i);
            self.push(i, deg, nbrs);
            self.dfs(chosen, deg, nbrs, acc, visit)?;
            self.pop(i, deg, nbrs);
            chosen.pop();
        }
        Ok(())
    }
}

fn layouts<'a>(c: &'a ClassConstraint, opts: &SearchOptions) -> Result<Vec<Layout<'a>>> {
    c.validate()?;
    let mut out = Vec::new();
    let mut estimate = 0u128;
    for nx in c.nx_min..=c.nx_max {
        for ny in c.ny_min..=c.ny_max {
            let raw = u128::from(c.max_mult + 1).saturating_pow(ny as u32);
            if raw > opts.budget {
                return Err(Error::Budget { estimate: raw, budget: opts.budget });
            }
            let layout = Layout::new(c, nx, ny, opts.dedup);
            estimate = estimate.saturating_add(layout.estimate());
            if estimate > opts.budget {
                return Err(Error::Budget { estimate, budget: opts.budget });
            }
            out.push(layout);
        }
    }
    Ok(out)
}

#[cfg(feature = "parallel")]
fn run_partitions<T: Send>(
    parts: &[(usize, usize)],
    jobs: Option<usize>,
    work: impl Fn(&(usize, usize)) -> Result<T> + Sync + Send,
) -> Result<Vec<T>> {
    use rayon::prelude::*;
    let go = || parts.par_iter().map(&work).collect::<Result<Vec<T>>>();
    match jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::Internal(format!("thread pool: {e}")))?
            .install(go),
        None => go(),
    }
}

#[cfg(not(feature = "parallel"))]
fn run_partitions<T: Send>(
    parts: &[(usize, usize)],
    _jobs: Option<usize>,
    work: impl Fn(&(usize, usize)) -> Result<T> + Sync + Send,
) -> Result<Vec<T>> {
    parts.iter().map(work).collect()
}

/// Runs `visit` over every graph of the class. Each partition (one size and
/// first row) gets a fresh accumulator from `init`; the accumulators are
/// returned in a fixed partition order.
pub fn fold_class<A, I, F>(c: &ClassConstraint, opts: &SearchOptions, init: I, visit: F) -> Result<Vec<A>>
where
    A: Send,
    I: Fn() -> A + Sync + Send,
    F: Fn(&mut A, &Bigraph) -> Result<()> + Sync + Send,
{
    let layouts = layouts(c, opts)?;
    let parts: Vec<(usize, usize)> = layouts
        .iter()
        .enumerate()
        .flat_map(|(l, layout)| (0..layout.rows.len()).map(move |first| (l, first)))
        .collect();
    run_partitions(&parts, opts.jobs, |&(l, first)| {
        let mut acc = init();
        layouts[l].run(first, &mut acc, &visit)?;
        Ok(acc)
    })
}

/// Every graph of the class, in enumeration order.
pub fn enumerate_class(c: &ClassConstraint, opts: &SearchOptions) -> Result<Vec<Bigraph>> {
    let parts = fold_class(c, opts, Vec::new, |acc: &mut Vec<Bigraph>, g| {
        acc.push(g.clone());
        Ok(())
    })?;
    Ok(parts.into_iter().flatten().collect())
}

/// Whether isomorphic copies were collapsed for every size in the class.
pub fn dedup_effective(c: &ClassConstraint, opts: &SearchOptions) -> bool {
    opts.dedup && c.ny_max <= CANON_MAX_NY
}

fn canonical_or_self(g: &Bigraph) -> Bigraph {
    canonical(g).unwrap_or_else(|_| g.clone())
}

fn sort_graphs(gs: &mut Vec<Bigraph>) {
    gs.sort_by_key(|g| (g.nx(), g.ny(), g.rows()));
    gs.dedup();
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub graph: Bigraph,
    #[serde(with = "crate::num_str::biguint")]
    pub phi: BigUint,
    pub bound: String,
}

/// Outcome of checking extremal graphs against a structural
/// characterization.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct StructureTally {
    pub characterization: String,
    pub passed: u64,
    pub failed: u64,
    /// Extremal graphs outside the characterization's hypotheses.
    pub not_covered: u64,
    pub failures: Vec<Bigraph>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub theorem: String,
    pub class: ClassConstraint,
    pub dedup: bool,
    /// Graphs of the class visited.
    pub instances_checked: u64,
    /// Graphs meeting the theorem's hypotheses.
    pub applicable: u64,
    pub violations: Vec<Violation>,
    /// Applicable graphs with `Φ` equal to the bound.
    pub extremal_count: u64,
    /// Distinct extremal graphs, canonical when `ny <= 6`.
    pub extremal: Vec<Bigraph>,
    /// Smallest `Φ - bound` seen, as a decimal or `p/q` string.
    pub min_gap: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub structure: Option<StructureTally>,
    #[serde(skip)]
    pub runtime: Duration,
}

#[derive(Default)]
struct Partial {
    checked: u64,
    per: Vec<PerTheorem>,
}

#[derive(Default, Clone)]
struct PerTheorem {
    applicable: u64,
    violations: Vec<Violation>,
    extremal_count: u64,
    extremal: Vec<Bigraph>,
    min_gap: Option<num_rational::BigRational>,
}

/// The characterization checked for extremal graphs of each theorem.
fn characterization_for(id: &str) -> Option<&'static str> {
    match id {
        "1.1" => Some("2.6"),
        "1.2" => Some("5.2"),
        _ => None,
    }
}

/// Verifies several bounds in one pass over the class.
pub fn verify_theorems(ids: &[&str], c: &ClassConstraint, opts: &SearchOptions) -> Result<Vec<VerifyReport>> {
    for id in ids {
        if !THEOREM_IDS.contains(id) {
            return Err(param_err(format!("unknown theorem id `{id}`")));
        }
    }
    let start = Instant::now();
    let n = ids.len();
    let parts = fold_class(
        c,
        opts,
        || Partial { checked: 0, per: vec![PerTheorem::default(); n] },
        |acc, g| {
            acc.checked += 1;
            let facts = Facts::of(g)?;
            let entries = bounds::evaluate_entries(g, &facts, Some(ids));
            if !entries.iter().any(|e| e.applicable) {
                return Ok(());
            }
            let count = phi(g)?.count;
            for e in entries.iter().filter(|e| e.applicable) {
                let slot = ids.iter().position(|id| *id == e.theorem).expect("requested id");
                let per = &mut acc.per[slot];
                per.applicable += 1;
                let gap = e.gap(&count).expect("applicable entries carry a bound");
                if gap.is_negative() {
                    per.violations.push(Violation {
                        graph: g.clone(),
                        phi: count.clone(),
                        bound: e.bound.as_ref().expect("bound").to_string(),
                    });
                } else if num_traits::Zero::is_zero(&gap) {
                    per.extremal_count += 1;
                    per.extremal.push(canonical_or_self(g));
                }
                if per.min_gap.as_ref().is_none_or(|m| gap < *m) {
                    per.min_gap = Some(gap);
                }
            }
            Ok(())
        },
    )?;
    let checked = parts.iter().map(|p| p.checked).sum();
    let dedup = dedup_effective(c, opts);
    let mut reports = Vec::with_capacity(n);
    for (slot, id) in ids.iter().enumerate() {
        let mut merged = PerTheorem::default();
        for p in &parts {
            let per = &p.per[slot];
            merged.applicable += per.applicable;
            merged.violations.extend(per.violations.iter().cloned());
            merged.extremal_count += per.extremal_count;
            merged.extremal.extend(per.extremal.iter().cloned());
            if let Some(g) = &per.min_gap {
                if merged.min_gap.as_ref().is_none_or(|m| g < m) {
                    merged.min_gap = Some(g.clone());
                }
            }
        }
        sort_graphs(&mut merged.extremal);
        let structure = characterization_for(id).map(|which| tally(which, &merged.extremal));
        reports.push(VerifyReport {
            theorem: id.to_string(),
            class: c.clone(),
            dedup,
            instances_checked: checked,
            applicable: merged.applicable,
            violations: merged.violations,
            extremal_count: merged.extremal_count,
            extremal: merged.extremal,
            min_gap: merged.min_gap.as_ref().map(crate::num_str::rational_to_string),
            structure,
            runtime: start.elapsed(),
        });
    }
    Ok(reports)
}

fn tally(which: &str, extremal: &[Bigraph]) -> StructureTally {
    let mut t = StructureTally { characterization: which.to_string(), ..StructureTally::default() };
    for g in extremal {
        match check_extremal_structure(g, which) {
            Ok(true) => t.passed += 1,
            Ok(false) => {
                t.failed += 1;
                t.failures.push(g.clone());
            }
            Err(_) => t.not_covered += 1,
        }
    }
    t
}

/// Single-theorem form of [`verify_theorems`].
pub fn verify_theorem(id: &str, c: &ClassConstraint, opts: &SearchOptions) -> Result<VerifyReport> {
    Ok(verify_theorems(&[id], c, opts)?.remove(0))
}

/// Markdown summary with one row per report.
pub fn verify_markdown(reports: &[VerifyReport]) -> String {
    let mut s = String::from(
        "| theorem | checked | applicable | violations | extremal | min gap | structure |\n|---|---|---|---|---|---|---|\n",
    );
    for r in reports {
        let structure = r.structure.as_ref().map_or("-".to_string(), |t| {
            format!("{}: {} pass, {} fail, {} not covered", t.characterization, t.passed, t.failed, t.not_covered)
        });
        s.push_str(&format!(
            "| {} | {} | {} | {} | {} ({} classes) | {} | {} |\n",
            r.theorem,
            r.instances_checked,
            r.applicable,
            r.violations.len(),
            r.extremal_count,
            r.extremal.len(),
            r.min_gap.as_deref().unwrap_or("-"),
            structure
        ));
    }
    s
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinPhiReport {
    pub class: ClassConstraint,
    pub dedup: bool,
    pub instances: u64,
    /// `None` when the class is empty.
    #[serde(serialize_with = "crate::num_str::opt_biguint")]
    pub min_phi: Option<BigUint>,
    /// Every graph attaining the minimum, canonical when `ny <= 6`.
    pub witnesses: Vec<Bigraph>,
    #[serde(skip)]
    pub runtime: Duration,
}

/// Exact minimum of `Φ` over the class together with all minimizers.
pub fn find_min_phi(c: &ClassConstraint, opts: &SearchOptions) -> Result<MinPhiReport> {
    let start = Instant::now();
    type Acc = (u64, Option<BigUint>, Vec<Bigraph>);
    let parts = fold_class(
        c,
        opts,
        || (0, None, Vec::new()),
        |acc: &mut Acc, g| {
            acc.0 += 1;
            let count = phi(g)?.count;
            match acc.1.as_ref().map(|m| count.cmp(m)) {
                Some(Ordering::Greater) => {}
                Some(Ordering::Equal) => acc.2.push(canonical_or_self(g)),
                _ => {
                    acc.1 = Some(count);
                    acc.2 = vec![canonical_or_self(g)];
                }
            }
            Ok(())
        },
    )?;
    let instances = parts.iter().map(|p| p.0).sum();
    let min_phi = parts.iter().filter_map(|p| p.1.clone()).min();
    let mut witnesses: Vec<Bigraph> = parts.into_iter().filter(|p| p.1 == min_phi).flat_map(|p| p.2).collect();
    sort_graphs(&mut witnesses);
    Ok(MinPhiReport {
        class: c.clone(),
        dedup: dedup_effective(c, opts),
        instances,
        min_phi,
        witnesses,
        runtime: start.elapsed(),
    })
}

fn inapplicable(msg: &str) -> Error {
    Error::Inapplicable(msg.to_string())
}

/// Multiedges of `g` all share one Y-endpoint (vacuous when there are
/// none).
fn multiedges_share_y(g: &Bigraph) -> bool {
    let ys: Vec<usize> = g.edges().filter(|&(_, _, m)| m >= 2).map(|(_, j, _)| j).collect();
    ys.windows(2).all(|w| w[0] == w[1])
}

fn is_complete(g: &Bigraph) -> bool {
    g.edges().count() == g.nx() * g.ny()
}

/// Evaluates the equality characterization `which` ("2.6" or "5.2") on a
/// graph attaining the corresponding bound. Graphs outside the
/// characterization's hypotheses, or not attaining equality, give
/// [`Error::Inapplicable`].
pub fn check_extremal_structure(g: &Bigraph, which: &str) -> Result<bool> {
    let p = g.params();
    let hall = max_matching_size(g) == g.nx();
    match which {
        "2.6" | "1.1" => {
            if !hall || p.n < 2 || p.r < 2 || p.r_y == 0 {
                return Err(inapplicable("needs Hall's condition, |X| > 1, r > 1 and no isolated vertices"));
            }
            let bound = bounds::bound_main(p.n as u64, p.k, p.r as u64)?;
            if num_bigint::BigInt::from(phi(g)?.count) != bound {
                return Err(inapplicable("graph does not attain the bound"));
            }
            if p.r >= p.n {
                let (surplus, _) = structure::is_x_surplus(g)?;
                Ok(surplus && multiedges_share_y(g) && p.ny == p.r && is_complete(g))
            } else {
                if p.ny != p.n || structure::is_x_surplus(g)?.0 {
                    return Ok(false);
                }
                if g.nx() > subsets::ENUM_MAX_NX {
                    return Err(Error::TooLarge("tight-set enumeration needs a smaller X".into()));
                }
                let family = subsets::tight_family(g);
                let smallest = family.iter().map(|s| s.count_ones()).min().expect("not X-surplus");
                if smallest as usize != p.r {
                    return Ok(false);
                }
                for &s in family.iter().filter(|s| s.count_ones() == smallest) {
                    let xs: Vec<usize> = crate::graph::bits(s).collect();
                    let ys: Vec<usize> = crate::graph::bits(g.neighborhood_mask(s)).collect();
                    let block = g.select(&xs, &ys);
                    let rest = g.delete_vertices(&xs, &ys);
                    let unique = phi(&rest)?;
                    if !(is_complete(&block) && multiedges_share_y(&block))
                        || unique.size != rest.nx()
                        || unique.count != BigUint::from(1u32)
                    {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
        }
        "5.2" | "1.2" => {
            if !hall || p.n < 2 || p.delta_y < 1 || !(p.t > 0 || p.delta_y >= 2) || p.k < 2 {
                return Err(inapplicable(
                    "needs Hall's condition, |X| >= 2, deltaY >= 1 and (|Y| > |X| or deltaY >= 2)",
                ));
            }
            let bound = bounds::bound_y2(p.n as u64, p.k)?;
            if num_bigint::BigInt::from(phi(g)?.count) != bound {
                return Err(inapplicable("graph does not attain the bound"));
            }
            if p.n == 2 || p.k == 2 {
                let (f, _) = crate::constructions::gen_f(p.k)?;
                let is_f = g.nx() == 2 && g.ny() == 2 && canonical(g)? == canonical(&f)?;
                let even_cycle = g.is_simple()
                    && p.n == p.ny
                    && g.is_connected()
                    && (0..g.nx()).all(|i| g.degree_x(i) == 2)
                    && (0..g.ny()).all(|j| g.degree_y(j) == 2);
                Ok(is_f || even_cycle)
            } else if p.k == 3 {
                let (g6, _) = crate::constructions::gen_g6();
                Ok(g.nx() == 3 && g.ny() == 3 && canonical(g)? == canonical(&g6)?)
            } else {
                Err(inapplicable("no uniqueness claim for |X| >= 3 and k >= 4"))
            }
        }
        other => Err(inapplicable(&format!("no characterization recorded for `{other}`"))),
    }
}
