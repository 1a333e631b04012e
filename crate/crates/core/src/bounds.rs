//! Lower-bound formulas for `Φ(G)` and their dispatch against a concrete
//! graph.
//!
//! The `bound_*` functions are pure arithmetic on parameters.
//! [`applicable_bounds`] recomputes every hypothesis from the graph itself
//! and compares each applicable bound against the exact count. Entries are
//! labelled with theorem numbers so reports can be read next to the text.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{param_err, Result};
use crate::graph::{bits, Bigraph, GraphParams};
use crate::matching::factorial;
use crate::num_str::rational_to_string;
use crate::structure::{self, subsets};

fn big(v: impl Into<BigInt>) -> BigInt {
    v.into()
}

fn fact(n: u64) -> BigInt {
    BigInt::from(factorial(n as usize))
}

/// `(a)_len = a (a-1) ... (a-len+1)`.
fn falling(a: u64, len: u64) -> BigInt {
    (0..len).map(|i| big(a) - big(i)).product()
}

/// Neighbourhood-restricted bound: `r!(k-r+1)` when `n >= r`, otherwise
/// `[r + n(k-r)] ∏_{i=1}^{n-1} (r-i)`.
pub fn bound_main(n: u64, k: u64, r: u64) -> Result<BigInt> {
    if r < 1 || k < r || n < 1 {
        return Err(param_err(format!("need k >= r >= 1 and n >= 1, got n={n}, k={k}, r={r}")));
    }
    let high = fact(r) * big(k - r + 1);
    let low = (big(r) + big(n) * big(k - r)) * (1..n).map(|i| big(r) - big(i)).product::<BigInt>();
    if n == r {
        debug_assert_eq!(high, low);
    }
    Ok(if n >= r { high } else { low })
}

/// `∏_{i=0}^{min(n,k)-1} (k - i)`.
pub fn bound_mhall(n: u64, k: u64) -> Result<BigInt> {
    if n < 1 || k < 1 {
        return Err(param_err("need n, k >= 1"));
    }
    Ok(falling(k, n.min(k)))
}

/// `(k-r+1)(r+p)!/p!` for graphs of defect `p >= 1`.
pub fn bound_defect(k: u64, r: u64, p: u64) -> Result<BigInt> {
    if r < 1 || k < r || p < 1 {
        return Err(param_err(format!("need k >= r >= 1 and p >= 1, got k={k}, r={r}, p={p}")));
    }
    Ok(big(k - r + 1) * falling(r + p, r))
}

pub fn bound_y2(n: u64, k: u64) -> Result<BigInt> {
    if n < 2 || k < 2 {
        return Err(param_err("need n, k >= 2"));
    }
    Ok(if n == 2 || k == 2 {
        big(2 * k - 2)
    } else if k == 3 {
        big(2 * k - 1)
    } else {
        big(2 * k)
    })
}

pub fn bound_4k(n: u64, k: u64) -> Result<BigInt> {
    if n < 2 || k < 2 {
        return Err(param_err("need n, k >= 2"));
    }
    Ok(big((n * (k - 2) + 2).min(4 * k - 4)))
}

/// The largest of the lines that apply for the given `n`, `k`, `t` and
/// minimum Y-degree, taking the `k = 3` line at face value for every `t`.
/// The two `δ_Y >= 2` lines for `k >= 3` are used only with `n >= 3`.
///
/// The `k(t+1)` line is only used with `n >= 3` or `t = 0`: with two
/// X-vertices and a leaf in Y it fails, e.g. `[[0,1,1],[1,0,1]]` has
/// `Φ = 3 < 4`. With `n = 2`, `t >= 1` and `δ_Y = 1` no line applies.
pub fn bound_2kt(n: u64, k: u64, t: u64, delta_y: u64) -> Result<BigInt> {
    if n < 2 || k < 1 || delta_y < 1 {
        return Err(param_err("need n >= 2, k >= 1, deltaY >= 1"));
    }
    if n == 2 && t >= 1 && delta_y < 2 {
        return Err(param_err("with |X| = 2 and t >= 1 every line needs deltaY >= 2"));
    }
    let mut best = if n >= 3 || t == 0 { big(k) * big(t + 1) } else { BigInt::from(0) };
    if delta_y >= 2 {
        let line = if n == 2 {
            Some((big(2 * k) - big(t) - 2) * big(t + 1))
        } else if k == 3 {
            Some(big(2 * k * (t + 1) - 1))
        } else if k >= 4 {
            Some(big(2 * k * (t + 1)))
        } else {
            None
        };
        if let Some(line) = line {
            best = best.max(line);
        }
    }
    Ok(best)
}

/// `2k(t+1)` for `n >= 3`, `t >= 1`, `δ_Y >= 2`, except `2k(t+1) - 1` at
/// `(n, k, t) = (3, 3, 1)`.
pub fn bound_2kt_refined(n: u64, k: u64, t: u64) -> Result<BigInt> {
    if n < 3 || t < 1 || k < 1 {
        return Err(param_err("need n >= 3, t >= 1, k >= 1"));
    }
    let v = big(2 * k * (t + 1));
    Ok(if (n, k, t) == (3, 3, 1) { v - 1 } else { v })
}

/// `k(t+1)` for `n >= 3`, `t >= 1`, `δ_Y >= 1`.
pub fn bound_kt(n: u64, k: u64, t: u64) -> Result<BigInt> {
    if n < 3 || t < 1 || k < 1 {
        return Err(param_err("need n >= 3, t >= 1, k >= 1"));
    }
    Ok(big(k) * big(t + 1))
}

/// `(t+1)(2k-t-2)` for two X-vertices.
pub fn bound_two_x(k: u64, t: u64) -> Result<BigInt> {
    if k < 2 {
        return Err(param_err("need k >= 2"));
    }
    Ok(big(t + 1) * (big(2 * k) - big(t) - 2))
}

/// `[(n-1)t + 2 + b](t+1)`.
pub fn bound_leafmain(n: u64, t: u64, b: i64) -> Result<BigInt> {
    if n < 2 || b < 0 {
        return Err(param_err("need n >= 2, b >= 0"));
    }
    Ok((big(n - 1) * big(t) + 2 + big(b)) * big(t + 1))
}

/// `m - v + 2`.
pub fn bound_surplus(m: u64, v: u64) -> Result<BigInt> {
    if m + 1 < v {
        return Err(param_err("need m >= v - 1"));
    }
    Ok(big(m) - big(v) + 2)
}

/// `r!(k-r+1)(r+t)!/t!`.
pub fn bound_case1(k: u64, r: u64, t: u64) -> Result<BigInt> {
    if r < 1 || k < r {
        return Err(param_err("need k >= r >= 1"));
    }
    Ok(fact(r) * big(k - r + 1) * falling(r + t, r))
}

pub fn bound_t_plus_1(t: u64) -> BigInt {
    big(t) + 1
}

/// The three lines of the simple-graph surplus bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LiuLiu {
    /// `n + 1`, connected graphs.
    Connected,
    /// `m + (n-1)(t-2)`, stated for connected graphs.
    Edges,
    /// `2m - 2|Y|` when `t = 1` and the minimum degree is at least 2.
    TOne,
}

pub fn bound_liu_liu(variant: LiuLiu, n: u64, m: u64, ny: u64, t: u64) -> Result<BigInt> {
    if t < 1 {
        return Err(param_err("need t >= 1"));
    }
    Ok(match variant {
        LiuLiu::Connected => big(n) + 1,
        LiuLiu::Edges => big(m) + big(n) * big(t) - big(n) - 2 * big(t) + 2,
        LiuLiu::TOne => {
            if t != 1 {
                return Err(param_err("third line needs t = 1"));
            }
            2 * big(m) - 2 * big(ny)
        }
    })
}

/// `(r-1)!(r+t-1)!/t! [b + r(t+1) + (r-1)(n-2r+1)(r+t-2)]`.
pub fn bound_m_nrtb(n: u64, r: u64, t: u64, b: u64) -> Result<BigInt> {
    if r < 2 || n < 2 * r {
        return Err(param_err("need r >= 2 and n >= 2r"));
    }
    if b < (r - 1) * (n - 2 * r) {
        return Err(param_err(format!("need b >= (r-1)(n-2r) = {}", (r - 1) * (n - 2 * r))));
    }
    let bracket = big(b) + big(r) * big(t + 1) + big(r - 1) * big(n - 2 * r + 1) * big(r + t - 2);
    Ok(fact(r - 1) * falling(r + t - 1, r - 1) * bracket)
}

/// `(k-r+1)(r+p)!/p! [(n'-1)(t+p) + 2 + b'](t+p+1)`.
pub fn bound_composed(t: u64, r: u64, k: u64, p: u64, n_prime: u64, b_prime: i64) -> Result<BigInt> {
    if r < 2 || k < r {
        return Err(param_err("need k >= r >= 2"));
    }
    if n_prime < 1 || b_prime < 0 {
        return Err(param_err("need n' >= 1 and b' >= 0"));
    }
    let tp = t + p;
    Ok(big(k - r + 1) * falling(r + p, r) * ((big(n_prime - 1) * big(tp) + 2 + big(b_prime)) * big(tp + 1)))
}

/// `n! k^n / n^n`, exact.
pub fn bound_egorychev_falikman(n: u64, k: u64) -> Result<BigRational> {
    if n < 1 || k < 1 {
        return Err(param_err("need n, k >= 1"));
    }
    let num = fact(n) * num_traits::pow(big(k), n as usize);
    let den = num_traits::pow(big(n), n as usize);
    Ok(BigRational::new(num, den))
}

/// An evaluated bound: integer for every entry except the permanent bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bound {
    Integer(BigInt),
    Rational(BigRational),
}

impl Bound {
    pub fn as_rational(&self) -> BigRational {
        match self {
            Bound::Integer(v) => BigRational::from_integer(v.clone()),
            Bound::Rational(v) => v.clone(),
        }
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::Integer(v) => write!(f, "{v}"),
            Bound::Rational(v) => f.write_str(&rational_to_string(v)),
        }
    }
}

impl Serialize for Bound {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundEntry {
    pub theorem: &'static str,
    pub applicable: bool,
    pub hypothesis_failures: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<Bound>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl BoundEntry {
    /// `Φ - bound`, when both are known.
    pub fn gap(&self, phi: &BigUint) -> Option<BigRational> {
        self.bound.as_ref().map(|b| BigRational::from_integer(BigInt::from(phi.clone())) - b.as_rational())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub params: GraphParams,
    pub alpha: usize,
    #[serde(serialize_with = "crate::num_str::opt_biguint")]
    pub phi: Option<BigUint>,
    pub entries: Vec<BoundEntry>,
    /// Applicable entries whose bound exceeds `Φ`.
    pub violations: Vec<&'static str>,
}

/// Every theorem id understood by [`applicable_bounds`] and the sweeps.
pub const THEOREM_IDS: &[&str] = &[
    "1.1", "mhall", "1.2", "1.3", "1.4", "6.5", "6.4", "6.2", "1.5", "1.6a", "1.6b", "1.6c", "1.7", "2.5", "4.1",
    "4.3", "4.8", "ef",
];

/// Hypothesis-relevant facts about a graph, computed once.
#[derive(Clone, Debug)]
pub struct Facts {
    pub params: GraphParams,
    pub hall: bool,
    pub defect: usize,
    /// `|N(S)| > |S|` for nonempty proper `S` (only meaningful with Hall).
    pub x_surplus: bool,
    pub has_tight: bool,
    pub leafless: bool,
    pub elementary: bool,
    pub simple: bool,
    pub connected: bool,
    /// Minimum distinct-neighbour count over both sides.
    pub r_all: usize,
    /// Minimum degree over both sides.
    pub min_degree: u64,
    pub isolated_x: bool,
    pub isolated_y: bool,
}

impl Facts {
    pub fn of(g: &Bigraph) -> Result<Self> {
        let params = g.params();
        let (hall, defect, x_surplus, has_tight) = if g.nx() <= subsets::ENUM_MAX_NX {
            let table = subsets::neighborhood_table(g);
            let full = table.len() - 1;
            let mut hall = true;
            let mut surplus = true;
            let mut tight = false;
            let mut worst = 0usize;
            for (s, n) in table.iter().enumerate() {
                let (size, nsize) = (s.count_ones() as usize, n.count_ones() as usize);
                hall &= nsize >= size;
                worst = worst.max(size.saturating_sub(nsize));
                if s != 0 && s != full {
                    surplus &= nsize > size;
                    tight |= nsize == size;
                }
            }
            (hall, worst, surplus, tight)
        } else {
            let defect = structure::defect(g);
            let hall = defect == 0;
            let (surplus, tight) = if hall && g.nx() >= 2 {
                let (s, _) = structure::is_x_surplus(g)?;
                (s, !s)
            } else {
                (hall, false)
            };
            (hall, defect, surplus, tight)
        };
        let elementary = g.nx() == g.ny() && hall && structure::is_elementary(g)?;
        let degrees_x = (0..g.nx()).map(|i| g.degree_x(i));
        let degrees_y = (0..g.ny()).map(|j| g.degree_y(j));
        Ok(Facts {
            hall,
            defect,
            x_surplus: hall && x_surplus,
            has_tight: hall && has_tight,
            leafless: structure::is_leafless(g),
            elementary,
            simple: g.is_simple(),
            connected: g.is_connected(),
            r_all: params.r.min(params.r_y),
            min_degree: degrees_x.chain(degrees_y).min().unwrap_or(0),
            isolated_x: params.r == 0,
            isolated_y: params.r_y == 0,
            params,
        })
    }
}

struct Check {
    failures: Vec<String>,
}

impl Check {
    fn new() -> Self {
        Self { failures: Vec::new() }
    }

    fn need(&mut self, ok: bool, what: &str) -> &mut Self {
        if !ok {
            self.failures.push(what.to_string());
        }
        self
    }

    fn finish(&mut self, theorem: &'static str, bound: Result<BigInt>) -> BoundEntry {
        self.finish_with(theorem, bound.map(Bound::Integer), Vec::new())
    }

    fn finish_with(&mut self, theorem: &'static str, bound: Result<Bound>, notes: Vec<String>) -> BoundEntry {
        let failures = std::mem::take(&mut self.failures);
        let (bound, failures) = match bound {
            Ok(b) => (Some(b), failures),
            Err(e) => {
                let mut f = failures;
                if f.is_empty() {
                    f.push(e.to_string());
                }
                (None, f)
            }
        };
        BoundEntry {
            theorem,
            applicable: failures.is_empty() && bound.is_some(),
            hypothesis_failures: failures,
            bound,
            notes,
        }
    }
}

/// Data for the composed bound: the largest `S` with `|N(S)| = |S| - p`
/// and the graph left after deleting `S ∪ N(S)`.
fn composed_entry(g: &Bigraph, f: &Facts) -> BoundEntry {
    let p = &f.params;
    let mut c = Check::new();
    c.need(p.n >= 2, "|X| >= 2").need(p.t >= 2, "t >= 2").need(p.r >= 2, "every X-vertex has >= 2 neighbours");
    if g.nx() > subsets::ENUM_MAX_NX {
        c.need(false, "subset enumeration skipped (|X| too large)");
        return c.finish("4.8", Err(param_err("not evaluated")));
    }
    let table = subsets::neighborhood_table(g);
    let target = |s: usize| (s.count_ones() as usize).checked_sub(f.defect);
    let best = table
        .iter()
        .enumerate()
        .filter(|&(s, n)| target(s) == Some(n.count_ones() as usize))
        .max_by_key(|&(s, _)| (s.count_ones(), std::cmp::Reverse(s)))
        .map(|(s, n)| (s as u64, *n));
    let Some((s, ns)) = best.filter(|&(s, _)| s != 0) else {
        c.need(false, "no nonempty S with |N(S)| = |S| - p");
        return c.finish("4.8", Err(param_err("no such S")));
    };
    let xs: Vec<usize> = bits(s).collect();
    let ys: Vec<usize> = bits(ns).collect();
    let rest = g.delete_vertices(&xs, &ys);
    let n_prime = rest.nx() as u64;
    c.need(n_prime >= 2, "n' >= 2");
    if rest.nx() >= 2 && rest.ny() >= 1 {
        let leafless = structure::is_leafless(&rest);
        let surplus = subsets::is_x_surplus_by_enumeration(&rest);
        c.need(leafless, "G' leafless").need(surplus, "G' is X-surplus");
    }
    let b_prime = rest.edge_count() as i64 - 2 * rest.ny() as i64;
    let bound = if p.t >= 0 {
        bound_composed(p.t as u64, p.r as u64, p.k, f.defect as u64, n_prime, b_prime)
    } else {
        Err(param_err("t < 0"))
    };
    c.finish("4.8", bound)
}

/// Evaluates the entries named in `ids` (all of [`THEOREM_IDS`] when
/// `None`) without counting matchings.
pub fn evaluate_entries(g: &Bigraph, f: &Facts, ids: Option<&[&str]>) -> Vec<BoundEntry> {
    let p = &f.params;
    let (n, k, r) = (p.n as u64, p.k, p.r as u64);
    let t = p.t.max(0) as u64;
    let want = |id: &str| ids.is_none_or(|ids| ids.contains(&id));
    let mut out = Vec::new();
    let mut c = Check::new();

    if want("1.1") {
        c.need(r >= 1, "every X-vertex has a neighbour");
        out.push(c.finish("1.1", bound_main(n, k, r)));
    }
    if want("mhall") {
        c.need(f.hall, "Hall's condition").need(r >= 1, "every X-vertex has a neighbour");
        out.push(c.finish("mhall", bound_mhall(n, r)));
    }
    if want("1.2") {
        c.need(f.hall, "Hall's condition")
            .need(n >= 2, "|X| >= 2")
            .need(k >= 2, "k >= 2")
            .need(p.delta_y >= 1, "deltaY >= 1")
            .need(p.t > 0 || p.delta_y >= 2, "|Y| > |X| or deltaY >= 2");
        out.push(c.finish("1.2", bound_y2(n, k)));
    }
    if want("1.3") {
        c.need(f.hall, "Hall's condition")
            .need(n >= 2, "|X| >= 2")
            .need(k >= 2, "k >= 2")
            .need(p.delta_y >= 2, "deltaY >= 2")
            .need(r >= 2, "every X-vertex has >= 2 neighbours");
        out.push(c.finish("1.3", bound_4k(n, k)));
    }
    if want("1.4") {
        c.need(f.hall, "Hall's condition").need(n >= 2, "|X| >= 2").need(p.delta_y >= 1, "deltaY >= 1");
        c.need(n >= 3 || t == 0 || p.delta_y >= 2, "deltaY >= 2 when |X| = 2 and t >= 1");
        let notes = if p.delta_y >= 2 && k == 3 && n >= 3 {
            vec!["k = 3 line taken as stated for every t; see 6.5".to_string()]
        } else {
            Vec::new()
        };
        let b = bound_2kt(n, k, t, p.delta_y).map(Bound::Integer);
        out.push(c.finish_with("1.4", b, notes));
    }
    if want("6.5") {
        c.need(f.hall, "X-matching exists")
            .need(n >= 3, "|X| >= 3")
            .need(p.t >= 1, "t >= 1")
            .need(p.delta_y >= 2, "deltaY >= 2");
        out.push(c.finish("6.5", bound_2kt_refined(n, k, t)));
    }
    if want("6.4") {
        c.need(f.hall, "X-matching exists")
            .need(n >= 3, "|X| >= 3")
            .need(p.t >= 1, "t >= 1")
            .need(p.delta_y >= 1, "deltaY >= 1");
        out.push(c.finish("6.4", bound_kt(n, k, t)));
    }
    if want("6.2") {
        c.need(f.hall, "matching of size 2")
            .need(n == 2, "|X| = 2")
            .need(k >= 2, "k >= 2")
            .need(p.delta_y >= 2, "deltaY >= 2");
        out.push(c.finish("6.2", bound_two_x(k, t)));
    }
    if want("1.5") {
        c.need(n >= 2, "|X| >= 2").need(p.t >= 0, "t >= 0").need(f.leafless, "leafless").need(f.x_surplus, "X-surplus");
        out.push(c.finish("1.5", bound_leafmain(n, t, p.b)));
    }
    let positive_surplus = f.x_surplus && p.t >= 1 && !f.isolated_y;
    for (id, variant) in [("1.6a", LiuLiu::Connected), ("1.6b", LiuLiu::Edges), ("1.6c", LiuLiu::TOne)] {
        if !want(id) {
            continue;
        }
        c.need(f.simple, "simple").need(positive_surplus, "positive surplus").need(p.t >= 1, "t >= 1");
        let mut notes = Vec::new();
        match variant {
            LiuLiu::Connected => {
                c.need(f.connected, "connected");
            }
            LiuLiu::Edges => {
                c.need(f.connected, "connected");
                notes.push("hypothesis repeated from the first line as printed; suspect".to_string());
            }
            LiuLiu::TOne => {
                c.need(p.t == 1, "t = 1").need(f.min_degree >= 2, "minimum degree >= 2");
            }
        }
        let b = if p.t >= 1 && (variant != LiuLiu::TOne || p.t == 1) {
            bound_liu_liu(variant, n, p.m, p.ny as u64, t).map(Bound::Integer)
        } else {
            Err(param_err("t out of range"))
        };
        out.push(c.finish_with(id, b, notes));
    }
    if want("1.7") {
        c.need(f.elementary, "elementary");
        out.push(c.finish("1.7", bound_surplus(p.m, (p.n + p.ny) as u64)));
    }
    if want("2.5") {
        c.need(f.defect >= 1, "defect p >= 1").need(r >= 1, "every X-vertex has a neighbour");
        out.push(c.finish("2.5", bound_defect(k, r, f.defect as u64)));
    }
    if want("4.1") {
        c.need(f.hall, "Hall's condition").need(!f.isolated_x && !f.isolated_y, "no isolated vertices");
        out.push(c.finish("4.1", Ok(bound_t_plus_1(t))));
    }
    if want("4.3") {
        c.need(f.hall, "Hall's condition")
            .need(f.r_all >= 1, "every vertex has a neighbour")
            .need(f.has_tight, "tight set exists");
        out.push(c.finish("4.3", bound_case1(k, f.r_all as u64, t)));
    }
    if want("4.8") {
        out.push(composed_entry(g, f));
    }
    if want("ef") {
        let regular = p.n == p.ny && (0..g.nx()).all(|i| g.degree_x(i) == k) && (0..g.ny()).all(|j| g.degree_y(j) == k);
        c.need(regular, "k-regular with |X| = |Y|");
        let b = bound_egorychev_falikman(n, k).map(Bound::Rational);
        out.push(c.finish_with("ef", b, Vec::new()));
    }
    out
}

/// Evaluates every bound for `g`; with `compute_phi`, also counts maximum
/// matchings and records applicable entries whose bound exceeds `Φ`.
pub fn applicable_bounds(g: &Bigraph, compute_phi: bool) -> Result<BoundReport> {
    let facts = Facts::of(g)?;
    let entries = evaluate_entries(g, &facts, None);
    let alpha = g.nx() - facts.defect;
    let phi = if compute_phi { Some(crate::matching::phi(g)?.count) } else { None };
    let violations = match &phi {
        Some(phi) => entries
            .iter()
            .filter(|e| e.applicable && e.gap(phi).is_some_and(|gap| gap.is_negative()))
            .map(|e| e.theorem)
            .collect(),
        None => Vec::new(),
    };
    Ok(BoundReport { params: facts.params, alpha, phi, entries, violations })
}

impl BoundReport {
    fn rows(&self) -> Vec<[String; 6]> {
        self.entries
            .iter()
            .map(|e| {
                let bound = e.bound.as_ref().map_or("-".to_string(), Bound::to_string);
                let phi = self.phi.as_ref().map_or("-".to_string(), BigUint::to_string);
                let (gap, eq) = match (&self.phi, e.applicable) {
                    (Some(phi), true) => {
                        let gap = e.gap(phi).expect("applicable entries carry a bound");
                        (rational_to_string(&gap), if gap.is_zero() { "yes" } else { "no" }.to_string())
                    }
                    _ => ("-".to_string(), "-".to_string()),
                };
                let applicable = if e.applicable { "yes" } else { "no" }.to_string();
                [e.theorem.to_string(), applicable, bound, phi, gap, eq]
            })
            .collect()
    }

    pub fn to_markdown(&self) -> String {
        let mut s =
            String::from("| theorem | applicable | bound | phi | gap | equality |\n|---|---|---|---|---|---|\n");
        for row in self.rows() {
            s.push_str(&format!("| {} |\n", row.join(" | ")));
        }
        if !self.violations.is_empty() {
            s.push_str(&format!("\n**VIOLATIONS:** {}\n", self.violations.join(", ")));
        }
        s
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("theorem,applicable,bound,phi,gap,equality\n");
        for row in self.rows() {
            s.push_str(&row.join(","));
            s.push('\n');
        }
        s
    }
}

/// `true` when the entry's bound equals `phi`.
pub fn is_equality(entry: &BoundEntry, phi: &BigUint) -> bool {
    entry.gap(phi).is_some_and(|g| g.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn i(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn formula_values() {
        assert_eq!(bound_main(3, 5, 4).unwrap(), i(42));
        assert_eq!(bound_main(4, 3, 2).unwrap(), i(4));
        assert_eq!(bound_main(1, 1, 1).unwrap(), i(1));
        assert!(bound_main(1, 1, 2).is_err());
        assert_eq!(bound_mhall(3, 3).unwrap(), i(6));
        assert_eq!(bound_mhall(2, 4).unwrap(), i(12));
        assert_eq!(bound_mhall(5, 3).unwrap(), i(6));
        assert_eq!(bound_defect(1, 1, 1).unwrap(), i(2));
        assert_eq!(bound_defect(5, 4, 1).unwrap(), i(240));
        assert_eq!(bound_y2(2, 4).unwrap(), i(6));
        assert_eq!(bound_y2(3, 3).unwrap(), i(5));
        assert_eq!(bound_y2(4, 5).unwrap(), i(10));
        assert_eq!(bound_4k(4, 4).unwrap(), i(10));
        assert_eq!(bound_4k(8, 4).unwrap(), i(12));
        assert_eq!(bound_4k(2, 2).unwrap(), i(2));
        assert_eq!(bound_2kt(3, 3, 2, 1).unwrap(), i(9));
        assert_eq!(bound_2kt(2, 6, 3, 2).unwrap(), i(28));
        assert_eq!(bound_2kt(3, 3, 1, 2).unwrap(), i(11));
        assert!(bound_2kt(2, 2, 1, 1).is_err());
        assert_eq!(bound_2kt(2, 3, 0, 1).unwrap(), i(3));
        assert_eq!(bound_2kt_refined(3, 3, 1).unwrap(), i(11));
        assert_eq!(bound_2kt_refined(3, 3, 2).unwrap(), i(18));
        assert_eq!(bound_leafmain(4, 1, 0).unwrap(), i(10));
        assert_eq!(bound_leafmain(4, 2, 0).unwrap(), i(24));
        assert_eq!(bound_leafmain(3, 2, 0).unwrap(), i(18));
        assert_eq!(bound_surplus(6, 6).unwrap(), i(2));
        assert_eq!(bound_surplus(8, 6).unwrap(), i(4));
        assert_eq!(bound_surplus(9, 6).unwrap(), i(5));
        assert_eq!(bound_case1(2, 2, 0).unwrap(), i(4));
        assert_eq!(bound_case1(3, 2, 1).unwrap(), i(24));
        assert_eq!(bound_t_plus_1(3), i(4));
        assert_eq!(bound_liu_liu(LiuLiu::Connected, 5, 0, 0, 1).unwrap(), i(6));
        assert_eq!(bound_liu_liu(LiuLiu::TOne, 0, 10, 9, 1).unwrap(), i(2));
        assert_eq!(bound_liu_liu(LiuLiu::TOne, 4, 10, 5, 1).unwrap(), i(10));
        assert_eq!(bound_m_nrtb(6, 3, 1, 0).unwrap(), i(120));
        assert_eq!(bound_m_nrtb(4, 2, 1, 0).unwrap(), i(10));
        assert_eq!(bound_m_nrtb(5, 2, 2, 1).unwrap(), i(33));
        assert!(bound_m_nrtb(6, 3, 1, 0).is_ok() && bound_m_nrtb(7, 3, 1, 1).is_err());
        assert_eq!(bound_composed(1, 2, 2, 1, 2, 0).unwrap(), i(72));
        assert_eq!(bound_composed(1, 2, 3, 0, 3, 0).unwrap(), i(32));
        assert_eq!(bound_egorychev_falikman(1, 7).unwrap(), BigRational::from_integer(i(7)));
        assert_eq!(bound_egorychev_falikman(2, 2).unwrap(), BigRational::from_integer(i(2)));
        assert_eq!(bound_egorychev_falikman(3, 3).unwrap(), BigRational::from_integer(i(6)));
        assert_eq!(rational_to_string(&bound_egorychev_falikman(3, 2).unwrap()), "16/9");
    }

    #[test]
    fn main_bound_branches_meet() {
        for r in 1..=8 {
            for k in r..=8 {
                assert_eq!(bound_main(r, k, r).unwrap(), fact(r) * big(k - r + 1));
                if k == r {
                    assert_eq!(bound_main(r, k, r).unwrap(), bound_mhall(r, k).unwrap());
                }
            }
        }
    }

    #[test]
    fn leafmain_matches_third_surplus_line() {
        for n in 2..8u64 {
            for b in 0..6i64 {
                let ny = n + 1;
                let m = (b + 2 * ny as i64) as u64;
                assert_eq!(bound_leafmain(n, 1, b).unwrap(), bound_liu_liu(LiuLiu::TOne, n, m, ny, 1).unwrap());
            }
        }
    }

    #[test]
    fn dispatch_on_small_graphs() {
        let g6 = Bigraph::from_rows(&[[2, 1, 0], [1, 1, 1], [2, 0, 1]]).unwrap();
        let rep = applicable_bounds(&g6, true).unwrap();
        let y2 = rep.entries.iter().find(|e| e.theorem == "1.2").unwrap();
        assert!(y2.applicable);
        assert_eq!(y2.bound, Some(Bound::Integer(i(5))));
        assert!(is_equality(y2, rep.phi.as_ref().unwrap()));
        assert!(rep.violations.is_empty());

        let k11 = Bigraph::from_rows(&[[1]]).unwrap();
        let rep = applicable_bounds(&k11, true).unwrap();
        let applicable: Vec<_> = rep.entries.iter().filter(|e| e.applicable).map(|e| e.theorem).collect();
        assert!(applicable.contains(&"1.1") && applicable.contains(&"mhall"));
        for e in rep.entries.iter().filter(|e| e.theorem == "1.1" || e.theorem == "mhall") {
            assert_eq!(e.bound, Some(Bound::Integer(i(1))));
        }
        assert!(rep.to_markdown().contains("| 1.1 | yes | 1 | 1 | 0 | yes |"));
        assert!(rep.to_csv().starts_with("theorem,applicable,bound,phi,gap,equality\n"));
    }
}
