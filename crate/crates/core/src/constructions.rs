//! Generators for the extremal graph families, each paired with its
//! predicted number of maximum matchings.
//!
//! Vertices are 0-indexed: `x_1` of a written construction is row 0 here.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::bounds;
use crate::error::{param_err, Error, Result};
use crate::graph::Bigraph;

pub type Generated = (Bigraph, BigUint);

fn nat(v: num_bigint::BigInt) -> Result<BigUint> {
    v.to_biguint().ok_or_else(|| Error::Internal("negative prediction".into()))
}

fn mult(v: u64) -> Result<u32> {
    u32::try_from(v).map_err(|_| param_err(format!("multiplicity {v} too large")))
}

/// Dense builder used by the generators.
struct Grid {
    rows: Vec<Vec<u32>>,
}

impl Grid {
    fn new(nx: usize, ny: usize) -> Self {
        Self { rows: vec![vec![0; ny]; nx] }
    }

    fn add(&mut self, i: usize, j: usize, m: u32) {
        self.rows[i][j] += m;
    }

    fn finish(self) -> Result<Bigraph> {
        Bigraph::from_rows(&self.rows)
    }
}

/// `K_{n,r}` on the first `r` columns, `k - r` extra copies of each
/// `x_i y_0`, and a pendant edge `x_i y_i` for every `i >= r`.
pub fn gen_sharp1(n: u64, k: u64, r: u64) -> Result<Generated> {
    let predicted = nat(bounds::bound_main(n, k, r)?)?;
    let (nu, ru) = (n as usize, r as usize);
    let mut g = Grid::new(nu, ru.max(nu));
    for i in 0..nu {
        for j in 0..ru {
            g.add(i, j, 1);
        }
        g.add(i, 0, mult(k - r)?);
        if i >= ru {
            g.add(i, i, 1);
        }
    }
    Ok((g.finish()?, predicted))
}

pub fn gen_f(k: u64) -> Result<Generated> {
    if k < 2 {
        return Err(param_err("F_k needs k >= 2"));
    }
    let h = mult(k - 1)?;
    Ok((Bigraph::from_rows(&[[h, 1], [h, 1]])?, BigUint::from(2 * k - 2)))
}

/// A 6-cycle plus one extra edge from `y_0` to every X-vertex.
pub fn gen_g6() -> Generated {
    let g = Bigraph::from_rows(&[[2, 1, 0], [1, 1, 1], [2, 0, 1]]).expect("fixed graph");
    (g, BigUint::from(5u32))
}

/// A 6-cycle plus a new Y-vertex adjacent to every X-vertex.
pub fn gen_g7() -> Generated {
    let g = Bigraph::from_rows(&[[1, 1, 0, 1], [0, 1, 1, 1], [1, 0, 1, 1]]).expect("fixed graph");
    (g, BigUint::from(11u32))
}

fn check_nk(n: u64, k: u64) -> Result<()> {
    if n < 2 || k < 2 {
        return Err(param_err("need n >= 2 and k >= 2"));
    }
    if n as usize > crate::MAX_SIDE {
        return Err(param_err("n too large"));
    }
    Ok(())
}

fn h_grid(n: usize, k: u64) -> Result<Grid> {
    let mut g = Grid::new(n, n);
    for i in 0..n {
        g.add(i, i, 1);
        g.add(i, 0, mult(k - 1)?);
    }
    Ok(g)
}

/// Diagonal edges plus `k - 1` extra copies of each `x_i y_0`.
pub fn gen_h(n: u64, k: u64) -> Result<Generated> {
    check_nk(n, k)?;
    Ok((h_grid(n as usize, k)?.finish()?, BigUint::from(k)))
}

/// `H` plus one edge from the last X-vertex to every `y_j`, `j >= 1`.
pub fn gen_hp(n: u64, k: u64) -> Result<Generated> {
    check_nk(n, k)?;
    let nu = n as usize;
    let mut g = h_grid(nu, k)?;
    for j in 1..nu {
        g.add(nu - 1, j, 1);
    }
    Ok((g.finish()?, BigUint::from(2 * k)))
}

/// `H` with one copy of `x_0 y_0` moved to `x_0 y_j` for each `j >= 1`.
pub fn gen_hpp(n: u64, k: u64) -> Result<Generated> {
    check_nk(n, k)?;
    if k < n {
        return Err(param_err("H'' needs k >= n"));
    }
    let nu = n as usize;
    let mut g = h_grid(nu, k)?;
    g.rows[0][0] -= (nu - 1) as u32;
    for j in 1..nu {
        g.add(0, j, 1);
    }
    Ok((g.finish()?, BigUint::from(n * (k - 2) + 2)))
}

/// `H` plus a second matching on the last `n - i + 1` vertices of each
/// side (closing a cycle) and edges from the last X-vertex to
/// `y_1 .. y_{i-2}`. Here `i` is 1-based as in `2 <= i < n`.
pub fn gen_hc(n: u64, k: u64, i: u64) -> Result<Generated> {
    check_nk(n, k)?;
    if i < 2 || i >= n {
        return Err(param_err("need 2 <= i < n"));
    }
    let (nu, start) = (n as usize, i as usize - 1);
    let mut g = h_grid(nu, k)?;
    for j in start..nu {
        let next = if j + 1 == nu { start } else { j + 1 };
        g.add(j, next, 1);
    }
    for j in 1..start {
        g.add(nu - 1, j, 1);
    }
    Ok((g.finish()?, BigUint::from(2 * k)))
}

/// `F_k` on `x_0, x_1, y_0, y_1`, an even cycle on the remaining vertices,
/// and `k - 2` edges from `y_0` to every cycle X-vertex.
pub fn gen_j(n: u64, k: u64) -> Result<Generated> {
    if n < 4 || k < 2 {
        return Err(param_err("J needs n >= 4 and k >= 2"));
    }
    if n as usize > crate::MAX_SIDE {
        return Err(param_err("n too large"));
    }
    let nu = n as usize;
    let mut g = Grid::new(nu, nu);
    let h = mult(k - 1)?;
    for i in 0..2 {
        g.add(i, 0, h);
        g.add(i, 1, 1);
    }
    for i in 2..nu {
        let next = if i + 1 == nu { 2 } else { i + 1 };
        g.add(i, i, 1);
        g.add(i, next, 1);
        if k > 2 {
            g.add(i, 0, mult(k - 2)?);
        }
    }
    Ok((g.finish()?, BigUint::from(4 * k - 4)))
}

/// Blocks `X = R ∪ S ∪ T ∪ {u}`, `Y = R′ ∪ S′ ∪ T′ ∪ {u′}` with
/// `|R| = |S| = |S′| = r-1`, `|R′| = t+r-1`, `|T| = |T′| = n-2r+1`.
/// `u ~ R′ ∪ {u′}`, `u′ ~ R`, `S` complete to `R′ ∪ T′`, `S′` complete to
/// `R ∪ T`, a perfect matching between `T` and `T′`, and the surplus
/// `b - (r-1)(n-2r)` edges placed round-robin on `S × S′`.
pub fn gen_m(n: u64, r: u64, t: u64, b: u64) -> Result<Generated> {
    let predicted = nat(bounds::bound_m_nrtb(n, r, t, b)?)?;
    let (nu, ru, tu) = (n as usize, r as usize, t as usize);
    if nu + tu > crate::MAX_SIDE {
        return Err(param_err("graph too large"));
    }
    let s1 = ru - 1;
    let tsize = nu - 2 * ru + 1;
    let (xr, xs, xt, xu) = (0, s1, 2 * s1, 2 * s1 + tsize);
    let rp = tu + ru - 1;
    let (yr, ys, yt, yu) = (0, rp, rp + s1, rp + s1 + tsize);
    let mut g = Grid::new(nu, nu + tu);
    for j in yr..yr + rp {
        g.add(xu, j, 1);
    }
    g.add(xu, yu, 1);
    for i in xr..xr + s1 {
        g.add(i, yu, 1);
    }
    for i in xs..xs + s1 {
        for j in (yr..yr + rp).chain(yt..yt + tsize) {
            g.add(i, j, 1);
        }
    }
    for j in ys..ys + s1 {
        for i in (xr..xr + s1).chain(xt..xt + tsize) {
            g.add(i, j, 1);
        }
    }
    for d in 0..tsize {
        g.add(xt + d, yt + d, 1);
    }
    let extra = (b - (r - 1) * (n - 2 * r)) as usize;
    if extra > 0 && s1 == 0 {
        return Err(param_err("no S-S' pairs to carry extra edges"));
    }
    for e in 0..extra {
        let pair = e % (s1 * s1);
        g.add(xs + pair / s1, ys + pair % s1, 1);
    }
    Ok((g.finish()?, predicted))
}

/// The cycle `x_i ~ y_i, y_{i+1}` with `t` extra copies of `y_0` (adjacent
/// to `x_0` and `x_{n-1}`) and `b` extra copies of `x_0 y_1`.
pub fn gen_c(n: u64, t: u64, b: u64) -> Result<Generated> {
    if n < 2 {
        return Err(param_err("C needs n >= 2"));
    }
    let predicted = nat(bounds::bound_leafmain(n, t, b as i64)?)?;
    let (nu, tu) = (n as usize, t as usize);
    if nu + tu > crate::MAX_SIDE {
        return Err(param_err("graph too large"));
    }
    let mut g = Grid::new(nu, nu + tu);
    for i in 0..nu {
        g.add(i, i, 1);
        g.add(i, (i + 1) % nu, 1);
    }
    for c in nu..nu + tu {
        g.add(0, c, 1);
        g.add(nu - 1, c, 1);
    }
    g.add(0, 1, mult(b)?);
    Ok((g.finish()?, predicted))
}

/// `K_{2,t+1}` plus a Y-vertex joined to both X-vertices by `k-t-1` edges.
pub fn gen_l(k: u64, t: u64) -> Result<Generated> {
    if k < t + 2 {
        return Err(param_err("L needs k - 1 > t"));
    }
    let tu = t as usize;
    let mut g = Grid::new(2, tu + 2);
    for i in 0..2 {
        g.add(i, 0, mult(k - t - 1)?);
        for j in 1..tu + 2 {
            g.add(i, j, 1);
        }
    }
    Ok((g.finish()?, nat(bounds::bound_two_x(k, t)?)?))
}

fn gnkt(n: u64, k: u64, t: u64, m: u32) -> Result<Bigraph> {
    if n < 3 || k < 1 || t < 1 {
        return Err(param_err("need n >= 3, k >= 1, t >= 1"));
    }
    let (nu, tu) = (n as usize, t as usize);
    if nu + tu > crate::MAX_SIDE {
        return Err(param_err("graph too large"));
    }
    let mut g = Grid::new(nu, nu + tu);
    for i in 0..nu - 1 {
        g.add(i, i, 1);
        g.add(i, 0, mult(k - 1)?);
    }
    let star = nu - 1;
    for j in 0..nu + tu {
        g.add(star, j, m);
    }
    let deg = u64::from(m) * (n + t);
    if deg < k {
        g.add(star, 0, mult(k - deg)?);
    }
    g.finish()
}

/// `H_{n-1,k}` plus a vertex `x*` joined once to every Y-vertex, and `t+1`
/// new Y-vertices.
pub fn gen_gnkt(n: u64, k: u64, t: u64) -> Result<Generated> {
    Ok((gnkt(n, k, t, 1)?, BigUint::from(k * (t + 1))))
}

/// As [`gen_gnkt`] with `x*` joined twice to every Y-vertex.
pub fn gen_gpnkt(n: u64, k: u64, t: u64) -> Result<Generated> {
    Ok((gnkt(n, k, t, 2)?, BigUint::from(2 * k * (t + 1))))
}

/// Internally disjoint paths of the given odd lengths between `x_0` and
/// `y_0`.
pub fn gen_odd_path_bundle(lengths: &[u64]) -> Result<Generated> {
    if lengths.is_empty() {
        return Err(param_err("need at least one path"));
    }
    if let Some(l) = lengths.iter().find(|&&l| l % 2 == 0) {
        return Err(param_err(format!("path length {l} is even")));
    }
    let inner: usize = lengths.iter().map(|&l| (l as usize - 1) / 2).sum();
    if 1 + inner > crate::MAX_SIDE {
        return Err(param_err("graph too large"));
    }
    let mut g = Grid::new(1 + inner, 1 + inner);
    let mut next = 1;
    for &l in lengths {
        let half = (l as usize - 1) / 2;
        if half == 0 {
            g.add(0, 0, 1);
            continue;
        }
        // x_0 - y_a - x_a - y_{a+1} - ... - x_{a+half-1} - y_0
        g.add(0, next, 1);
        for s in 0..half {
            let v = next + s;
            g.add(v, v, 1);
            let y = if s + 1 == half { 0 } else { v + 1 };
            g.add(v, y, 1);
        }
        next += half;
    }
    Ok((g.finish()?, BigUint::from(lengths.len())))
}

/// `K_{3,3}` minus `x_0 y_0`, with the four edges avoiding `x_0` and `y_0`
/// given multiplicities `[x1y1, x1y2, x2y1, x2y2]`.
pub fn gen_k33_minus_edge(mults: &[u64]) -> Result<Generated> {
    let [a, b, c, d] = mults else {
        return Err(param_err("need four multiplicities"));
    };
    if [a, b, c, d].iter().any(|&&m| m == 0) {
        return Err(param_err("multiplicities must be positive"));
    }
    let g = Bigraph::from_rows(&[[0, 1, 1], [1, mult(*a)?, mult(*b)?], [1, mult(*c)?, mult(*d)?]])?;
    Ok((g, BigUint::from(a + b + c + d)))
}

/// Edges `x_i y_i` plus `x_0 y_j` for `n <= j < n + t`.
pub fn gen_t_plus_1_star(n: u64, t: u64) -> Result<Generated> {
    if n < 1 || (n + t) as usize > crate::MAX_SIDE {
        return Err(param_err("need 1 <= n and n + t within limits"));
    }
    let (nu, tu) = (n as usize, t as usize);
    let mut g = Grid::new(nu, nu + tu);
    for i in 0..nu {
        g.add(i, i, 1);
    }
    for j in nu..nu + tu {
        g.add(0, j, 1);
    }
    Ok((g.finish()?, BigUint::from(t + 1)))
}

/// Three 4-cycles through `x_0`.
pub fn gen_three_4cycles() -> Generated {
    let g = Bigraph::from_rows(&[[1, 1, 1, 1, 1, 1], [1, 1, 0, 0, 0, 0], [0, 0, 1, 1, 0, 0], [0, 0, 0, 0, 1, 1]])
        .expect("fixed graph");
    (g, BigUint::from(24u32))
}

/// Three edge-disjoint 4-cycles glued in a path at X-vertices.
pub fn gen_chain_4cycles() -> Generated {
    let g = Bigraph::from_rows(&[[1, 1, 0, 0, 0, 0], [1, 1, 1, 1, 0, 0], [0, 0, 1, 1, 1, 1], [0, 0, 0, 0, 1, 1]])
        .expect("fixed graph");
    (g, BigUint::from(28u32))
}

/// Two 4-cycles sharing `x_1`.
pub fn gen_two_4cycles() -> Generated {
    let g = Bigraph::from_rows(&[[1, 1, 0, 0], [1, 1, 1, 1], [0, 0, 1, 1]]).expect("fixed graph");
    (g, BigUint::from(8u32))
}

/// A tight block `sharp1(r, k, r)` on `S ∪ N(S)` joined to `K_{r,r+t}` on
/// `S′ ∪ T`, with `S′` also complete to `N(S)` and padded to degree `k`.
pub fn gen_case1_sharp(k: u64, r: u64, t: u64) -> Result<Generated> {
    let predicted = nat(bounds::bound_case1(k, r, t)?)?;
    let (ru, tu) = (r as usize, t as usize);
    if 2 * ru + tu > crate::MAX_SIDE {
        return Err(param_err("graph too large"));
    }
    let mut g = Grid::new(2 * ru, 2 * ru + tu);
    let (block, _) = gen_sharp1(r, k, r)?;
    for (i, j, m) in block.edges() {
        g.add(i, j, m);
    }
    for i in ru..2 * ru {
        for j in 0..2 * ru + tu {
            g.add(i, j, 1);
        }
        let deg = (2 * ru + tu) as u64;
        if deg < k {
            g.add(i, 0, mult(k - deg)?);
        }
    }
    Ok((g.finish()?, predicted))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    Sharp1,
    F,
    G6,
    G7,
    H,
    Hp,
    Hpp,
    Hc,
    J,
    M,
    C,
    L,
    Gnkt,
    Gpnkt,
    OddPathBundle,
    K33MinusEdge,
    TPlus1Star,
    Three4Cycles,
    Chain4Cycles,
    Two4Cycles,
    Case1Sharp,
}

impl Family {
    pub const ALL: [Family; 21] = [
        Family::Sharp1,
        Family::F,
        Family::G6,
        Family::G7,
        Family::H,
        Family::Hp,
        Family::Hpp,
        Family::Hc,
        Family::J,
        Family::M,
        Family::C,
        Family::L,
        Family::Gnkt,
        Family::Gpnkt,
        Family::OddPathBundle,
        Family::K33MinusEdge,
        Family::TPlus1Star,
        Family::Three4Cycles,
        Family::Chain4Cycles,
        Family::Two4Cycles,
        Family::Case1Sharp,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Family::Sharp1 => "sharp1",
            Family::F => "F",
            Family::G6 => "G6",
            Family::G7 => "G7",
            Family::H => "H",
            Family::Hp => "Hp",
            Family::Hpp => "Hpp",
            Family::Hc => "Hc",
            Family::J => "J",
            Family::M => "M",
            Family::C => "C",
            Family::L => "L",
            Family::Gnkt => "Gnkt",
            Family::Gpnkt => "Gpnkt",
            Family::OddPathBundle => "odd_path_bundle",
            Family::K33MinusEdge => "k33_minus_edge",
            Family::TPlus1Star => "t_plus_1_star",
            Family::Three4Cycles => "three_4cycles",
            Family::Chain4Cycles => "chain_4cycles",
            Family::Two4Cycles => "two_4cycles",
            Family::Case1Sharp => "case1_sharp",
        }
    }

    /// Parameter names in the order the generator takes them.
    pub fn params(self) -> &'static [&'static str] {
        match self {
            Family::Sharp1 => &["n", "k", "r"],
            Family::F => &["k"],
            Family::G6 | Family::G7 | Family::Three4Cycles | Family::Chain4Cycles | Family::Two4Cycles => &[],
            Family::H | Family::Hp | Family::Hpp | Family::J => &["n", "k"],
            Family::Hc => &["n", "k", "i"],
            Family::M => &["n", "r", "t", "b"],
            Family::C => &["n", "t", "b"],
            Family::L => &["k", "t"],
            Family::Gnkt | Family::Gpnkt => &["n", "k", "t"],
            Family::OddPathBundle => &["lengths"],
            Family::K33MinusEdge => &["mults"],
            Family::TPlus1Star => &["n", "t"],
            Family::Case1Sharp => &["k", "r", "t"],
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.id().eq_ignore_ascii_case(s))
            .ok_or_else(|| param_err(format!("unknown family `{s}`")))
    }
}

/// Named parameters; list-valued ones (`lengths`, `mults`) take several
/// values, the rest exactly one.
pub type Params = BTreeMap<String, Vec<u64>>;

/// Parses `n=4,t=1,b=0`; list values are separated by `:`
/// (`lengths=1:3:5`).
pub fn parse_params(s: &str) -> Result<Params> {
    let mut out = Params::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (key, value) =
            part.split_once('=').ok_or_else(|| param_err(format!("expected key=value, got `{part}`")))?;
        let values = value
            .split(':')
            .map(|v| v.trim().parse::<u64>().map_err(|_| param_err(format!("`{v}` is not a non-negative integer"))))
            .collect::<Result<Vec<_>>>()?;
        out.insert(key.trim().to_string(), values);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Construction {
    pub family: Family,
    pub params: Params,
    pub graph: Bigraph,
    #[serde(with = "crate::num_str::biguint")]
    pub predicted_phi: BigUint,
}

/// Runs the generator for `family` with named parameters.
pub fn construct(family: Family, params: &Params) -> Result<Construction> {
    let names = family.params();
    if let Some(extra) = params.keys().find(|k| !names.contains(&k.as_str())) {
        return Err(param_err(format!("{family} takes no parameter `{extra}`")));
    }
    let scalar = |name: &str| -> Result<u64> {
        match params.get(name).map(Vec::as_slice) {
            Some([v]) => Ok(*v),
            Some(_) => Err(param_err(format!("`{name}` takes one value"))),
            None => Err(param_err(format!("{family} needs `{name}`"))),
        }
    };
    let list = |name: &str| -> Result<&[u64]> {
        params.get(name).map(Vec::as_slice).ok_or_else(|| param_err(format!("{family} needs `{name}`")))
    };
    let (graph, predicted_phi) = match family {
        Family::Sharp1 => gen_sharp1(scalar("n")?, scalar("k")?, scalar("r")?)?,
        Family::F => gen_f(scalar("k")?)?,
        Family::G6 => gen_g6(),
        Family::G7 => gen_g7(),
        Family::H => gen_h(scalar("n")?, scalar("k")?)?,
        Family::Hp => gen_hp(scalar("n")?, scalar("k")?)?,
        Family::Hpp => gen_hpp(scalar("n")?, scalar("k")?)?,
        Family::Hc => gen_hc(scalar("n")?, scalar("k")?, scalar("i")?)?,
        Family::J => gen_j(scalar("n")?, scalar("k")?)?,
        Family::M => gen_m(scalar("n")?, scalar("r")?, scalar("t")?, scalar("b")?)?,
        Family::C => gen_c(scalar("n")?, scalar("t")?, scalar("b")?)?,
        Family::L => gen_l(scalar("k")?, scalar("t")?)?,
        Family::Gnkt => gen_gnkt(scalar("n")?, scalar("k")?, scalar("t")?)?,
        Family::Gpnkt => gen_gpnkt(scalar("n")?, scalar("k")?, scalar("t")?)?,
        Family::OddPathBundle => gen_odd_path_bundle(list("lengths")?)?,
        Family::K33MinusEdge => gen_k33_minus_edge(list("mults")?)?,
        Family::TPlus1Star => gen_t_plus_1_star(scalar("n")?, scalar("t")?)?,
        Family::Three4Cycles => gen_three_4cycles(),
        Family::Chain4Cycles => gen_chain_4cycles(),
        Family::Two4Cycles => gen_two_4cycles(),
        Family::Case1Sharp => gen_case1_sharp(scalar("k")?, scalar("r")?, scalar("t")?)?,
    };
    Ok(Construction { family, params: params.clone(), graph, predicted_phi })
}
