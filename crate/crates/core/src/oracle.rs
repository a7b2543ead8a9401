//! Exact verification on small graphs.
//!
//! [`enumerate_exact`] walks all `n!` orderings and turns every expectation
//! and probability of the two-phase construction into an exact rational.
//! Counts are kept as integers and divided by `n!` once at the end.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{caro_wei, neighborhood_excess, selkow_bound};
use crate::error::{Error, Result};
use crate::generate::{counterexample_graph, CounterexampleSpec};
use crate::graph::{Graph, VertexSet};
use crate::rational::{self, integer, inverse_succ, Rational};
use crate::sampler::{min_degree_greedy, TwoPhaseScratch};

pub const DEFAULT_ENUMERATION_LIMIT: usize = 10;
pub const DEFAULT_ALPHA_LIMIT: usize = 30;
/// Hard ceiling of the bitset search.
pub const MAX_ALPHA_N: usize = 64;

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// Rearranges `items` into the lexicographically next permutation. Returns
/// false (leaving `items` sorted ascending) after the last one.
pub fn next_permutation<T: Ord>(items: &mut [T]) -> bool {
    let n = items.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && items[i - 1] >= items[i] {
        i -= 1;
    }
    if i == 0 {
        items.reverse();
        return false;
    }
    let mut j = n - 1;
    while items[j] <= items[i - 1] {
        j -= 1;
    }
    items.swap(i - 1, j);
    items[i..].reverse();
    true
}

/// Per-vertex membership counts over a block of orderings.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Counts {
    orderings: u64,
    i1: Vec<u64>,
    i2: Vec<u64>,
    h: Vec<u64>,
    /// Sum over orderings of `sum_{v in H} scale/(d_G(v)+1)`.
    residual_cw_g: u128,
    /// Sum over orderings of `sum_{v in H} scale/(d_H(v)+1)`.
    residual_cw_h: u128,
}

impl Counts {
    fn new(n: usize) -> Self {
        Counts {
            orderings: 0,
            i1: vec![0; n],
            i2: vec![0; n],
            h: vec![0; n],
            residual_cw_g: 0,
            residual_cw_h: 0,
        }
    }

    fn merge(mut self, other: Counts) -> Counts {
        self.orderings += other.orderings;
        for (a, b) in [
            (&mut self.i1, &other.i1),
            (&mut self.i2, &other.i2),
            (&mut self.h, &other.h),
        ] {
            for (x, y) in a.iter_mut().zip(b) {
                *x += y;
            }
        }
        self.residual_cw_g += other.residual_cw_g;
        self.residual_cw_h += other.residual_cw_h;
        self
    }
}

/// `lcm(1, ..., n)`: every `1/(d+1)` with `d < n` is a whole multiple of
/// `1/scale`.
fn common_scale(n: usize) -> u128 {
    (1..=n.max(1) as u128).fold(1, |acc, k| acc.lcm(&k))
}

/// Enumerates the orderings whose smallest vertex is `first`, in
/// lexicographic order of the position list.
fn enumerate_block(graph: &Graph, first: usize, scale: u128) -> Counts {
    let n = graph.n();
    let mut counts = Counts::new(n);
    let mut scratch = TwoPhaseScratch::new(n);
    let mut positions: Vec<usize> = std::iter::once(first)
        .chain((0..n).filter(|&v| v != first))
        .collect();
    let mut rank = vec![0; n];
    let weight_g: Vec<u128> = (0..n)
        .map(|v| scale / (graph.degree(v) as u128 + 1))
        .collect();
    loop {
        for (i, &v) in positions.iter().enumerate() {
            rank[v] = i;
        }
        scratch.run(graph, &rank);
        counts.orderings += 1;
        #[allow(clippy::needless_range_loop)]
        for v in 0..n {
            counts.i1[v] += scratch.in_i1[v] as u64;
            counts.i2[v] += scratch.in_i2[v] as u64;
            if scratch.in_h[v] {
                counts.h[v] += 1;
                counts.residual_cw_g += weight_g[v];
                counts.residual_cw_h += scale / (scratch.h_degree[v] as u128 + 1);
            }
        }
        if !next_permutation(&mut positions[1..]) {
            break;
        }
    }
    counts
}

fn enumerate_counts(graph: &Graph) -> Counts {
    let n = graph.n();
    if n == 0 {
        // The single empty ordering contributes nothing but itself.
        let mut counts = Counts::new(0);
        counts.orderings = 1;
        return counts;
    }
    let scale = common_scale(n);
    (0..n)
        .into_par_iter()
        .map(|first| enumerate_block(graph, first, scale))
        .reduce(|| Counts::new(n), Counts::merge)
}

/// Exact expectations and probabilities over all `n!` orderings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExactStats {
    pub n: usize,
    /// `n!`, as a decimal string.
    #[serde(serialize_with = "serialize_bigint")]
    pub orderings: BigInt,
    #[serde(serialize_with = "rational::serialize")]
    pub expected_i1: Rational,
    #[serde(serialize_with = "rational::serialize")]
    pub expected_i2: Rational,
    #[serde(serialize_with = "rational::serialize")]
    pub expected_union: Rational,
    #[serde(serialize_with = "rational::serialize_vec")]
    pub prob_in_i1: Vec<Rational>,
    #[serde(serialize_with = "rational::serialize_vec")]
    pub prob_in_i2: Vec<Rational>,
    #[serde(serialize_with = "rational::serialize_vec")]
    pub prob_in_h: Vec<Rational>,
    /// `E(sum over v in V(H) of 1/(d_G(v)+1))`.
    #[serde(serialize_with = "rational::serialize")]
    pub expected_residual_cw: Rational,
    /// `E(CW(H))`, i.e. the same sum with `H`-degrees.
    #[serde(serialize_with = "rational::serialize")]
    pub expected_residual_cw_h: Rational,
    /// `E(|I1| + CW(H))`.
    #[serde(serialize_with = "rational::serialize")]
    pub expected_i1_plus_cw_h: Rational,
}

fn serialize_bigint<S: serde::Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

fn check_enumeration_limit(n: usize, limit: usize) -> Result<()> {
    if n > limit {
        return Err(Error::EnumerationLimit {
            n,
            limit,
            orderings: factorial(n).to_string(),
        });
    }
    Ok(())
}

/// Computes [`ExactStats`] by visiting every ordering. Fails if `n > limit`.
pub fn enumerate_exact(graph: &Graph, limit: usize) -> Result<ExactStats> {
    let n = graph.n();
    check_enumeration_limit(n, limit)?;
    let counts = enumerate_counts(graph);
    let total = BigInt::from(counts.orderings);
    debug_assert_eq!(total, factorial(n));
    let prob = |c: u64| Rational::new(c.into(), total.clone());
    let scaled = |c: u128| Rational::new(c.into(), total.clone() * common_scale(n));
    let sum = |xs: &[u64]| prob(xs.iter().sum());

    let expected_i1 = sum(&counts.i1);
    let expected_i2 = sum(&counts.i2);
    let expected_residual_cw_h = scaled(counts.residual_cw_h);
    Ok(ExactStats {
        n,
        expected_union: &expected_i1 + &expected_i2,
        expected_i1_plus_cw_h: &expected_i1 + &expected_residual_cw_h,
        expected_i1,
        expected_i2,
        prob_in_i1: counts.i1.iter().map(|&c| prob(c)).collect(),
        prob_in_i2: counts.i2.iter().map(|&c| prob(c)).collect(),
        prob_in_h: counts.h.iter().map(|&c| prob(c)).collect(),
        expected_residual_cw: scaled(counts.residual_cw_g),
        expected_residual_cw_h,
        orderings: total,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AlphaResult {
    pub alpha: usize,
    pub witness: VertexSet,
}

struct AlphaSearch {
    neighbors: Vec<u64>,
    best: u64,
    best_size: u32,
}

impl AlphaSearch {
    fn search(&mut self, candidates: u64, chosen: u64, size: u32) {
        if size + candidates.count_ones() <= self.best_size {
            return;
        }
        if candidates == 0 {
            self.best = chosen;
            self.best_size = size;
            return;
        }
        let mut min_v = 0;
        let mut min_deg = u32::MAX;
        let mut max_v = 0;
        let mut max_deg = 0;
        let mut rest = candidates;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let d = (self.neighbors[v] & candidates).count_ones();
            if d < min_deg {
                (min_v, min_deg) = (v, d);
            }
            if d > max_deg {
                (max_v, max_deg) = (v, d);
            }
        }
        // Some maximum independent set contains any vertex of degree <= 1.
        if min_deg <= 1 {
            let closed = self.neighbors[min_v] | (1 << min_v);
            self.search(candidates & !closed, chosen | (1 << min_v), size + 1);
            return;
        }
        let bit = 1u64 << max_v;
        self.search(candidates & !(self.neighbors[max_v] | bit), chosen | bit, size + 1);
        self.search(candidates & !bit, chosen, size);
    }
}

/// Exact independence number by branch and bound: branch on a vertex of
/// maximum remaining degree (include it and drop its closed neighborhood,
/// or exclude it), take degree <= 1 vertices outright, and prune with the
/// trivial `size + |candidates|` bound seeded by the min-degree greedy.
pub fn brute_force_alpha(graph: &Graph, limit: usize) -> Result<AlphaResult> {
    let n = graph.n();
    let limit = limit.min(MAX_ALPHA_N);
    if n > limit {
        return Err(Error::AlphaLimit { n, limit });
    }
    let neighbors: Vec<u64> = (0..n)
        .map(|v| graph.neighbors(v).iter().fold(0, |m, &u| m | (1 << u)))
        .collect();
    let greedy = min_degree_greedy(graph);
    let mut search = AlphaSearch {
        neighbors,
        best: greedy.iter().fold(0, |m, v| m | (1 << v)),
        best_size: greedy.len() as u32,
    };
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    search.search(all, 0, 0);
    let witness: VertexSet = (0..n).filter(|&v| search.best >> v & 1 == 1).collect();
    debug_assert!(graph.is_independent(&witness));
    Ok(AlphaResult {
        alpha: witness.len(),
        witness,
    })
}

/// Exact comparison recorded by the verification reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    #[serde(serialize_with = "rational::serialize")]
    pub lhs: Rational,
    pub relation: Relation,
    #[serde(serialize_with = "rational::serialize")]
    pub rhs: Rational,
    pub passed: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Relation {
    #[serde(rename = "=")]
    Eq,
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = "<")]
    Lt,
}

impl Relation {
    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Eq => "=",
            Relation::Le => "<=",
            Relation::Ge => ">=",
            Relation::Lt => "<",
        }
    }
}

impl Check {
    pub fn new(name: impl Into<String>, lhs: Rational, relation: Relation, rhs: Rational) -> Self {
        let passed = match relation {
            Relation::Eq => lhs == rhs,
            Relation::Le => lhs <= rhs,
            Relation::Ge => lhs >= rhs,
            Relation::Lt => lhs < rhs,
        };
        Check {
            name: name.into(),
            lhs,
            relation,
            rhs,
            passed,
        }
    }
}

/// Internal consistency of [`ExactStats`] against the closed forms that
/// hold for every graph: `P(v in I1) = 1/(d(v)+1)`, `E|I1| = CW(G)`, and
/// the linearity identities.
pub fn stats_checks(graph: &Graph, stats: &ExactStats) -> Vec<Check> {
    let mut checks = vec![Check::new(
        "expected_i1 = caro_wei",
        stats.expected_i1.clone(),
        Relation::Eq,
        caro_wei(graph),
    )];
    for v in 0..graph.n() {
        checks.push(Check::new(
            format!("P({v} in I1) = 1/(d+1)"),
            stats.prob_in_i1[v].clone(),
            Relation::Eq,
            inverse_succ(graph.degree(v)),
        ));
    }
    let sum = |xs: &[Rational]| xs.iter().fold(Rational::zero(), |a, x| a + x);
    checks.push(Check::new(
        "expected_i1 = sum P(v in I1)",
        stats.expected_i1.clone(),
        Relation::Eq,
        sum(&stats.prob_in_i1),
    ));
    checks.push(Check::new(
        "expected_i2 = sum P(v in I2)",
        stats.expected_i2.clone(),
        Relation::Eq,
        sum(&stats.prob_in_i2),
    ));
    let weighted: Rational = (0..graph.n())
        .map(|v| &stats.prob_in_h[v] * inverse_succ(graph.degree(v)))
        .fold(Rational::zero(), |a, x| a + x);
    checks.push(Check::new(
        "expected_residual_cw = sum P(v in H)/(d+1)",
        stats.expected_residual_cw.clone(),
        Relation::Eq,
        weighted,
    ));
    checks
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProofChainReport {
    pub stats: ExactStats,
    #[serde(serialize_with = "rational::serialize")]
    pub selkow: Rational,
    pub checks: Vec<Check>,
}

impl ProofChainReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Checks each inequality of the weighted-residual argument exactly:
///
/// 1. `E|I1| = CW(G)`;
/// 2. for every `v`, `P(v in H) >= 0` and the union bound
///    `1 - P(v in H) <= 1/(d(v)+1) + sum_{u in N(v)} 1/(d(u)+1)`;
/// 3. `E|I1| + E(sum_{v in H} 1/(d_G(v)+1)) >= Selkow(G)`;
/// 4. `E(CW(H)) >= E(sum_{v in H} 1/(d_G(v)+1))`, since `d_H <= d_G`;
/// 5. `E(|I1| + CW(H)) >= Selkow(G)`.
pub fn verify_proof_chain(graph: &Graph, limit: usize) -> Result<ProofChainReport> {
    let stats = enumerate_exact(graph, limit)?;
    let selkow = selkow_bound(graph).selkow;
    let mut checks = vec![Check::new(
        "E|I1| = CW(G)",
        stats.expected_i1.clone(),
        Relation::Eq,
        caro_wei(graph),
    )];
    for v in 0..graph.n() {
        checks.push(Check::new(
            format!("P({v} in H) >= 0"),
            stats.prob_in_h[v].clone(),
            Relation::Ge,
            Rational::zero(),
        ));
        let union_bound = graph
            .neighbors(v)
            .iter()
            .map(|&u| inverse_succ(graph.degree(u)))
            .fold(inverse_succ(graph.degree(v)), |a, x| a + x);
        checks.push(Check::new(
            format!("1 - P({v} in H) <= union bound"),
            Rational::one() - &stats.prob_in_h[v],
            Relation::Le,
            union_bound,
        ));
    }
    checks.push(Check::new(
        "E|I1| + E(sum_H 1/(d_G+1)) >= Selkow(G)",
        &stats.expected_i1 + &stats.expected_residual_cw,
        Relation::Ge,
        selkow.clone(),
    ));
    checks.push(Check::new(
        "E(sum_H 1/(d_H+1)) >= E(sum_H 1/(d_G+1))",
        stats.expected_residual_cw_h.clone(),
        Relation::Ge,
        stats.expected_residual_cw.clone(),
    ));
    checks.push(Check::new(
        "E(|I1| + CW(H)) >= Selkow(G)",
        stats.expected_i1_plus_cw_h.clone(),
        Relation::Ge,
        selkow.clone(),
    ));
    Ok(ProofChainReport {
        stats,
        selkow,
        checks,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SandwichReport {
    #[serde(serialize_with = "rational::serialize")]
    pub cw: Rational,
    #[serde(serialize_with = "rational::serialize")]
    pub selkow: Rational,
    pub alpha: AlphaResult,
    pub checks: Vec<Check>,
}

impl SandwichReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// `CW(G) <= Selkow(G) <= alpha(G)`, with alpha from [`brute_force_alpha`].
pub fn bound_sandwich(graph: &Graph, alpha_limit: usize) -> Result<SandwichReport> {
    let bounds = selkow_bound(graph);
    let alpha = brute_force_alpha(graph, alpha_limit)?;
    let checks = vec![
        Check::new("CW(G) <= Selkow(G)", bounds.cw.clone(), Relation::Le, bounds.selkow.clone()),
        Check::new(
            "Selkow(G) <= alpha(G)",
            bounds.selkow.clone(),
            Relation::Le,
            integer(alpha.alpha),
        ),
    ];
    Ok(SandwichReport {
        cw: bounds.cw,
        selkow: bounds.selkow,
        alpha,
        checks,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RefutationReport {
    pub n: usize,
    pub designated: crate::generate::Counterexample,
    /// `C(n-1, 2) * (n-3)!`, orderings with `v in I2`.
    #[serde(serialize_with = "serialize_bigint")]
    pub favorable_orderings: BigInt,
    #[serde(serialize_with = "serialize_bigint")]
    pub total_orderings: BigInt,
    /// `favorable_orderings / n!`.
    #[serde(serialize_with = "rational::serialize")]
    pub closed_form: Rational,
    /// `1 / (2n)`.
    #[serde(serialize_with = "rational::serialize")]
    pub one_over_2n: Rational,
    /// Present when `n` is within the enumeration limit.
    #[serde(serialize_with = "serialize_opt_rational")]
    pub enumerated: Option<Rational>,
    /// The per-vertex lower bound that was claimed for `P(v in I2)`.
    #[serde(serialize_with = "rational::serialize")]
    pub claimed_lower_bound: Rational,
    /// `P(v in I2) / claimed_lower_bound`, equal to `6/n`.
    #[serde(serialize_with = "rational::serialize")]
    pub epsilon: Rational,
    pub checks: Vec<Check>,
    /// `0 < P(v in I2) < claimed_lower_bound`.
    pub refuted: bool,
}

impl RefutationReport {
    /// The closed form and enumeration agree (and the checks that must hold
    /// for every `n` pass). The refutation verdict itself is not part of this.
    pub fn consistent(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn serialize_opt_rational<S: serde::Serializer>(
    r: &Option<Rational>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match r {
        Some(r) => rational::serialize(r, s),
        None => s.serialize_none(),
    }
}

/// Builds the extended graph for `spec` and compares the exact probability
/// that the pendant vertex lands in `I2` against the claimed lower bound.
/// Enumeration runs only when `n <= limit`; the closed form is always given.
pub fn refutation_check(spec: &CounterexampleSpec, limit: usize) -> Result<RefutationReport> {
    let n = spec.n();
    if n < 4 {
        return Err(Error::InvalidParameter(format!(
            "the counterexample needs a nonempty base graph (n >= 4), got n = {n}"
        )));
    }
    let ce = counterexample_graph(spec);
    let favorable = binomial(n - 1, 2) * factorial(n - 3);
    let total = factorial(n);
    let closed_form = Rational::new(favorable.clone(), total.clone());
    let one_over_2n = Rational::new(BigInt::one(), BigInt::from(2 * n));
    let claimed = neighborhood_excess(&ce.graph, ce.v);
    let enumerated = if n <= limit {
        Some(enumerate_exact(&ce.graph, limit)?.prob_in_i2[ce.v].clone())
    } else {
        None
    };
    let probability = enumerated.clone().unwrap_or_else(|| closed_form.clone());

    let mut checks = vec![
        Check::new("closed form = 1/(2n)", closed_form.clone(), Relation::Eq, one_over_2n.clone()),
        Check::new("claimed bound = 1/12", claimed.clone(), Relation::Eq, rational::ratio(1, 12)),
    ];
    if let Some(e) = &enumerated {
        checks.push(Check::new(
            "enumerated P(v in I2) = closed form",
            e.clone(),
            Relation::Eq,
            closed_form.clone(),
        ));
    }
    let refuted = probability > Rational::zero() && probability < claimed;
    Ok(RefutationReport {
        n,
        favorable_orderings: favorable,
        total_orderings: total,
        epsilon: &probability / &claimed,
        closed_form,
        one_over_2n,
        enumerated,
        claimed_lower_bound: claimed,
        checks,
        refuted,
        designated: ce,
    })
}
