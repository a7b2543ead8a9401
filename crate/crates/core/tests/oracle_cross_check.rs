//! Cross-checks the fast oracle against slow, independently written
//! references: Heap's algorithm over the allocating two-phase path with
//! rational accumulation, and subset enumeration for the independence
//! number.

use num_traits::Zero;
use selkow_core::bounds::selkow_bound;
use selkow_core::generate::{complete, counterexample_graph, cycle, gnp, path, star, CounterexampleSpec};
use selkow_core::graph::{Graph, VertexSet};
use selkow_core::oracle::{
    brute_force_alpha, enumerate_exact, refutation_check, DEFAULT_ENUMERATION_LIMIT,
};
use selkow_core::rational::{integer, inverse_succ, ratio, Rational};
use selkow_core::sampler::{phase_one, residual, two_phase, Ordering};

fn heap_permutations(k: usize, items: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if k <= 1 {
        out.push(items.clone());
        return;
    }
    heap_permutations(k - 1, items, out);
    for i in 0..k - 1 {
        if k.is_multiple_of(2) {
            items.swap(i, k - 1);
        } else {
            items.swap(0, k - 1);
        }
        heap_permutations(k - 1, items, out);
    }
}

fn all_orderings(n: usize) -> Vec<Ordering> {
    let mut out = Vec::new();
    heap_permutations(n, &mut (0..n).collect(), &mut out);
    out.iter()
        .map(|p| Ordering::from_positions(p).unwrap())
        .collect()
}

struct Reference {
    expected_i1: Rational,
    expected_i2: Rational,
    prob_in_i1: Vec<Rational>,
    prob_in_i2: Vec<Rational>,
    prob_in_h: Vec<Rational>,
    expected_residual_cw: Rational,
    expected_residual_cw_h: Rational,
}

fn reference(g: &Graph) -> Reference {
    let n = g.n();
    let orderings = all_orderings(n);
    let weight = Rational::new(1.into(), orderings.len().into());
    let mut r = Reference {
        expected_i1: Rational::zero(),
        expected_i2: Rational::zero(),
        prob_in_i1: vec![Rational::zero(); n],
        prob_in_i2: vec![Rational::zero(); n],
        prob_in_h: vec![Rational::zero(); n],
        expected_residual_cw: Rational::zero(),
        expected_residual_cw_h: Rational::zero(),
    };
    for ord in &orderings {
        let t = two_phase(g, ord);
        let h = residual(g, &phase_one(g, ord)).graph;
        r.expected_i1 += integer(t.i1.len()) * &weight;
        r.expected_i2 += integer(t.i2.len()) * &weight;
        for v in t.i1.iter() {
            r.prob_in_i1[v] += &weight;
        }
        for v in t.i2.iter() {
            r.prob_in_i2[v] += &weight;
        }
        for v in t.h_vertices.iter() {
            r.prob_in_h[v] += &weight;
            r.expected_residual_cw += inverse_succ(g.degree(v)) * &weight;
        }
        for i in 0..h.graph.n() {
            r.expected_residual_cw_h += inverse_succ(h.graph.degree(i)) * &weight;
        }
    }
    r
}

fn subset_alpha(g: &Graph) -> usize {
    let n = g.n();
    (0u32..1 << n)
        .filter(|mask| g.edges().all(|(u, v)| mask >> u & 1 == 0 || mask >> v & 1 == 0))
        .map(|mask| mask.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

fn small_graphs() -> Vec<Graph> {
    let mut gs = vec![Graph::empty(0), Graph::empty(3), path(3), path(5), cycle(5), star(3), complete(4)];
    for n in 2..=6 {
        for seed in 0..6 {
            gs.push(gnp(n, 0.5, seed).unwrap());
        }
    }
    gs.push(counterexample_graph(&CounterexampleSpec::new(path(3))).graph);
    gs
}

#[test]
fn enumeration_matches_reference() {
    for g in small_graphs() {
        let fast = enumerate_exact(&g, DEFAULT_ENUMERATION_LIMIT).unwrap();
        let slow = reference(&g);
        assert_eq!(fast.expected_i1, slow.expected_i1, "{g:?}");
        assert_eq!(fast.expected_i2, slow.expected_i2, "{g:?}");
        assert_eq!(fast.prob_in_i1, slow.prob_in_i1, "{g:?}");
        assert_eq!(fast.prob_in_i2, slow.prob_in_i2, "{g:?}");
        assert_eq!(fast.prob_in_h, slow.prob_in_h, "{g:?}");
        assert_eq!(fast.expected_residual_cw, slow.expected_residual_cw, "{g:?}");
        assert_eq!(fast.expected_residual_cw_h, slow.expected_residual_cw_h, "{g:?}");
    }
}

#[test]
fn p3_hand_enumeration() {
    // Over the 6 orderings of P3 the I1 sizes sum to 8.
    let total: usize = all_orderings(3)
        .iter()
        .map(|o| phase_one(&path(3), o).len())
        .sum();
    assert_eq!(total, 8);
    let stats = enumerate_exact(&path(3), DEFAULT_ENUMERATION_LIMIT).unwrap();
    assert_eq!(stats.expected_i1, ratio(8, 6));
}

#[test]
fn branch_and_bound_matches_subset_search() {
    let mut gs = small_graphs();
    for n in 7..=13 {
        for (i, p) in [0.2, 0.5, 0.8].into_iter().enumerate() {
            gs.push(gnp(n, p, 100 + i as u64).unwrap());
        }
    }
    for g in gs {
        let r = brute_force_alpha(&g, 30).unwrap();
        assert_eq!(r.alpha, subset_alpha(&g), "{g:?}");
        assert_eq!(r.witness.len(), r.alpha);
        assert!(g.is_independent(&r.witness));
    }
}

#[test]
fn sandwich_examples() {
    let s = star(3);
    assert_eq!(selkow_bound(&s).selkow, ratio(17, 8));
    assert_eq!(subset_alpha(&s), 3);
    assert_eq!(selkow_bound(&path(3)).selkow, ratio(3, 2));
    assert_eq!(subset_alpha(&path(3)), 2);
}

/// `v ∈ I2` exactly when `x ∈ I1`, `x < w < v`, and `x` precedes all of F.
#[test]
fn counterexample_membership_characterization() {
    for f in [Graph::empty(1), Graph::empty(2), path(3), complete(3), gnp(3, 0.5, 4).unwrap()] {
        let ce = counterexample_graph(&CounterexampleSpec::new(f.clone()));
        let mut hits = 0u64;
        let orderings = all_orderings(ce.graph.n());
        for ord in &orderings {
            let t = two_phase(&ce.graph, ord);
            let predicted = t.i1.contains(ce.x)
                && ord.precedes(ce.x, ce.w)
                && ord.precedes(ce.w, ce.v)
                && (0..f.n()).all(|y| ord.precedes(ce.x, y));
            assert_eq!(t.i2.contains(ce.v), predicted);
            hits += predicted as u64;
        }
        let n = ce.graph.n() as u64;
        // C(n-1, 2) * (n-3)!
        let favorable = (n - 1) * (n - 2) / 2 * (1..=n - 3).product::<u64>();
        assert_eq!(hits, favorable);
        assert_eq!(
            Rational::new(hits.into(), orderings.len().into()),
            ratio(1, 2 * n as i64)
        );
    }
}

#[test]
fn counterexample_family_closed_form() {
    for base in 1..=5 {
        for f in [Graph::empty(base), complete(base), path(base), gnp(base, 0.5, 9).unwrap()] {
            let r = refutation_check(&CounterexampleSpec::new(f), DEFAULT_ENUMERATION_LIMIT).unwrap();
            let n = (base + 3) as i64;
            assert_eq!(r.enumerated, Some(ratio(1, 2 * n)));
            assert!(r.consistent());
            assert_eq!(r.epsilon, ratio(6, n));
            assert_eq!(r.refuted, n >= 7);
        }
    }
}

#[test]
fn witness_sets_are_sorted_ids() {
    let r = brute_force_alpha(&cycle(6), 30).unwrap();
    assert_eq!(r.alpha, 3);
    assert!(r.witness == VertexSet::from(vec![0, 2, 4]) || r.witness == VertexSet::from(vec![1, 3, 5]));
}
