//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails. All comparisons are exact rationals
//! except the Monte Carlo criterion, which uses 4 standard errors.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use selkow_core::bounds::{caro_wei, selkow_bound};
use selkow_core::generate::{complete, counterexample_graph, cycle, hypercube, path, star, CounterexampleSpec};
use selkow_core::graph::Graph;
use selkow_core::oracle::{
    binomial, bound_sandwich, enumerate_exact, factorial, refutation_check, verify_proof_chain,
    ProofChainReport, DEFAULT_ALPHA_LIMIT, DEFAULT_ENUMERATION_LIMIT,
};
use selkow_core::rational::{self, integer, inverse_succ, ratio, Rational};
use selkow_core::sampler::{las_vegas_search, monte_carlo, Estimand, DEFAULT_MAX_TRIALS};
use selkow_core::suite::{extended_suite, small_suite, SuiteGraph};
use selkow_core::{with_threads, DEFAULT_SEED};

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

const MC_TRIALS: u64 = 100_000;
const MC_SIGMAS: f64 = 4.0;
const TIME_BUDGET: Duration = Duration::from_secs(60);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn refutation_reproduction() -> Outcome {
    let start = Instant::now();
    let mut cases = 0;
    for n in [7usize, 8, 9] {
        let size = n - 3;
        for (label, f) in [("empty", Graph::empty(size)), ("complete", complete(size)), ("path", path(size))] {
            let r = refutation_check(&CounterexampleSpec::new(f), DEFAULT_ENUMERATION_LIMIT)
                .map_err(|e| e.to_string())?;
            let closed = Rational::new(binomial(n - 1, 2) * factorial(n - 3), factorial(n));
            let half_n = ratio(1, 2 * n as i64);
            ensure(closed == half_n, || format!("n={n}: closed form {closed} != 1/(2n)"))?;
            ensure(r.enumerated.as_ref() == Some(&half_n), || {
                format!("n={n}, F={label}: enumerated {:?}", r.enumerated)
            })?;
            ensure(half_n < ratio(1, 12), || format!("n={n}: 1/(2n) not below 1/12"))?;
            ensure(r.claimed_lower_bound == ratio(1, 12), || format!("n={n}: claim {}", r.claimed_lower_bound))?;
            ensure(r.epsilon == ratio(6, n as i64), || format!("n={n}: epsilon {}", r.epsilon))?;
            ensure(r.refuted && r.consistent(), || format!("n={n}, F={label}: report inconsistent"))?;
            cases += 1;
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < TIME_BUDGET, || format!("took {elapsed:?}"))?;
    Ok(format!("{cases} cases, P(v in I2) = 1/(2n) < 1/12, epsilon = 6/n, {elapsed:.2?}"))
}

fn expectation_identity(chains: &[(SuiteGraph, ProofChainReport)]) -> Outcome {
    ensure(chains.len() >= 200, || format!("suite has only {} graphs", chains.len()))?;
    for (sg, r) in chains {
        let cw = caro_wei(&sg.graph);
        ensure(r.stats.expected_i1 == cw, || {
            format!("{}: E|I1| = {} but CW = {cw}", sg.name, r.stats.expected_i1)
        })?;
    }
    Ok(format!("E|I1| = CW(G) exactly on {} graphs", chains.len()))
}

fn per_vertex_identity(chains: &[(SuiteGraph, ProofChainReport)]) -> Outcome {
    let mut vertices = 0;
    for (sg, r) in chains {
        for v in 0..sg.graph.n() {
            let expected = inverse_succ(sg.graph.degree(v));
            ensure(r.stats.prob_in_i1[v] == expected, || {
                format!("{}: P({v} in I1) = {} != {expected}", sg.name, r.stats.prob_in_i1[v])
            })?;
            vertices += 1;
        }
    }
    Ok(format!("P(v in I1) = 1/(d(v)+1) for {vertices} vertices"))
}

fn bound_sandwich_criterion() -> Outcome {
    let suite = extended_suite();
    let mut max_n = 0;
    for sg in &suite {
        let r = bound_sandwich(&sg.graph, DEFAULT_ALPHA_LIMIT).map_err(|e| e.to_string())?;
        ensure(r.passed(), || {
            format!("{}: cw {} selkow {} alpha {}", sg.name, r.cw, r.selkow, r.alpha.alpha)
        })?;
        ensure(sg.graph.is_independent(&r.alpha.witness), || format!("{}: bad witness", sg.name))?;
        max_n = max_n.max(sg.graph.n());
    }
    Ok(format!("CW <= Selkow <= alpha on {} graphs up to n = {max_n}", suite.len()))
}

fn proof_chain(chains: &[(SuiteGraph, ProofChainReport)]) -> Outcome {
    let mut checks = 0;
    for (sg, r) in chains {
        let selkow = selkow_bound(&sg.graph).selkow;
        let s = &r.stats;
        ensure(&s.expected_i1 + &s.expected_residual_cw >= selkow, || {
            format!("{}: (a) fails", sg.name)
        })?;
        for v in 0..sg.graph.n() {
            let rhs = sg
                .graph
                .neighbors(v)
                .iter()
                .fold(inverse_succ(sg.graph.degree(v)), |acc, &u| acc + inverse_succ(sg.graph.degree(u)));
            ensure(integer(1) - &s.prob_in_h[v] <= rhs, || format!("{}: (b) fails at {v}", sg.name))?;
        }
        ensure(s.expected_residual_cw_h >= s.expected_residual_cw, || {
            format!("{}: (c) fails", sg.name)
        })?;
        ensure(r.passed(), || format!("{}: chain report has a failing check", sg.name))?;
        checks += r.checks.len();
    }
    Ok(format!("(a), (b), (c) hold exactly on {} graphs ({checks} checks)", chains.len()))
}

fn regular_collapse() -> Outcome {
    let mut graphs: Vec<(String, Graph)> = Vec::new();
    for n in 3..=50 {
        graphs.push((format!("C{n}"), cycle(n)));
    }
    for n in 1..=50 {
        graphs.push((format!("K{n}"), complete(n)));
    }
    graphs.push(("Q3".into(), hypercube(3)));
    for (name, g) in &graphs {
        let r = selkow_bound(g);
        ensure(r.selkow == r.cw, || format!("{name}: selkow {} != cw {}", r.selkow, r.cw))?;
    }
    Ok(format!("Selkow = CW on {} regular graphs", graphs.len()))
}

fn monte_carlo_consistency() -> Outcome {
    let start = Instant::now();
    let ce = counterexample_graph(&CounterexampleSpec::new(Graph::empty(4)));
    let cases: Vec<(&str, Graph, usize)> = vec![
        ("P3", path(3), 0),
        ("C5", cycle(5), 0),
        ("K1,3", star(3), 1),
        ("counterexample n=7", ce.graph.clone(), ce.v),
    ];
    let mut worst: f64 = 0.0;
    for (name, g, v) in &cases {
        let exact = enumerate_exact(g, DEFAULT_ENUMERATION_LIMIT).map_err(|e| e.to_string())?;
        let estimands = [Estimand::SizeI1, Estimand::SizeI2, Estimand::InI2(*v), Estimand::InResidual(*v)];
        let truth = [
            exact.expected_i1.clone(),
            exact.expected_i2.clone(),
            exact.prob_in_i2[*v].clone(),
            exact.prob_in_h[*v].clone(),
        ];
        let reports = monte_carlo(g, &estimands, MC_TRIALS, DEFAULT_SEED).map_err(|e| e.to_string())?;
        let rerun = monte_carlo(g, &estimands, MC_TRIALS, DEFAULT_SEED).map_err(|e| e.to_string())?;
        ensure(reports == rerun, || format!("{name}: rerun differs"))?;
        for (r, t) in reports.iter().zip(&truth) {
            let diff = (rational::to_f64(&r.mean) - rational::to_f64(t)).abs();
            if r.standard_error == 0.0 {
                ensure(&r.mean == t, || format!("{name} {}: {} != {t} with zero spread", r.estimand, r.mean))?;
            } else {
                let z = diff / r.standard_error;
                worst = worst.max(z);
                ensure(z <= MC_SIGMAS, || {
                    format!("{name} {}: mean {} vs exact {t}, z = {z:.2}", r.estimand, rational::to_decimal(&r.mean, 6))
                })?;
            }
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < TIME_BUDGET, || format!("took {elapsed:?}"))?;
    Ok(format!("16 estimates within {MC_SIGMAS} SE (worst z = {worst:.2}), reruns identical, {elapsed:.2?}"))
}

fn las_vegas_guarantee() -> Outcome {
    let graphs: Vec<SuiteGraph> = extended_suite().into_iter().filter(|g| g.graph.n() <= 12).collect();
    let mut max_trials_used = 0;
    for sg in &graphs {
        let out = las_vegas_search(&sg.graph, None, DEFAULT_MAX_TRIALS, DEFAULT_SEED).map_err(|e| e.to_string())?;
        let target = rational::ceil(&selkow_bound(&sg.graph).selkow);
        ensure(sg.graph.is_independent(&out.best), || format!("{}: returned set not independent", sg.name))?;
        ensure(out.reached && BigInt::from(out.best.len()) >= target, || {
            format!("{}: best {} < target {target} after {} trials", sg.name, out.best.len(), out.trials)
        })?;
        max_trials_used = max_trials_used.max(out.trials);
    }
    Ok(format!(
        "target ceil(Selkow) reached on {} graphs, at most {max_trials_used} trials",
        graphs.len()
    ))
}

fn threshold_property() -> Outcome {
    let twelfth = ratio(1, 12);
    let first = (4..100usize)
        .find(|&n| ratio(1, 2 * n as i64) < twelfth)
        .expect("threshold below 100");
    ensure(first == 7, || format!("first refuting n is {first}"))?;
    for size in 1..=6 {
        let r = refutation_check(&CounterexampleSpec::new(Graph::empty(size)), DEFAULT_ENUMERATION_LIMIT)
            .map_err(|e| e.to_string())?;
        ensure(r.refuted == (r.n >= 7), || format!("n={}: verdict {}", r.n, r.refuted))?;
    }
    let r = refutation_check(&CounterexampleSpec::new(Graph::empty(1)), DEFAULT_ENUMERATION_LIMIT)
        .map_err(|e| e.to_string())?;
    ensure(r.enumerated == Some(ratio(1, 8)), || format!("n=4: {:?}", r.enumerated))?;
    ensure(ratio(1, 8) > twelfth && !r.refuted, || "n=4 refuted".into())?;
    Ok("smallest refuting n = 7; n = 4 gives P = 1/8 > 1/12".into())
}

fn parallel_determinism() -> Outcome {
    let graphs = [
        path(8),
        counterexample_graph(&CounterexampleSpec::new(path(5))).graph,
        selkow_core::generate::gnp(9, 0.4, 3).unwrap(),
    ];
    let estimands = [Estimand::SizeI1, Estimand::SizeI2, Estimand::InI2(0), Estimand::InResidual(1)];
    for g in &graphs {
        let baseline = with_threads(1, || enumerate_exact(g, DEFAULT_ENUMERATION_LIMIT)).map_err(|e| e.to_string())?;
        let mc_baseline = with_threads(1, || monte_carlo(g, &estimands, 20_000, 17)).map_err(|e| e.to_string())?;
        for threads in [2, 3, 8] {
            let stats = with_threads(threads, || enumerate_exact(g, DEFAULT_ENUMERATION_LIMIT)).map_err(|e| e.to_string())?;
            ensure(stats == baseline, || format!("enumeration differs at {threads} threads"))?;
            let mc = with_threads(threads, || monte_carlo(g, &estimands, 20_000, 17)).map_err(|e| e.to_string())?;
            ensure(mc == mc_baseline, || format!("Monte Carlo differs at {threads} threads"))?;
        }
    }
    Ok(format!("identical results at 1, 2, 3, 8 threads on {} graphs", graphs.len()))
}

fn main() -> ExitCode {
    let chains: Vec<(SuiteGraph, ProofChainReport)> = small_suite()
        .into_iter()
        .map(|sg| {
            let r = verify_proof_chain(&sg.graph, DEFAULT_ENUMERATION_LIMIT).expect("n <= 8");
            (sg, r)
        })
        .collect();

    let criteria: Vec<Criterion<'_>> = vec![
        ("AC1 refutation reproduction", Box::new(refutation_reproduction)),
        ("AC2 E|I1| = CW(G)", Box::new(|| expectation_identity(&chains))),
        ("AC3 P(v in I1) = 1/(d(v)+1)", Box::new(|| per_vertex_identity(&chains))),
        ("AC4 bound sandwich", Box::new(bound_sandwich_criterion)),
        ("AC5 corrected proof chain", Box::new(|| proof_chain(&chains))),
        ("AC6 regular-graph collapse", Box::new(regular_collapse)),
        ("AC7 Monte Carlo consistency", Box::new(monte_carlo_consistency)),
        ("AC8 Las Vegas guarantee", Box::new(las_vegas_guarantee)),
        ("AC9 threshold property", Box::new(threshold_property)),
        ("AC10 parallel determinism", Box::new(parallel_determinism)),
    ];

    let mut failed = 0;
    for (name, run) in &criteria {
        match run() {
            Ok(detail) => println!("[PASS] {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("[FAIL] {name}: {why}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
