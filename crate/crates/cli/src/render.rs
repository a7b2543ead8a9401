//! Human, JSON and CSV renderings of command results.
//!
//! JSON objects carry a `kind` tag. CSV output is a flat projection with the
//! columns `quantity,vertex,num,den,decimal,passed` (estimates use their own
//! header, see [`Renderer::estimates`]).

use std::io::{self, Write};

use anyhow::Result;
use serde::Serialize;

use selkow_core::bounds::BoundReport;
use selkow_core::generate::BaseFamily;
use selkow_core::graph::Graph;
use selkow_core::oracle::{Check, ExactStats, ProofChainReport, RefutationReport, SandwichReport};
use selkow_core::rational::{integer, to_decimal, Rational};
use selkow_core::sampler::{EstimateReport, LasVegasOutcome};

use crate::{Output, OutputArgs};

#[derive(Serialize)]
struct Tagged<'a, T: Serialize> {
    kind: &'a str,
    #[serde(flatten)]
    body: T,
}

#[derive(Serialize)]
struct Row<'a> {
    quantity: &'a str,
    vertex: Option<usize>,
    num: String,
    den: String,
    decimal: String,
    passed: Option<bool>,
}

pub struct Renderer {
    output: Output,
    digits: usize,
}

impl Renderer {
    pub fn new(args: &OutputArgs) -> Self {
        Renderer {
            output: args.output,
            digits: args.digits,
        }
    }

    fn dec(&self, r: &Rational) -> String {
        to_decimal(r, self.digits)
    }

    fn json<T: Serialize>(&self, kind: &str, body: T) -> Result<()> {
        let mut out = io::stdout().lock();
        serde_json::to_writer(&mut out, &Tagged { kind, body })?;
        writeln!(out)?;
        Ok(())
    }

    fn row<'a>(&self, quantity: &'a str, vertex: Option<usize>, r: &Rational, passed: Option<bool>) -> Row<'a> {
        Row {
            quantity,
            vertex,
            num: r.numer().to_string(),
            den: r.denom().to_string(),
            decimal: self.dec(r),
            passed,
        }
    }

    fn csv<'a>(&self, rows: impl IntoIterator<Item = Row<'a>>) -> Result<()> {
        let mut w = csv::Writer::from_writer(io::stdout().lock());
        for row in rows {
            w.serialize(row)?;
        }
        w.flush()?;
        Ok(())
    }

    fn check_rows<'a>(&self, checks: &'a [Check]) -> Vec<Row<'a>> {
        checks
            .iter()
            .map(|c| self.row(&c.name, None, &(&c.lhs - &c.rhs), Some(c.passed)))
            .collect()
    }

    fn print_checks(&self, checks: &[Check]) {
        for c in checks {
            println!(
                "  [{}] {}: {} {} {}",
                if c.passed { "ok" } else { "FAIL" },
                c.name,
                c.lhs,
                c.relation.symbol(),
                c.rhs
            );
        }
    }

    pub fn bounds(&self, graph: &Graph, report: &BoundReport) -> Result<()> {
        match self.output {
            Output::Json => {
                #[derive(Serialize)]
                struct Body<'a> {
                    n: usize,
                    edges: usize,
                    #[serde(flatten)]
                    report: &'a BoundReport,
                }
                self.json(
                    "bounds",
                    Body {
                        n: graph.n(),
                        edges: graph.edge_count(),
                        report,
                    },
                )
            }
            Output::Csv => {
                let mut rows = vec![
                    self.row("cw", None, &report.cw, None),
                    self.row("selkow", None, &report.selkow, None),
                ];
                for v in 0..graph.n() {
                    rows.push(self.row("cw_term", Some(v), &report.per_vertex_cw_term[v], None));
                    rows.push(self.row("correction", Some(v), &report.per_vertex_correction[v], None));
                }
                self.csv(rows)
            }
            Output::Human => {
                println!("graph: n = {}, m = {}", graph.n(), graph.edge_count());
                println!("{:>6} {:>6} {:>12} {:>12}", "vertex", "degree", "1/(d+1)", "correction");
                for v in 0..graph.n() {
                    println!(
                        "{:>6} {:>6} {:>12} {:>12}",
                        v,
                        graph.degree(v),
                        report.per_vertex_cw_term[v].to_string(),
                        report.per_vertex_correction[v].to_string()
                    );
                }
                println!("caro-wei: {} ({})", report.cw, self.dec(&report.cw));
                println!("selkow:   {} ({})", report.selkow, self.dec(&report.selkow));
                Ok(())
            }
        }
    }

    /// JSON lines, one per estimand. CSV columns:
    /// `estimand,vertex,trials,num,den,decimal,standard_error,seed`.
    pub fn estimates(&self, reports: &[EstimateReport]) -> Result<()> {
        match self.output {
            Output::Json => reports.iter().try_for_each(|r| self.json("estimate", r)),
            Output::Csv => {
                #[derive(Serialize)]
                struct EstimateRow<'a> {
                    estimand: &'a str,
                    vertex: Option<usize>,
                    trials: u64,
                    num: String,
                    den: String,
                    decimal: String,
                    standard_error: f64,
                    seed: u64,
                }
                let mut w = csv::Writer::from_writer(io::stdout().lock());
                for r in reports {
                    w.serialize(EstimateRow {
                        estimand: &r.estimand,
                        vertex: r.vertex,
                        trials: r.trials,
                        num: r.mean.numer().to_string(),
                        den: r.mean.denom().to_string(),
                        decimal: self.dec(&r.mean),
                        standard_error: r.standard_error,
                        seed: r.seed,
                    })?;
                }
                w.flush()?;
                Ok(())
            }
            Output::Human => {
                println!("{:>8} {:>7} {:>10} {:>14} {:>12}", "estimand", "vertex", "trials", "mean", "std.err");
                for r in reports {
                    println!(
                        "{:>8} {:>7} {:>10} {:>14} {:>12.6}",
                        r.estimand,
                        r.vertex.map(|v| v.to_string()).unwrap_or_else(|| "-".into()),
                        r.trials,
                        self.dec(&r.mean),
                        r.standard_error
                    );
                }
                println!("seed: {:#x}", reports.first().map_or(0, |r| r.seed));
                Ok(())
            }
        }
    }

    pub fn las_vegas(&self, out: &LasVegasOutcome) -> Result<()> {
        match self.output {
            Output::Json => self.json("las_vegas", out),
            Output::Csv => self.csv([Row {
                quantity: "las_vegas_best",
                vertex: None,
                num: out.best.len().to_string(),
                den: "1".into(),
                decimal: self.dec(&integer(out.best.len())),
                passed: Some(out.reached),
            }]),
            Output::Human => {
                println!(
                    "las vegas: best size {} (target {}) after {} trials: {}",
                    out.best.len(),
                    out.target_size,
                    out.trials,
                    if out.reached { "reached" } else { "NOT reached" }
                );
                println!("set: {:?}", out.best.as_slice());
                Ok(())
            }
        }
    }

    pub fn oracle(&self, stats: &ExactStats, checks: &[Check]) -> Result<()> {
        let passed = checks.iter().all(|c| c.passed);
        match self.output {
            Output::Json => {
                #[derive(Serialize)]
                struct Body<'a> {
                    #[serde(flatten)]
                    stats: &'a ExactStats,
                    checks: &'a [Check],
                    passed: bool,
                }
                self.json("oracle", Body { stats, checks, passed })
            }
            Output::Csv => {
                let mut rows = vec![
                    self.row("expected_i1", None, &stats.expected_i1, None),
                    self.row("expected_i2", None, &stats.expected_i2, None),
                    self.row("expected_union", None, &stats.expected_union, None),
                    self.row("expected_residual_cw", None, &stats.expected_residual_cw, None),
                    self.row("expected_residual_cw_h", None, &stats.expected_residual_cw_h, None),
                    self.row("expected_i1_plus_cw_h", None, &stats.expected_i1_plus_cw_h, None),
                ];
                for v in 0..stats.n {
                    rows.push(self.row("prob_in_i1", Some(v), &stats.prob_in_i1[v], None));
                    rows.push(self.row("prob_in_i2", Some(v), &stats.prob_in_i2[v], None));
                    rows.push(self.row("prob_in_h", Some(v), &stats.prob_in_h[v], None));
                }
                rows.extend(self.check_rows(checks));
                self.csv(rows)
            }
            Output::Human => {
                println!("orderings: {} (n = {})", stats.orderings, stats.n);
                for (name, r) in [
                    ("E|I1|", &stats.expected_i1),
                    ("E|I2|", &stats.expected_i2),
                    ("E|I1|+E|I2|", &stats.expected_union),
                    ("E sum_H 1/(d_G+1)", &stats.expected_residual_cw),
                    ("E CW(H)", &stats.expected_residual_cw_h),
                    ("E(|I1|+CW(H))", &stats.expected_i1_plus_cw_h),
                ] {
                    println!("{name:>18}: {r} ({})", self.dec(r));
                }
                println!("{:>6} {:>12} {:>12} {:>12}", "vertex", "P(in I1)", "P(in I2)", "P(in H)");
                for v in 0..stats.n {
                    println!(
                        "{:>6} {:>12} {:>12} {:>12}",
                        v,
                        stats.prob_in_i1[v].to_string(),
                        stats.prob_in_i2[v].to_string(),
                        stats.prob_in_h[v].to_string()
                    );
                }
                self.print_checks(checks);
                println!("{}", if passed { "all checks passed" } else { "CHECKS FAILED" });
                Ok(())
            }
        }
    }

    pub fn verify(&self, chain: &ProofChainReport, sandwich: &SandwichReport) -> Result<()> {
        let passed = chain.passed() && sandwich.passed();
        match self.output {
            Output::Json => {
                #[derive(Serialize)]
                struct Body<'a> {
                    chain: &'a ProofChainReport,
                    sandwich: &'a SandwichReport,
                    passed: bool,
                }
                self.json("verify", Body { chain, sandwich, passed })
            }
            Output::Csv => {
                let mut rows = vec![
                    self.row("cw", None, &sandwich.cw, None),
                    self.row("selkow", None, &sandwich.selkow, None),
                    self.row("alpha", None, &integer(sandwich.alpha.alpha), None),
                ];
                rows.extend(self.check_rows(&chain.checks));
                rows.extend(self.check_rows(&sandwich.checks));
                self.csv(rows)
            }
            Output::Human => {
                println!(
                    "cw = {}, selkow = {}, alpha = {} (witness {:?})",
                    sandwich.cw,
                    sandwich.selkow,
                    sandwich.alpha.alpha,
                    sandwich.alpha.witness.as_slice()
                );
                println!("proof chain over {} orderings:", chain.stats.orderings);
                self.print_checks(&chain.checks);
                println!("bound sandwich:");
                self.print_checks(&sandwich.checks);
                println!("{}", if passed { "all checks passed" } else { "CHECKS FAILED" });
                Ok(())
            }
        }
    }

    pub fn counterexample(&self, family: &BaseFamily, r: &RefutationReport) -> Result<()> {
        match self.output {
            Output::Json => {
                #[derive(Serialize)]
                struct Body<'a> {
                    family: String,
                    #[serde(flatten)]
                    report: &'a RefutationReport,
                    consistent: bool,
                }
                self.json(
                    "counterexample",
                    Body {
                        family: family.to_string(),
                        report: r,
                        consistent: r.consistent(),
                    },
                )
            }
            Output::Csv => {
                let mut rows = vec![
                    self.row("closed_form", None, &r.closed_form, None),
                    self.row("one_over_2n", None, &r.one_over_2n, None),
                    self.row("claimed_lower_bound", None, &r.claimed_lower_bound, None),
                    self.row("epsilon", None, &r.epsilon, None),
                ];
                if let Some(e) = &r.enumerated {
                    rows.push(self.row("enumerated", Some(r.designated.v), e, None));
                }
                rows.extend(self.check_rows(&r.checks));
                self.csv(rows)
            }
            Output::Human => {
                let d = &r.designated;
                println!(
                    "n = {}, F = {family} on {} vertices; v = {}, w = {}, x = {}",
                    r.n,
                    r.n - 3,
                    d.v,
                    d.w,
                    d.x
                );
                println!(
                    "closed form: C(n-1,2)(n-3)!/n! = {}/{} = {} ({})",
                    r.favorable_orderings,
                    r.total_orderings,
                    r.closed_form,
                    self.dec(&r.closed_form)
                );
                match &r.enumerated {
                    Some(e) => println!("enumerated P(v in I2) = {e}"),
                    None => println!("enumeration skipped (n above limit), closed form only"),
                }
                println!(
                    "claimed lower bound: {} ({})",
                    r.claimed_lower_bound,
                    self.dec(&r.claimed_lower_bound)
                );
                println!("ratio epsilon = {} ({})", r.epsilon, self.dec(&r.epsilon));
                self.print_checks(&r.checks);
                println!(
                    "verdict: {}",
                    if r.refuted {
                        "REFUTED (P(v in I2) is below the claimed bound)"
                    } else {
                        "not refuted at this size"
                    }
                );
                Ok(())
            }
        }
    }
}
