//! Lower bounds on the independence number from random vertex orderings.
//!
//! * [`bounds`]: the Caro-Wei bound and Selkow's neighborhood-corrected bound,
//!   as exact rationals.
//! * [`sampler`]: random orderings, the two-phase local-minimum construction,
//!   Monte Carlo estimation and a Las Vegas search that realizes Selkow's
//!   bound constructively.
//! * [`oracle`]: exhaustive enumeration over all orderings of small graphs,
//!   an exact independence number, and the counterexample that breaks the
//!   per-vertex second-phase estimate.

pub mod bounds;
pub mod error;
pub mod generate;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod rational;
pub mod rng;
pub mod sampler;
pub mod suite;

pub use bounds::{caro_wei, selkow_bound, selkow_correction, BoundReport};
pub use error::{Error, Result};
pub use generate::{counterexample_graph, Counterexample, CounterexampleSpec, GeneratorSpec};
pub use graph::{Graph, VertexSet};
pub use oracle::{brute_force_alpha, enumerate_exact, refutation_check, verify_proof_chain, ExactStats};
pub use rational::Rational;
pub use sampler::{
    las_vegas_search, monte_carlo, sample_ordering, two_phase, EstimateReport, Estimand, Ordering,
    TwoPhaseResult,
};

/// Fixed master seed used when none is given.
pub const DEFAULT_SEED: u64 = 0x5E1C_0B0D_1994_0363;

/// Runs `f` on a dedicated rayon pool with `threads` workers (0 picks
/// rayon's default). Results of this crate never depend on the choice.
pub fn with_threads<R: Send>(threads: usize, f: impl FnOnce() -> R + Send) -> R {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("thread pool")
        .install(f)
}
