//! Exhaustive property searches over `Z/nZ`.
//!
//! Each search strategy fixes one admissible pair space; the shared driver
//! enumerates pairs in the pinned canonical order (sizes ascending, then
//! lexicographic on `(A, B)`), decides acyclic-matching existence per pair,
//! and reports either "holds" or the first counterexample. Strategies are
//! registered by name and selected at runtime.
//!
//! The pair space may be sharded into disjoint lexicographic blocks and the
//! blocks evaluated concurrently; the canonical witness is the
//! enumeration-order minimum among block findings, so reports are identical
//! for every thread count.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::Instant;

use rayon::prelude::*;

use crate::abelian::{GroupSpec, Subset};
use crate::cyclic::{
    binomial, full_mask, require_cyclic_width, subset_to_mask, sumset_mask, Combinations,
    PairEngine, PairVerdict,
};
use crate::error::{Error, Result};
use crate::matching::AcyclicMode;

/// Why a pair is a counterexample.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessKind {
    /// Matchings exist but none is acyclic.
    NoAcyclicMatching,
    /// The pair admits no matching at all.
    NoMatching,
}

/// A counterexample pair; re-running the decision on it reproduces the
/// verdict (see [`Witness::verify`]).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub a: Subset,
    pub b: Subset,
    pub kind: WitnessKind,
}

impl Witness {
    /// Re-runs the per-pair decision and confirms the recorded verdict.
    pub fn verify(&self, modulus: u64, mode: AcyclicMode) -> Result<bool> {
        let n = require_cyclic_width(modulus)?;
        let mut engine = PairEngine::new(n);
        let verdict = decide_pair(
            &mut engine,
            subset_to_mask(&self.a),
            subset_to_mask(&self.b),
            mode,
        );
        Ok(match self.kind {
            WitnessKind::NoAcyclicMatching => verdict.matchings > 0 && !verdict.acyclic_exists,
            WitnessKind::NoMatching => verdict.matchings == 0 && !verdict.acyclic_exists,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Holds,
    Counterexample(Witness),
}

/// Result of one exhaustive search run.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchReport {
    pub modulus: u64,
    pub property: String,
    pub outcome: Outcome,
    /// Admissible pairs decided, in canonical order, up to and including
    /// the witness (all of them when the property holds).
    pub pairs_examined: u64,
    pub elapsed_seconds: f64,
}

impl SearchReport {
    pub fn holds(&self) -> bool {
        matches!(self.outcome, Outcome::Holds)
    }

    pub fn witness(&self) -> Option<&Witness> {
        match &self.outcome {
            Outcome::Holds => None,
            Outcome::Counterexample(w) => Some(w),
        }
    }
}

/// One admissible pair space: which `(A, B)` are searched.
pub trait SearchStrategy: Sync {
    /// Registry key, e.g. `weak-acyclic`.
    fn name(&self) -> &'static str;
    /// Property label used in reports.
    fn property(&self) -> &'static str;
    /// Largest subset size that can occur in an admissible pair.
    fn max_pair_size(&self, n: u64) -> usize;
    /// Whether target subsets exclude the zero element.
    fn target_excludes_zero(&self) -> bool;
    /// Final admissibility filter on a candidate pair.
    fn admissible(&self, n: u32, a_mask: u64, b_mask: u64) -> bool;
}

/// Pairs with `A ∩ (A + B) = ∅` and `#A = #B` (every bijection between
/// them is a matching).
pub struct WeakAcyclicStrategy;

impl SearchStrategy for WeakAcyclicStrategy {
    fn name(&self) -> &'static str {
        "weak-acyclic"
    }

    fn property(&self) -> &'static str {
        "weak-acyclic-matching"
    }

    fn max_pair_size(&self, n: u64) -> usize {
        // A and A + B are disjoint and #(A + B) >= #B, so 2 #A <= n.
        (n / 2) as usize
    }

    fn target_excludes_zero(&self) -> bool {
        false
    }

    fn admissible(&self, n: u32, a_mask: u64, b_mask: u64) -> bool {
        a_mask & sumset_mask(a_mask, b_mask, n) == 0
    }
}

/// Pairs with `#A = #B` and `0 ∉ B`.
pub struct AcyclicStrategy;

impl SearchStrategy for AcyclicStrategy {
    fn name(&self) -> &'static str {
        "acyclic"
    }

    fn property(&self) -> &'static str {
        "acyclic-matching"
    }

    fn max_pair_size(&self, n: u64) -> usize {
        (n - 1) as usize
    }

    fn target_excludes_zero(&self) -> bool {
        true
    }

    fn admissible(&self, _n: u32, _a_mask: u64, b_mask: u64) -> bool {
        b_mask & 1 == 0
    }
}

static REGISTRY: [&dyn SearchStrategy; 2] = [&WeakAcyclicStrategy, &AcyclicStrategy];

/// All registered search strategies.
pub fn strategies() -> &'static [&'static dyn SearchStrategy] {
    &REGISTRY
}

/// Looks a strategy up by its registry key.
pub fn strategy(name: &str) -> Option<&'static dyn SearchStrategy> {
    REGISTRY.iter().copied().find(|s| s.name() == name)
}

/// Driver knobs. Defaults: unbounded sizes, definitional acyclicity,
/// no pruning, single thread, timing suppressed.
#[derive(Debug, Clone)]
pub struct SearchOptions {
    pub max_size: Option<usize>,
    pub mode: AcyclicMode,
    /// Restrict sources to `min(A) = 0`. Sound for "holds" verdicts by
    /// translation invariance; a found counterexample triggers an
    /// unpruned rerun so witnesses stay canonical.
    pub symmetry_pruning: bool,
    pub threads: usize,
    /// Record wall-clock time in the report (off keeps reports
    /// byte-identical across runs).
    pub record_elapsed: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            max_size: None,
            mode: AcyclicMode::Matchings,
            symmetry_pruning: false,
            threads: 1,
            record_elapsed: false,
        }
    }
}

fn decide_pair(
    engine: &mut PairEngine,
    a_mask: u64,
    b_mask: u64,
    mode: AcyclicMode,
) -> PairVerdict {
    match mode {
        AcyclicMode::Matchings => engine.verdict_matchings(a_mask, b_mask),
        AcyclicMode::Bijections => engine.verdict_bijections(a_mask, b_mask),
    }
}

struct Block {
    index: usize,
    size: usize,
    a_rank_start: u128,
    a_rank_end: u128,
}

enum BlockOutcome {
    /// Ran to completion (or to its local first witness).
    Done {
        examined: u64,
        witness: Option<(u64, u64, WitnessKind)>,
    },
    /// Abandoned because an earlier block already holds the canonical
    /// witness; its counts are irrelevant.
    Aborted,
}

struct Universe {
    n: u32,
    pin_zero_in_a: bool,
    b_offset: u64,
}

impl Universe {
    fn a_universe(&self, size: usize) -> (u64, usize) {
        if self.pin_zero_in_a {
            (self.n as u64 - 1, size - 1)
        } else {
            (self.n as u64, size)
        }
    }

    fn a_mask(&self, combo: &[u64]) -> u64 {
        let mut mask = if self.pin_zero_in_a { 1u64 } else { 0 };
        for &v in combo {
            mask |= 1 << (if self.pin_zero_in_a { v + 1 } else { v });
        }
        mask
    }

    fn b_universe(&self, size: usize) -> (u64, usize) {
        (self.n as u64 - self.b_offset, size)
    }

    fn b_mask(&self, combo: &[u64]) -> u64 {
        let mut mask = 0u64;
        for &v in combo {
            mask |= 1 << (v + self.b_offset);
        }
        mask
    }
}

fn run_block(
    engine: &mut PairEngine,
    strategy: &dyn SearchStrategy,
    universe: &Universe,
    block: &Block,
    mode: AcyclicMode,
    winner: &AtomicUsize,
) -> BlockOutcome {
    let (a_univ, a_size) = universe.a_universe(block.size);
    let (b_univ, b_size) = universe.b_universe(block.size);
    let mut a_combos = Combinations::seek(a_univ, a_size, block.a_rank_start);
    let mut examined = 0u64;
    let mut rank = block.a_rank_start;
    while rank < block.a_rank_end {
        if winner.load(Ordering::Relaxed) < block.index {
            return BlockOutcome::Aborted;
        }
        let Some(combo) = a_combos.next_combo() else {
            break;
        };
        let a_mask = universe.a_mask(combo);
        let mut b_combos = Combinations::new(b_univ, b_size);
        while let Some(bc) = b_combos.next_combo() {
            let b_mask = universe.b_mask(bc);
            if !strategy.admissible(universe.n, a_mask, b_mask) {
                continue;
            }
            examined += 1;
            let verdict = decide_pair(engine, a_mask, b_mask, mode);
            if !verdict.acyclic_exists {
                let kind = if verdict.matchings > 0 {
                    WitnessKind::NoAcyclicMatching
                } else {
                    WitnessKind::NoMatching
                };
                winner.fetch_min(block.index, Ordering::Relaxed);
                return BlockOutcome::Done {
                    examined,
                    witness: Some((a_mask, b_mask, kind)),
                };
            }
        }
        rank += 1;
    }
    BlockOutcome::Done {
        examined,
        witness: None,
    }
}

/// Runs one strategy's exhaustive search over `Z/nZ`.
pub fn run_search(
    strategy: &dyn SearchStrategy,
    modulus: u64,
    opts: &SearchOptions,
) -> Result<SearchReport> {
    let started = Instant::now();
    let n = require_cyclic_width(modulus)?;
    let spec = GroupSpec::cyclic(modulus)?;
    let universe = Universe {
        n,
        pin_zero_in_a: opts.symmetry_pruning,
        b_offset: if strategy.target_excludes_zero() {
            1
        } else {
            0
        },
    };

    let cap = strategy
        .max_pair_size(modulus)
        .min(opts.max_size.unwrap_or(usize::MAX));

    // Carve the source-subset stream of every size into contiguous rank
    // ranges; block order is the canonical enumeration order.
    let mut blocks = Vec::new();
    for size in 1..=cap {
        let (a_univ, a_size) = universe.a_universe(size);
        let total = binomial(a_univ, a_size);
        if total == 0 {
            continue;
        }
        let parts = if opts.threads > 1 {
            (opts.threads as u128 * 4).min(total)
        } else {
            1
        };
        let chunk = total.div_ceil(parts);
        let mut start = 0u128;
        while start < total {
            let end = (start + chunk).min(total);
            blocks.push(Block {
                index: blocks.len(),
                size,
                a_rank_start: start,
                a_rank_end: end,
            });
            start = end;
        }
    }

    let winner = AtomicUsize::new(usize::MAX);
    let results: Vec<BlockOutcome> = if opts.threads > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.threads)
            .build()
            .map_err(|e| Error::resource(format!("thread pool: {e}")))?;
        pool.install(|| {
            blocks
                .par_iter()
                .map_init(
                    || PairEngine::new(n),
                    |engine, block| {
                        run_block(engine, strategy, &universe, block, opts.mode, &winner)
                    },
                )
                .collect()
        })
    } else {
        let mut engine = PairEngine::new(n);
        let mut out = Vec::with_capacity(blocks.len());
        for block in &blocks {
            let r = run_block(&mut engine, strategy, &universe, block, opts.mode, &winner);
            let stop = matches!(
                r,
                BlockOutcome::Done {
                    witness: Some(_),
                    ..
                }
            );
            out.push(r);
            if stop {
                break;
            }
        }
        out
    };

    // Canonical witness: the first finding in block order; its prefix
    // count is thread-count-invariant.
    let mut pairs_examined = 0u64;
    let mut found: Option<(u64, u64, WitnessKind)> = None;
    for r in &results {
        match r {
            BlockOutcome::Done { examined, witness } => {
                pairs_examined += examined;
                if let Some(w) = witness {
                    found = Some(*w);
                    break;
                }
            }
            BlockOutcome::Aborted => {}
        }
    }

    if found.is_some() && opts.symmetry_pruning {
        // Pruning never produces witnesses; rerun in full to report the
        // canonical one.
        let mut unpruned = opts.clone();
        unpruned.symmetry_pruning = false;
        return run_search(strategy, modulus, &unpruned);
    }

    let outcome = match found {
        None => Outcome::Holds,
        Some((a_mask, b_mask, kind)) => Outcome::Counterexample(Witness {
            a: crate::cyclic::mask_to_subset(&spec, a_mask & full_mask(n)),
            b: crate::cyclic::mask_to_subset(&spec, b_mask & full_mask(n)),
            kind,
        }),
    };

    let property = match opts.mode {
        AcyclicMode::Matchings => strategy.property().to_string(),
        AcyclicMode::Bijections => format!("{}-bijections", strategy.property()),
    };

    Ok(SearchReport {
        modulus,
        property,
        outcome,
        pairs_examined,
        elapsed_seconds: if opts.record_elapsed {
            started.elapsed().as_secs_f64()
        } else {
            0.0
        },
    })
}

/// Checks the weak acyclic matching property of `Z/nZ` by enumerating all
/// pairs with `A ∩ (A + B) = ∅`, sizes ascending and optionally capped.
pub fn weak_acyclic_search(modulus: u64, max_size: Option<usize>) -> Result<SearchReport> {
    let opts = SearchOptions {
        max_size,
        ..SearchOptions::default()
    };
    run_search(&WeakAcyclicStrategy, modulus, &opts)
}

/// Checks the acyclic matching property of `Z/nZ` over all pairs with
/// `0 ∉ B`.
pub fn acyclic_property_search(modulus: u64) -> Result<SearchReport> {
    run_search(&AcyclicStrategy, modulus, &SearchOptions::default())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_lookup() {
        assert_eq!(strategy("weak-acyclic").unwrap().name(), "weak-acyclic");
        assert_eq!(strategy("acyclic").unwrap().name(), "acyclic");
        assert!(strategy("nope").is_none());
        assert_eq!(strategies().len(), 2);
    }

    #[test]
    fn weak_acyclic_holds_small() {
        for n in [2u64, 3, 6] {
            let report = weak_acyclic_search(n, None).unwrap();
            assert!(report.holds(), "n={n}");
            assert!(report.pairs_examined > 0);
        }
    }

    #[test]
    fn acyclic_holds_for_tiny_primes() {
        for p in [2u64, 3, 5] {
            let report = acyclic_property_search(p).unwrap();
            assert!(report.holds(), "p={p}");
        }
    }

    #[test]
    fn acyclic_counterexample_at_seven_verifies() {
        let report = acyclic_property_search(7).unwrap();
        let witness = report.witness().expect("Z/7Z lacks the property");
        assert_eq!(witness.kind, WitnessKind::NoAcyclicMatching);
        assert!(witness.verify(7, AcyclicMode::Matchings).unwrap());

        // a tampered witness must fail re-verification
        let spec = GroupSpec::cyclic(7).unwrap();
        let fake = Witness {
            a: Subset::from_residues(&spec, &[1]).unwrap(),
            b: Subset::from_residues(&spec, &[2]).unwrap(),
            kind: WitnessKind::NoAcyclicMatching,
        };
        assert!(!fake.verify(7, AcyclicMode::Matchings).unwrap());
    }

    #[test]
    fn reports_identical_across_thread_counts() {
        for (strat, n) in [("acyclic", 7u64), ("weak-acyclic", 8)] {
            let s = strategy(strat).unwrap();
            let single = run_search(s, n, &SearchOptions::default()).unwrap();
            for threads in [2usize, 5] {
                let multi = run_search(
                    s,
                    n,
                    &SearchOptions {
                        threads,
                        ..SearchOptions::default()
                    },
                )
                .unwrap();
                assert_eq!(single, multi, "strategy={strat} threads={threads}");
            }
        }
    }

    #[test]
    fn pruned_counterexample_matches_unpruned() {
        let s = strategy("acyclic").unwrap();
        let plain = run_search(s, 7, &SearchOptions::default()).unwrap();
        let pruned = run_search(
            s,
            7,
            &SearchOptions {
                symmetry_pruning: true,
                ..SearchOptions::default()
            },
        )
        .unwrap();
        assert_eq!(plain, pruned);
    }

    #[test]
    fn pruned_holds_agrees() {
        let s = strategy("weak-acyclic").unwrap();
        let plain = run_search(s, 9, &SearchOptions::default()).unwrap();
        let pruned = run_search(
            s,
            9,
            &SearchOptions {
                symmetry_pruning: true,
                ..SearchOptions::default()
            },
        )
        .unwrap();
        assert!(plain.holds() && pruned.holds());
        assert!(pruned.pairs_examined < plain.pairs_examined);
    }

    #[test]
    fn size_cap_limits_work() {
        let s = strategy("weak-acyclic").unwrap();
        let capped = run_search(
            s,
            10,
            &SearchOptions {
                max_size: Some(2),
                ..SearchOptions::default()
            },
        )
        .unwrap();
        let full = run_search(s, 10, &SearchOptions::default()).unwrap();
        assert!(capped.holds() && full.holds());
        assert!(capped.pairs_examined < full.pairs_examined);
    }

    #[test]
    fn rejects_bad_moduli() {
        assert!(weak_acyclic_search(1, None).is_err());
        assert!(weak_acyclic_search(65, None).is_err());
    }

    #[test]
    fn pairs_examined_matches_brute_admissibility_count() {
        // On a "holds" run the driver must have decided exactly the
        // admissible pairs; count them by raw subset-pair enumeration.
        use crate::cyclic::sumset_mask;
        for n in [5u64, 6, 8] {
            let full: u64 = (1 << n) - 1;
            let mut weak_count = 0u64;
            let mut acyclic_count = 0u64;
            for a in 1..=full {
                for b in 1..=full {
                    if a.count_ones() != b.count_ones() {
                        continue;
                    }
                    if a & sumset_mask(a, b, n as u32) == 0 {
                        weak_count += 1;
                    }
                    if b & 1 == 0 {
                        acyclic_count += 1;
                    }
                }
            }
            let weak = weak_acyclic_search(n, None).unwrap();
            assert!(weak.holds());
            assert_eq!(weak.pairs_examined, weak_count, "weak n={n}");
            if n == 5 {
                let acyclic = acyclic_property_search(n).unwrap();
                assert!(acyclic.holds());
                assert_eq!(acyclic.pairs_examined, acyclic_count, "acyclic n={n}");
            }
        }
    }
}
