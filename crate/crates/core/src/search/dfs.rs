use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};

use rayon::prelude::*;

use super::{Detector, SearchConfig, SearchResult};
use crate::error::Result;
use crate::words::{Letter, Word};

const PROGRESS_EVERY: u64 = 1 << 24;
const FLUSH_EVERY: u64 = 1 << 12;

/// Shared counters for one search, possibly spread over several tasks.
struct Shared {
    nodes: AtomicU64,
    budget: u64,
    /// Index of the earliest task known to have reached the cap.
    first_capped: AtomicUsize,
}

impl Shared {
    fn out_of_budget(&self) -> bool {
        self.nodes.load(Ordering::Relaxed) >= self.budget
    }
}

#[derive(Debug)]
struct Outcome {
    best: Vec<Letter>,
    reached_cap: bool,
    budget_hit: bool,
    /// Nodes spent by this task alone.
    nodes: u64,
}

/// Letters worth trying after `distinct` different letters have been used.
fn candidate_limit(config: &SearchConfig, distinct: usize) -> usize {
    if config.symmetry_pruning {
        (distinct + 1).min(config.alphabet)
    } else {
        config.alphabet
    }
}

/// Depth-first search below `prefix` (assumed instance-free), trying letters
/// in increasing order. With `stop_depth`, words of that length are
/// collected instead of being extended.
fn explore(
    prefix: &[Letter],
    config: &SearchConfig,
    detector: &Detector,
    shared: &Shared,
    task: usize,
    mut collect: Option<(usize, &mut Vec<Vec<Letter>>)>,
) -> Outcome {
    let mut word = prefix.to_vec();
    let mut best = word.clone();
    let mut local: u64 = 0;
    let mut unflushed: u64 = 0;
    // distinct-letter count for every prefix length ≥ floor
    let distinct_of = |w: &[Letter]| w.iter().copied().max().map_or(0, |a| usize::from(a) + 1);
    let mut distinct = vec![distinct_of(&word)];
    // next letter to try at each open depth
    let mut next: Vec<usize> = vec![0];
    let flush_every = FLUSH_EVERY.min(shared.budget);
    let outcome = |best: Vec<Letter>, reached_cap, budget_hit, local| Outcome { best, reached_cap, budget_hit, nodes: local };

    if word.len() >= config.length_cap {
        return outcome(best, true, false, 0);
    }
    loop {
        let depth = next.len() - 1;
        let limit = candidate_limit(config, distinct[depth]);
        let letter = next[depth];
        if letter >= limit {
            // subtree done: backtrack
            next.pop();
            distinct.pop();
            if next.is_empty() {
                break;
            }
            word.pop();
            continue;
        }
        next[depth] += 1;
        word.push(letter as Letter);
        local += 1;
        unflushed += 1;
        if unflushed >= flush_every {
            let total = shared.nodes.fetch_add(unflushed, Ordering::Relaxed) + unflushed;
            unflushed = 0;
            if total / PROGRESS_EVERY != (total - flush_every) / PROGRESS_EVERY {
                log::info!("search: {total} nodes, best length so far {} (task {task})", best.len());
            }
            if total >= shared.budget {
                return outcome(best, false, true, local);
            }
            if shared.first_capped.load(Ordering::Relaxed) < task {
                // an earlier task already decided the answer
                return outcome(best, false, false, local);
            }
        }
        if detector.suffix_hit(&word) {
            word.pop();
            continue;
        }
        if word.len() > best.len() {
            best.clone_from(&word);
        }
        if word.len() >= config.length_cap {
            shared.nodes.fetch_add(unflushed, Ordering::Relaxed);
            shared.first_capped.fetch_min(task, Ordering::Relaxed);
            return outcome(best, true, false, local);
        }
        if let Some((stop, ref mut sink)) = collect {
            if word.len() >= stop {
                sink.push(word.clone());
                word.pop();
                continue;
            }
        }
        let d = distinct[depth].max(letter + 1);
        distinct.push(d);
        next.push(0);
    }
    shared.nodes.fetch_add(unflushed, Ordering::Relaxed);
    outcome(best, false, false, local)
}

/// Longest word over `Σ_m` containing no instance, found by exhaustive
/// backtracking up to `config.length_cap`.
///
/// Among words of maximal length the lexicographically first is reported.
/// The search is conclusive (`exhausted`) when the tree was completed or the
/// cap was reached; when the node budget runs out first the reported length
/// is only a lower bound, and which word is reported may depend on thread
/// scheduling.
pub fn longest_avoiding_word(config: &SearchConfig) -> Result<SearchResult> {
    let detector = Detector::new(config)?;
    let shared = Shared { nodes: AtomicU64::new(0), budget: config.node_budget, first_capped: AtomicUsize::new(usize::MAX) };

    let outcome = if config.split_depth == 0 || config.split_depth >= config.length_cap {
        explore(&[], config, &detector, &shared, 0, None)
    } else {
        // phase one: enumerate the frontier sequentially
        let mut frontier = Vec::new();
        let head = explore(&[], config, &detector, &shared, 0, Some((config.split_depth, &mut frontier)));
        if head.budget_hit || frontier.is_empty() {
            head
        } else {
            log::info!("search: {} subtrees at depth {}", frontier.len(), config.split_depth);
            let task_outcomes: Vec<Outcome> = frontier
                .par_iter()
                .enumerate()
                .map(|(task, prefix)| {
                    if shared.first_capped.load(Ordering::Relaxed) < task || shared.out_of_budget() {
                        return Outcome { best: prefix.clone(), reached_cap: false, budget_hit: shared.out_of_budget(), nodes: 0 };
                    }
                    explore(prefix, config, &detector, &shared, task, None)
                })
                .collect();
            merge(head, task_outcomes, &shared)
        }
    };
    let nodes_visited = outcome.nodes;
    Ok(SearchResult {
        max_length_found: outcome.best.len(),
        witness_word: Word::new(outcome.best, config.alphabet)?,
        exhausted: outcome.reached_cap || !outcome.budget_hit,
        reached_cap: outcome.reached_cap,
        budget_hit: outcome.budget_hit,
        nodes_visited,
    })
}

/// Combines the frontier phase with the subtree tasks: the longest word
/// wins, ties go to the earlier task. Tasks after the first capped one are
/// ignored so that the result does not depend on scheduling.
fn merge(head: Outcome, tasks: Vec<Outcome>, shared: &Shared) -> Outcome {
    let cut = shared.first_capped.load(Ordering::Relaxed);
    let mut best = head.best;
    let mut nodes = head.nodes;
    let mut budget_hit = false;
    let mut reached_cap = false;
    for (task, outcome) in tasks.into_iter().enumerate() {
        if task > cut {
            break;
        }
        nodes += outcome.nodes;
        budget_hit |= outcome.budget_hit;
        if outcome.best.len() > best.len() {
            best = outcome.best;
        }
        reached_cap |= outcome.reached_cap;
    }
    Outcome { best, reached_cap, budget_hit: budget_hit && !reached_cap, nodes }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::{Forbidden, PermModel};

    fn config(patterns: &str, m: usize, model: PermModel) -> SearchConfig {
        SearchConfig::new(m, Forbidden::parse_patterns(patterns).unwrap(), model)
    }

    #[test]
    fn fourth_powers_over_two_letters_are_avoidable() {
        // Thue–Morse avoids overlaps, hence 4-powers
        let result = longest_avoiding_word(&config("0000", 2, PermModel::FullCycle).with_cap(60)).unwrap();
        assert_eq!(result.max_length_found, 60);
        assert!(result.reached_cap && result.exhausted && !result.budget_hit);
    }

    #[test]
    fn everything_forbidden_over_two_letters() {
        // every length-4 word over {0,1} realises some pattern under the
        // swap, so no word of length 4 survives
        let all = "0000,0001,0010,0011,0012,0100,0101,0102,0110,0111,0112,0120,0121,0122,0123";
        let result = longest_avoiding_word(&config(all, 2, PermModel::AllPermutations).with_cap(50)).unwrap();
        assert_eq!(result.max_length_found, 3);
        assert!(result.exhausted && !result.reached_cap);
        assert_eq!(result.witness_word.to_string(), "000");
    }

    #[test]
    fn witness_avoids_and_is_lexicographically_first() {
        let cfg = config("0000,0101", 2, PermModel::AllPermutations).with_cap(40);
        let result = longest_avoiding_word(&cfg).unwrap();
        let detector = Detector::new(&cfg).unwrap();
        assert!(detector.find_in_word(result.witness_word.letters(), None).is_none());
        assert_eq!(result.witness_word.letters()[0], 0);
    }

    #[test]
    fn split_search_matches_sequential() {
        let base = config("0012,0000", 3, PermModel::FullCycle).with_cap(25);
        let seq = longest_avoiding_word(&base).unwrap();
        for depth in [1, 3, 6] {
            let par = longest_avoiding_word(&base.clone().with_split_depth(depth)).unwrap();
            assert_eq!(par.max_length_found, seq.max_length_found);
            assert_eq!(par.witness_word, seq.witness_word);
            assert_eq!(par.reached_cap, seq.reached_cap);
        }
    }

    #[test]
    fn split_search_matches_sequential_when_exhausting() {
        let base = config("0123,0012,0121,0001,0010", 4, PermModel::FullCycle).with_cap(60);
        let seq = longest_avoiding_word(&base).unwrap();
        let par = longest_avoiding_word(&base.clone().with_split_depth(5)).unwrap();
        assert_eq!((par.max_length_found, &par.witness_word), (seq.max_length_found, &seq.witness_word));
        assert_eq!(par.nodes_visited, seq.nodes_visited);
        assert!(par.exhausted && !par.reached_cap);
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let cfg = config("0000", 2, PermModel::FullCycle).with_cap(10_000).with_budget(5_000);
        let result = longest_avoiding_word(&cfg).unwrap();
        assert!(result.budget_hit && !result.exhausted);
        assert!(result.max_length_found > 0);
    }
}
