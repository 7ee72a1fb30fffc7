//! Brute-force optima over small vertex budgets.
//!
//! [`max_faces`] enumerates every split of the budget into row and column
//! subsets (label vertices are then chosen greedily, which is exact: the
//! best labels for a fixed cell rectangle are simply the most frequent
//! ones). [`min_span`] inverts it; the `f_prime_exact` / `g_prime_exact`
//! wrappers pin the two ambient families and report whether widening the
//! ambient grid stops changing the answer.
//!
//! Enumeration order is canonical — subset-size totals ascending, then row
//! sizes ascending, then combination rank — and the node budget always cuts
//! a prefix of that order, so results are reproducible for a fixed budget
//! regardless of thread count. The wall-clock cap is a safety valve only;
//! when it fires, `exhaustive` is false and the result may depend on timing.

use crate::arith::binomial;
use crate::error::{Error, Result};
use crate::grids::{Configuration, TripleSystem};
use crate::group::{build_group, GroupSpec, DEFAULT_ORDER_CAP};
use rayon::prelude::*;
use std::time::{Duration, Instant};

/// Resource limits for oracle searches.
#[derive(Debug, Clone, Copy)]
pub struct SearchBudget {
    /// Hard cap on the vertex budget `v` accepted by the exact wrappers.
    pub max_vertices: usize,
    /// Cap on evaluated (row set, column set) pairs per search.
    pub max_nodes: u64,
    /// Wall-clock safety valve.
    pub time_cap: Duration,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_vertices: 12,
            max_nodes: 20_000_000,
            time_cap: Duration::from_secs(300),
        }
    }
}

/// An optimum together with its witness and whether the search saw every
/// candidate (false when the node budget or time cap fired).
#[derive(Debug, Clone)]
pub struct OracleResult {
    pub optimum: u64,
    pub witness: Configuration,
    pub exhaustive: bool,
}

/// Result of an exact oracle that also probed a larger ambient grid.
#[derive(Debug, Clone)]
pub struct StabilizedOracle {
    pub result: OracleResult,
    /// The larger ambient grid gave the same optimum.
    pub stabilized: bool,
    /// The probe itself saw every candidate.
    pub probe_exhaustive: bool,
}

/// Lexicographic combination unranking: the `rank`-th `k`-subset of `0..n`.
fn unrank_combination(n: usize, k: usize, mut rank: u64, out: &mut Vec<usize>) {
    out.clear();
    let mut next = 0usize;
    let mut k = k;
    while k > 0 {
        let with_next = binomial((n - next - 1) as u64, (k - 1) as u64);
        if rank < with_next {
            out.push(next);
            k -= 1;
        } else {
            rank -= with_next;
        }
        next += 1;
    }
}

/// In-place lexicographic successor among `k`-subsets of `0..n`.
fn next_combination(combo: &mut [usize], n: usize) -> bool {
    let k = combo.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if combo[i] < n - k + i {
            combo[i] += 1;
            for j in i + 1..k {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

struct Dense {
    row_vals: Vec<usize>,
    col_vals: Vec<usize>,
    label_vals: Vec<usize>,
    /// Label id per (row id, col id); usize::MAX marks an empty cell.
    grid: Vec<Vec<usize>>,
}

const EMPTY: usize = usize::MAX;

fn densify(ts: &TripleSystem) -> Dense {
    let row_vals = ts.used_rows();
    let col_vals = ts.used_cols();
    let label_vals = ts.used_labels();
    let mut grid = vec![vec![EMPTY; col_vals.len()]; row_vals.len()];
    for &(r, c, l) in ts.triples() {
        let ri = row_vals.binary_search(&r).unwrap();
        let ci = col_vals.binary_search(&c).unwrap();
        let li = label_vals.binary_search(&l).unwrap();
        grid[ri][ci] = li;
    }
    Dense {
        row_vals,
        col_vals,
        label_vals,
        grid,
    }
}

/// Best face count achievable for one fixed row set over all column sets in
/// `c_range`, where the label budget is `s`. Returns the winner as
/// `(faces, column combination rank)`.
fn best_cols_for_rows(
    dense: &Dense,
    row_set: &[usize],
    b: usize,
    s: usize,
    c_range: std::ops::Range<u64>,
    scratch_counts: &mut Vec<u32>,
    scratch_touched: &mut Vec<usize>,
    scratch_combo: &mut Vec<usize>,
) -> (u64, u64) {
    let nc = dense.col_vals.len();
    let rows: Vec<&[usize]> = row_set.iter().map(|&ri| dense.grid[ri].as_slice()).collect();
    let mut best = (0u64, 0u64);
    unrank_combination(nc, b, c_range.start, scratch_combo);
    for c_rank in c_range {
        let mut faces_all = 0u64;
        for row in &rows {
            for &cj in scratch_combo.iter() {
                let li = row[cj];
                if li != EMPTY {
                    if scratch_counts[li] == 0 {
                        scratch_touched.push(li);
                    }
                    scratch_counts[li] += 1;
                    faces_all += 1;
                }
            }
        }
        let faces = if scratch_touched.len() <= s {
            faces_all
        } else {
            // Sum of the s largest label counts.
            let mut counts: Vec<u32> = scratch_touched
                .iter()
                .map(|&li| scratch_counts[li])
                .collect();
            let pivot = counts.len() - s;
            counts.select_nth_unstable(pivot);
            counts[pivot..].iter().map(|&c| c as u64).sum()
        };
        for &li in scratch_touched.iter() {
            scratch_counts[li] = 0;
        }
        scratch_touched.clear();
        if faces > best.0 {
            best = (faces, c_rank);
        }
        next_combination(scratch_combo, nc);
    }
    best
}

/// Exhaustively maximizes the number of faces over all configurations of
/// `ts` that touch at most `v` vertices in total. The witness is the first
/// optimum in canonical enumeration order; labels are the most frequent in
/// the winning rectangle, ties to the smaller label.
pub fn max_faces(ts: &TripleSystem, v: usize, budget: &SearchBudget) -> OracleResult {
    let dense = densify(ts);
    let nr = dense.row_vals.len();
    let nc = dense.col_vals.len();

    let empty = |exhaustive| OracleResult {
        optimum: 0,
        witness: Configuration::new(ts.clone(), vec![]).unwrap(),
        exhaustive,
    };
    if v < 3 || ts.is_empty() {
        return empty(true);
    }

    let start = Instant::now();
    let mut nodes_used = 0u64;
    let mut hit_cap = false;
    // Best = (faces, size-pair order index, row rank, col rank): the first
    // optimum in canonical order.
    let mut best: Option<(u64, usize, u64, u64)> = None;

    // Size pairs in canonical order: total ascending, then rows ascending.
    let mut size_pairs = Vec::new();
    for total in 2..=v - 1 {
        for a in 1..total.min(nr + 1) {
            let b = total - a;
            if b >= 1 && b <= nc && v - total >= 1 {
                size_pairs.push((a, b));
            }
        }
    }

    for (pair_idx, &(a, b)) in size_pairs.iter().enumerate() {
        if hit_cap {
            break;
        }
        let s = v - a - b;
        // No rectangle of this shape can beat the incumbent: its cell count
        // is an upper bound on faces, and ties never replace the incumbent.
        if let Some((faces, ..)) = best {
            if (a * b) as u64 <= faces {
                continue;
            }
        }
        let r_count = binomial(nr as u64, a as u64);
        let c_count = binomial(nc as u64, b as u64);
        let block_nodes = r_count.saturating_mul(c_count);
        let available = budget.max_nodes - nodes_used;
        let (r_limit, partial_c) = if block_nodes <= available {
            (r_count, 0u64)
        } else {
            hit_cap = true;
            (available / c_count, available % c_count)
        };
        if start.elapsed() > budget.time_cap {
            hit_cap = true;
            break;
        }

        let label_slots = dense.label_vals.len();
        let block_best = (0..r_count.min(r_limit + u64::from(partial_c > 0)))
            .into_par_iter()
            .map(|r_rank| {
                let mut combo = Vec::with_capacity(a);
                unrank_combination(nr, a, r_rank, &mut combo);
                let c_end = if r_rank < r_limit { c_count } else { partial_c };
                let mut counts = vec![0u32; label_slots];
                let mut touched = Vec::with_capacity(64);
                let mut c_combo = Vec::with_capacity(b);
                let (faces, c_rank) = best_cols_for_rows(
                    &dense,
                    &combo,
                    b,
                    s,
                    0..c_end,
                    &mut counts,
                    &mut touched,
                    &mut c_combo,
                );
                (faces, r_rank, c_rank)
            })
            .reduce(
                || (0, u64::MAX, u64::MAX),
                |x, y| {
                    // Max faces; ties to the earlier (row, col) rank.
                    if y.0 > x.0 || (y.0 == x.0 && (y.1, y.2) < (x.1, x.2)) {
                        y
                    } else {
                        x
                    }
                },
            );
        nodes_used += block_nodes.min(available);

        let (faces, r_rank, c_rank) = block_best;
        if faces > 0 {
            let replace = match best {
                None => true,
                Some((incumbent, ..)) => faces > incumbent,
            };
            if replace {
                best = Some((faces, pair_idx, r_rank, c_rank));
            }
        }
        if start.elapsed() > budget.time_cap {
            hit_cap = true;
        }
    }

    let Some((optimum, pair_idx, r_rank, c_rank)) = best else {
        return empty(!hit_cap);
    };

    // Reconstruct the witness rectangle and its best labels.
    let (a, b) = size_pairs[pair_idx];
    let s = v - a - b;
    let mut row_ids = Vec::new();
    unrank_combination(nr, a, r_rank, &mut row_ids);
    let mut col_ids = Vec::new();
    unrank_combination(nc, b, c_rank, &mut col_ids);
    let mut label_counts: Vec<(u32, usize)> = vec![(0, 0); dense.label_vals.len()];
    for (li, slot) in label_counts.iter_mut().enumerate() {
        slot.1 = li;
    }
    for &ri in &row_ids {
        for &ci in &col_ids {
            let li = dense.grid[ri][ci];
            if li != EMPTY {
                label_counts[li].0 += 1;
            }
        }
    }
    // Most frequent first, ties to the smaller label id.
    label_counts.sort_by(|x, y| y.0.cmp(&x.0).then(x.1.cmp(&y.1)));
    let chosen: Vec<bool> = {
        let mut chosen = vec![false; dense.label_vals.len()];
        for &(count, li) in label_counts.iter().take(s) {
            if count > 0 {
                chosen[li] = true;
            }
        }
        chosen
    };
    let mut triples = Vec::new();
    for &ri in &row_ids {
        for &ci in &col_ids {
            let li = dense.grid[ri][ci];
            if li != EMPTY && chosen[li] {
                triples.push((
                    dense.row_vals[ri],
                    dense.col_vals[ci],
                    dense.label_vals[li],
                ));
            }
        }
    }
    let witness = Configuration::new(ts.clone(), triples).unwrap();
    debug_assert_eq!(witness.len() as u64, optimum);
    debug_assert!(witness.span().total <= v);
    OracleResult {
        optimum,
        witness,
        exhaustive: !hit_cap,
    }
}

/// Least vertex budget whose [`max_faces`] optimum reaches `t` faces; the
/// witness is trimmed to its `t` lexicographically smallest triples.
/// `exhaustive` is the conjunction over all budgets tried, so a `false`
/// means the reported span is only an upper bound on the true optimum.
pub fn min_span(ts: &TripleSystem, t: u64, budget: &SearchBudget) -> Result<OracleResult> {
    if t < 1 {
        return Err(Error::OutOfRange("face target must be at least 1".into()));
    }
    if t > ts.len() as u64 {
        return Err(Error::Infeasible(format!(
            "the system has only {} triples, fewer than {t}",
            ts.len()
        )));
    }
    let upper = ts.used_rows().len() + ts.used_cols().len() + ts.used_labels().len();
    let mut exhaustive = true;
    for v in 3..=upper {
        let res = max_faces(ts, v, budget);
        exhaustive &= res.exhaustive;
        if res.optimum >= t {
            let trimmed: Vec<_> = res.witness.triples().iter().copied().take(t as usize).collect();
            let witness = Configuration::new(ts.clone(), trimmed)?;
            return Ok(OracleResult {
                optimum: v as u64,
                witness,
                exhaustive,
            });
        }
    }
    Err(Error::Infeasible(format!(
        "no vertex budget up to {upper} reaches {t} faces"
    )))
}

/// Exact best face count on `v` vertices inside integer addition grids,
/// computed in the side-`v` grid and confirmed stable against side `v + 1`.
pub fn f_prime_exact(v: usize, budget: &SearchBudget) -> Result<OracleResult> {
    if v < 3 {
        return Err(Error::OutOfRange("vertex budget must be at least 3".into()));
    }
    if v > budget.max_vertices {
        return Err(Error::BudgetTooSmall(format!(
            "exact search is capped at {} vertices, got {v}",
            budget.max_vertices
        )));
    }
    let base = max_faces(&TripleSystem::interval_grid(v)?, v, budget);
    let probe = max_faces(&TripleSystem::interval_grid(v + 1)?, v, budget);
    assert_eq!(
        base.optimum, probe.optimum,
        "optimum must stabilize: the v×v grid already contains every \
         configuration on v vertices"
    );
    Ok(OracleResult {
        optimum: base.optimum,
        witness: base.witness,
        exhaustive: base.exhaustive && probe.exhaustive,
    })
}

/// Exact best face count on `v` vertices inside the `Z_p^m` grid, with a
/// stabilization probe against `Z_p^{m+1}` (skipped, and reported as not
/// stabilized, if the bigger group would exceed the order cap).
pub fn g_prime_exact(v: usize, p: u64, m: u32, budget: &SearchBudget) -> Result<StabilizedOracle> {
    if v < 3 {
        return Err(Error::OutOfRange("vertex budget must be at least 3".into()));
    }
    if v > budget.max_vertices {
        return Err(Error::BudgetTooSmall(format!(
            "exact search is capped at {} vertices, got {v}",
            budget.max_vertices
        )));
    }
    let table = build_group(&GroupSpec::ElementaryAbelian { p, m }, DEFAULT_ORDER_CAP)?;
    let base = max_faces(&TripleSystem::from_group(&table), v, budget);
    let bigger = GroupSpec::ElementaryAbelian { p, m: m + 1 };
    let (stabilized, probe_exhaustive) = match build_group(&bigger, DEFAULT_ORDER_CAP) {
        Ok(big_table) => {
            let probe = max_faces(&TripleSystem::from_group(&big_table), v, budget);
            (probe.optimum == base.optimum, probe.exhaustive)
        }
        Err(_) => (false, false),
    };
    Ok(StabilizedOracle {
        result: base,
        stabilized,
        probe_exhaustive,
    })
}
