//! Dense configurations with exactly counted faces and small vertex spans.
//!
//! Two families are built here. The *interval corner* lives in the integer
//! addition grid: an `r × r` corner keeps the cells whose labels are the `s`
//! most popular, giving `sr − s(s−1)/4 − ½⌊s/2⌋` faces on `2r + s` vertices.
//! The *block product* lives in an elementary abelian grid `Z_p^m` and takes
//! a union of aligned sub-blocks whose face count is a perfect square. On
//! top of both sits a vertex-budget table: the best face count either family
//! achieves for each budget, and the least budget reaching a target count.

use crate::arith::{checked_pow, digits_base, is_prime};
use crate::error::{Error, Result};
use crate::grids::{Configuration, TripleSystem};
use crate::group::{build_group, GroupSpec, DEFAULT_ORDER_CAP};
use std::collections::BTreeMap;

/// Split of a vertex budget `v` into an `r × r` corner with `s` labels.
///
/// `r = ⌊v/3⌋` and `s = min(v − 2r, 2r − 1)`, so `2r + s ≤ v` always, with
/// equality unless the clip at `2r − 1` bites (which happens only for
/// `v = 3r + 2, r ≤ 2`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntervalPlan {
    pub v: u64,
    pub r: u64,
    pub s: u64,
}

impl IntervalPlan {
    pub fn new(v: u64) -> Result<IntervalPlan> {
        if v < 3 {
            return Err(Error::BudgetTooSmall(format!(
                "budget {v} cannot host a triple (3 vertices needed)"
            )));
        }
        let r = v / 3;
        let s = (v - 2 * r).min(2 * r - 1);
        Ok(IntervalPlan { v, r, s })
    }
}

/// Exact face count of the `r × r` interval corner keeping the `s` most
/// popular labels: `sr − s(s−1)/4 − ½⌊s/2⌋`, which is always an integer.
pub fn interval_face_count(r: u64, s: u64) -> Result<u64> {
    if r < 1 {
        return Err(Error::OutOfRange("corner side r must be at least 1".into()));
    }
    if s < 1 || s > 2 * r - 1 {
        return Err(Error::OutOfRange(format!(
            "label count s = {s} must lie in 1..={}",
            2 * r - 1
        )));
    }
    let quadruple = 4 * s * r - s * (s - 1) - 2 * (s / 2);
    assert_eq!(quadruple % 4, 0, "face-count formula must be integral");
    Ok(quadruple / 4)
}

/// Keeps, inside the top-left `r × r` corner of `parent`, the cells whose
/// labels are among the `s` most frequent there (ties to the smaller
/// label). Works over any parent grid whose leading `r` rows and columns
/// are fully filled.
fn corner_top_labels(parent: TripleSystem, r: usize, s: usize) -> Result<Configuration> {
    if parent.rows().len() < r || parent.cols().len() < r {
        return Err(Error::GridTooSmall(format!(
            "parent grid is {}×{}, corner needs {r}×{r}",
            parent.rows().len(),
            parent.cols().len()
        )));
    }
    let rows = &parent.rows()[..r];
    let cols = &parent.cols()[..r];
    let mut counts: BTreeMap<usize, u64> = BTreeMap::new();
    for &row in rows {
        for &col in cols {
            let label = parent.label_of(row, col).ok_or_else(|| {
                Error::GridTooSmall(format!("cell ({row}, {col}) of the corner is empty"))
            })?;
            *counts.entry(label).or_insert(0) += 1;
        }
    }
    let mut by_popularity: Vec<(usize, u64)> = counts.into_iter().collect();
    by_popularity.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
    let chosen: Vec<usize> = by_popularity.iter().take(s).map(|&(l, _)| l).collect();
    let mut triples = Vec::new();
    for &row in rows {
        for &col in cols {
            let label = parent.label_of(row, col).unwrap();
            if chosen.contains(&label) {
                triples.push((row, col, label));
            }
        }
    }
    Configuration::new(parent, triples)
}

/// The `r × r` corner with the `s` most popular labels, hosted in the
/// integer addition grid of side `k ≥ r`. Its face count is exactly
/// [`interval_face_count`]`(r, s)`.
pub fn interval_corner(r: u64, s: u64, k: usize) -> Result<Configuration> {
    interval_face_count(r, s)?; // validates the (r, s) ranges
    if (k as u64) < r {
        return Err(Error::GridTooSmall(format!(
            "grid side {k} is smaller than the corner side {r}"
        )));
    }
    let parent = TripleSystem::interval_grid(k)?;
    let config = corner_top_labels(parent, r as usize, s as usize)?;
    debug_assert_eq!(config.len() as u64, interval_face_count(r, s).unwrap());
    Ok(config)
}

/// The interval-corner configuration for vertex budget `v`, hosted in the
/// integer addition grid of side `k ≥ r`. Its face count is exactly
/// [`interval_face_count`] for the plan's `(r, s)`.
pub fn interval_construction(v: u64, k: usize) -> Result<Configuration> {
    let plan = IntervalPlan::new(v)?;
    interval_corner(plan.r, plan.s, k)
}

/// Shape of the block-product construction at budget `v` over `Z_p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlockShape {
    /// `3p ≥ v`: a single copy of `Z_p` is wide enough to host the interval
    /// corner directly.
    Corner { r: u64, s: u64 },
    /// Aligned blocks: side `a·p^l` sub-square of `Z_p^{l+1}`, giving
    /// exactly `a²·p^{2l}` faces.
    Blocks { l: u32, a: u64 },
}

/// Chooses the block-product shape for budget `v` and prime `p`: the corner
/// regime when `3p ≥ v`, otherwise the smallest `l ≥ 1` with `3p^{l+1} > v`,
/// which puts `λ = v/p^l` in `[3, 3p)` and `a = ⌊(λ+1)/4⌋ ≥ 1` whenever
/// `λ ≥ 7`; for `λ < 7`, `a` is clamped to 1 (the span bound still holds
/// because a single block spans `3p^l ≤ v` vertices).
pub fn block_shape(v: u64, p: u64) -> Result<BlockShape> {
    if !is_prime(p) {
        return Err(Error::OutOfRange(format!("{p} is not prime")));
    }
    if v < 3 {
        return Err(Error::BudgetTooSmall(format!(
            "budget {v} cannot host a triple"
        )));
    }
    if 3 * p >= v {
        let plan = IntervalPlan::new(v)?;
        return Ok(BlockShape::Corner {
            r: plan.r,
            s: plan.s,
        });
    }
    let mut l = 1u32;
    loop {
        let next = checked_pow(p, l + 1)
            .ok_or_else(|| Error::OutOfRange(format!("p^{} overflows", l + 1)))?;
        if 3 * next > v {
            break;
        }
        l += 1;
    }
    let pl = checked_pow(p, l).unwrap();
    let a = ((v / pl + 1) / 4).max(1);
    Ok(BlockShape::Blocks { l, a })
}

/// Face count of the `r × r` corner with the `s` most popular labels when
/// the labels wrap modulo `p`: residue classes merge the interval label
/// counts, so for `p ≥ 2r − 1` this equals [`interval_face_count`], and for
/// smaller `p` it is strictly larger.
fn corner_face_count_mod(r: u64, s: u64, p: u64) -> u64 {
    let mut by_residue = vec![0u64; (p as usize).min(2 * r as usize)];
    for j in 0..2 * r - 1 {
        by_residue[(j % p) as usize] += (j + 1).min(r).min(2 * r - 1 - j);
    }
    by_residue.sort_unstable_by(|a, b| b.cmp(a));
    by_residue.into_iter().take(s as usize).sum()
}

/// Exact face count of [`block_construction`] for `(v, p)`.
pub fn block_face_count(v: u64, p: u64) -> Result<u64> {
    match block_shape(v, p)? {
        BlockShape::Corner { r, s } => Ok(corner_face_count_mod(r, s, p)),
        BlockShape::Blocks { l, a } => {
            let pl = checked_pow(p, l).ok_or_else(|| {
                Error::OutOfRange(format!("p^{l} overflows"))
            })?;
            a.checked_mul(a)
                .and_then(|aa| aa.checked_mul(pl * pl))
                .ok_or_else(|| Error::OutOfRange("face count overflows".into()))
        }
    }
}

/// Least ambient dimension `m` that hosts the construction for `(v, p)`.
pub fn block_min_dimension(v: u64, p: u64) -> Result<u32> {
    Ok(match block_shape(v, p)? {
        BlockShape::Corner { .. } => 1,
        BlockShape::Blocks { l, .. } => l + 1,
    })
}

/// The block-product configuration for budget `v` over `Z_p^m`.
///
/// In the corner regime the interval corner is laid out inside one `Z_p`
/// copy (the last coordinate). Otherwise rows and columns range over the
/// vectors whose leading coordinate is below `a` and whose next `l`
/// coordinates are free, all placed in the leading `l + 1` coordinates; the
/// face count is exactly `a²·p^{2l}` and the vertex span is at most `v`.
pub fn block_construction(v: u64, p: u64, m: u32) -> Result<Configuration> {
    let shape = block_shape(v, p)?;
    let needed = block_min_dimension(v, p)?;
    if m < needed {
        return Err(Error::DimensionTooSmall(format!(
            "(v, p) = ({v}, {p}) needs dimension at least {needed}, got {m}"
        )));
    }
    let order = checked_pow(p, m).ok_or_else(|| Error::OutOfRange("p^m overflows".into()))?;
    if order > DEFAULT_ORDER_CAP {
        return Err(Error::SpecTooLarge {
            order,
            cap: DEFAULT_ORDER_CAP,
        });
    }
    let spec = GroupSpec::ElementaryAbelian { p, m };
    let table = build_group(&spec, DEFAULT_ORDER_CAP)?;
    let parent = TripleSystem::from_group(&table);

    match shape {
        BlockShape::Corner { r, s } => {
            // Indices 0..p differ only in the last coordinate, so the
            // leading r×r corner of the index order is an interval corner
            // inside one cyclic copy (labels wrapping mod p).
            let config = corner_top_labels(parent, r as usize, s as usize)?;
            debug_assert_eq!(config.len() as u64, corner_face_count_mod(r, s, p));
            Ok(config)
        }
        BlockShape::Blocks { l, a } => {
            let pl = checked_pow(p, l).unwrap() as usize;
            let stride = checked_pow(p, m - l - 1).unwrap() as usize;
            let side: Vec<usize> = (0..(a as usize) * pl).map(|x| x * stride).collect();
            let mut triples = Vec::with_capacity(side.len() * side.len());
            for &row in &side {
                for &col in &side {
                    let label = parent
                        .label_of(row, col)
                        .expect("group grids are totally filled");
                    triples.push((row, col, label));
                }
            }
            let config = Configuration::new(parent, triples)?;
            debug_assert_eq!(config.len() as u64, block_face_count(v, p).unwrap());
            Ok(config)
        }
    }
}

/// Best face count the two construction families achieve within a vertex
/// budget of `v`: interval corners over all admissible `(r, s)` splits with
/// `2r + s ≤ v`, and block products over all primes `p < v`.
pub fn best_construction_faces(v: u64) -> Result<u64> {
    if v < 3 {
        return Err(Error::BudgetTooSmall(format!(
            "budget {v} cannot host a triple"
        )));
    }
    let mut best = 0u64;
    for s in 1..=v.saturating_sub(2) {
        let r = (v - s) / 2;
        if r >= 1 && s <= 2 * r - 1 {
            best = best.max(interval_face_count(r, s)?);
        }
    }
    for p in 2..v {
        if is_prime(p) {
            best = best.max(block_face_count(v, p)?);
        }
    }
    Ok(best)
}

/// Least vertex budget `v` whose [`best_construction_faces`] reaches `t`
/// faces. Grows like `√t`, so the scan terminates quickly.
pub fn bound_f(t: u64) -> Result<u64> {
    if t < 1 {
        return Err(Error::OutOfRange("face target must be at least 1".into()));
    }
    let mut v = 3u64;
    loop {
        if best_construction_faces(v)? >= t {
            return Ok(v);
        }
        v += 1;
    }
}

/// Chain of `t` faces inside the integer addition grid of side `k`: cells
/// `(i, j)` for `j ∈ {0, 1}` taken row-major, spanning `t + 3` vertices.
pub fn bes_interval(t: u64, k: usize) -> Result<Configuration> {
    if t < 3 {
        return Err(Error::OutOfRange("chain needs at least 3 faces".into()));
    }
    let rows_needed = t.div_ceil(2) as usize;
    if k < 2 || k < rows_needed {
        return Err(Error::GridTooSmall(format!(
            "grid side {k} cannot host {t} chain faces (needs ≥ {})",
            rows_needed.max(2)
        )));
    }
    let parent = TripleSystem::interval_grid(k)?;
    let mut triples = Vec::with_capacity(t as usize);
    for cell in 0..t as usize {
        let (i, j) = (cell / 2, cell % 2);
        triples.push((i, j, i + j));
    }
    let config = Configuration::new(parent, triples)?;
    assert!(config.span().total as u64 <= t + 3);
    Ok(config)
}

/// Least dimension `m` such that `Z_p^m` hosts the `t`-face chain of
/// [`bes_elementary`]: one coordinate for the chain line, plus enough to
/// index `⌈t / 2p⌉` disjoint lines.
pub fn bes_elementary_min_dimension(t: u64, p: u64) -> Result<u32> {
    if t < 3 {
        return Err(Error::OutOfRange("chain needs at least 3 faces".into()));
    }
    if !is_prime(p) {
        return Err(Error::OutOfRange(format!("{p} is not prime")));
    }
    let lines = t.div_ceil(2 * p);
    Ok(if lines == 1 {
        1
    } else {
        1 + digits_base(lines - 1, p)
    })
}

/// Chain of `t` faces inside `Z_p^m`, using only the two columns `0` and
/// `e_m`: faces `(row, 0)` and `(row, e_m)` alternate while `row` walks the
/// last-coordinate line, and every `2p` faces the walk jumps to a fresh
/// line. The two columns are shared globally and labels close up cyclically
/// within each line, so `t` faces span at most `t + 3` vertices (exactly
/// `t + 2` when the last line is completed).
pub fn bes_elementary(t: u64, p: u64, m: u32) -> Result<Configuration> {
    let needed = bes_elementary_min_dimension(t, p)?;
    if m < needed {
        return Err(Error::DimensionTooSmall(format!(
            "(t, p) = ({t}, {p}) needs dimension at least {needed}, got {m}"
        )));
    }
    let order = checked_pow(p, m).ok_or_else(|| Error::OutOfRange("p^m overflows".into()))?;
    if order > DEFAULT_ORDER_CAP {
        return Err(Error::SpecTooLarge {
            order,
            cap: DEFAULT_ORDER_CAP,
        });
    }
    let spec = GroupSpec::ElementaryAbelian { p, m };
    let table = build_group(&spec, DEFAULT_ORDER_CAP)?;
    let parent = TripleSystem::from_group(&table);

    let p = p as usize;
    let per_line = 2 * p;
    let mut triples = Vec::with_capacity(t as usize);
    for cell in 0..t as usize {
        let line = cell / per_line;
        let within = cell % per_line;
        let (i, j) = (within / 2, within % 2);
        // Line bases carry the line index in the higher coordinates, i.e.
        // index `line · p`; the walk moves along the last coordinate.
        let row = line * p + i;
        let col = j;
        let label = parent
            .label_of(row, col)
            .expect("group grids are totally filled");
        triples.push((row, col, label));
    }
    let config = Configuration::new(parent, triples)?;
    assert!(config.span().total as u64 <= t + 3);
    Ok(config)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn interval_plan_splits() {
        let plan = IntervalPlan::new(16).unwrap();
        assert_eq!((plan.r, plan.s), (5, 6));
        let plan = IntervalPlan::new(3).unwrap();
        assert_eq!((plan.r, plan.s), (1, 1));
        // The clip at s = 2r−1 bites for v = 8.
        let plan = IntervalPlan::new(8).unwrap();
        assert_eq!((plan.r, plan.s), (2, 3));
        assert!(IntervalPlan::new(2).is_err());
    }

    #[test]
    fn face_count_formula_row() {
        // Independent count: in the r×r integer corner, label l is carried
        // by min(l+1, r, 2r−1−l) cells; the construction keeps the s most
        // popular labels.
        let naive = |r: u64, s: u64| -> u64 {
            let mut counts: Vec<u64> = (0..2 * r - 1)
                .map(|l| (l + 1).min(r).min(2 * r - 1 - l))
                .collect();
            counts.sort_unstable_by(|a, b| b.cmp(a));
            counts.into_iter().take(s as usize).sum()
        };
        for r in 1..12 {
            for s in 1..=2 * r - 1 {
                assert_eq!(
                    interval_face_count(r, s).unwrap(),
                    naive(r, s),
                    "r={r}, s={s}"
                );
            }
        }
        assert_eq!(interval_face_count(5, 6).unwrap(), 21);
        assert!(interval_face_count(3, 6).is_err());
    }

    #[test]
    fn interval_construction_counts_and_span() {
        let config = interval_construction(16, 5).unwrap();
        assert_eq!(config.len(), 21);
        assert!(config.span().total <= 16);
        // A bigger ambient grid hosts the same corner.
        let config = interval_construction(16, 9).unwrap();
        assert_eq!(config.len(), 21);
        assert!(interval_construction(16, 4).is_err());
    }

    #[test]
    fn small_budget_interval_constructions() {
        for (v, faces) in [(3, 1), (4, 1), (5, 1), (6, 3), (7, 4), (9, 7), (12, 12)] {
            let config = interval_construction(v, 8).unwrap();
            assert_eq!(config.len() as u64, faces, "v={v}");
            assert!(config.span().total as u64 <= v, "v={v}");
        }
    }

    #[test]
    fn block_shape_regimes() {
        assert_eq!(
            block_shape(12, 5).unwrap(),
            BlockShape::Corner { r: 4, s: 4 }
        );
        assert_eq!(block_shape(12, 2).unwrap(), BlockShape::Blocks { l: 2, a: 1 });
        assert_eq!(block_shape(50, 2).unwrap(), BlockShape::Blocks { l: 4, a: 1 });
        assert_eq!(block_shape(100, 3).unwrap(), BlockShape::Blocks { l: 3, a: 1 });
        // a grows past 1 once λ = v/p^l reaches 7, possible only for p ≥ 3.
        assert_eq!(block_shape(21, 3).unwrap(), BlockShape::Blocks { l: 1, a: 2 });
        assert!(block_shape(12, 4).is_err());
    }

    #[test]
    fn corner_face_count_merges_wrapped_labels() {
        // For p ≥ 2r−1 no labels wrap and the closed formula applies.
        for (r, s) in [(3, 4), (4, 4), (5, 6)] {
            assert_eq!(
                corner_face_count_mod(r, s, 2 * r - 1),
                interval_face_count(r, s).unwrap()
            );
            assert_eq!(
                corner_face_count_mod(r, s, 101),
                interval_face_count(r, s).unwrap()
            );
        }
        // p=3, r=3, s=3: every residue class has 3 cells in the 3×3 corner.
        assert_eq!(corner_face_count_mod(3, 3, 3), 9);
        // p=5, r=4, s=4: residue counts are (1+2, 2+1, 3, 4, 3) → top 4 = 13.
        assert_eq!(corner_face_count_mod(4, 4, 5), 13);
    }

    #[test]
    fn block_construction_counts() {
        for (v, p, m) in [
            (12u64, 2u64, 3u32),
            (12, 2, 4),
            (21, 3, 2),
            (27, 3, 3),
            (50, 2, 5),
            (10, 5, 1),
            (12, 5, 1),
        ] {
            let config = block_construction(v, p, m).unwrap();
            assert_eq!(
                config.len() as u64,
                block_face_count(v, p).unwrap(),
                "(v,p,m)=({v},{p},{m})"
            );
            assert!(config.span().total as u64 <= v, "(v,p,m)=({v},{p},{m})");
        }
        assert_eq!(block_face_count(12, 2).unwrap(), 16);
        assert_eq!(block_face_count(21, 3).unwrap(), 36);
        assert_eq!(block_face_count(12, 5).unwrap(), 13);
    }

    #[test]
    fn block_construction_dimension_gate() {
        assert!(matches!(
            block_construction(50, 2, 4),
            Err(Error::DimensionTooSmall(_))
        ));
        assert!(block_construction(50, 2, 5).is_ok());
    }

    #[test]
    fn block_faces_beat_v_squared_over_49() {
        for v in 3..200u64 {
            let mut best = 0;
            for p in 2..v {
                if is_prime(p) {
                    best = best.max(block_face_count(v, p).unwrap());
                }
            }
            if v >= 4 {
                assert!(49 * best >= v * v, "v={v}: best={best}");
            }
        }
    }

    #[test]
    fn bound_f_small_values() {
        assert_eq!(bound_f(1).unwrap(), 3);
        assert_eq!(bound_f(3).unwrap(), 6);
        // The full Z2 table reaches 4 faces on 6 vertices.
        assert_eq!(bound_f(4).unwrap(), 6);
        assert_eq!(bound_f(5).unwrap(), 8);
        assert_eq!(bound_f(10).unwrap(), 11);
        // Monotone in t.
        let mut prev = 0;
        for t in 1..60 {
            let v = bound_f(t).unwrap();
            assert!(v >= prev);
            prev = v;
        }
    }

    #[test]
    fn bes_interval_chain() {
        let config = bes_interval(4, 2).unwrap();
        assert_eq!(
            config.triples(),
            &[(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 2)]
        );
        assert_eq!(config.span().total, 7);
        let config = bes_interval(3, 4).unwrap();
        assert_eq!(config.span().total, 6);
        assert!(bes_interval(2, 4).is_err());
        assert!(bes_interval(9, 4).is_err());
        assert!(bes_interval(9, 5).is_ok());
    }

    #[test]
    fn bes_interval_spans_exactly_t_plus_3() {
        for t in 3..30u64 {
            let config = bes_interval(t, 20).unwrap();
            assert_eq!(config.len() as u64, t);
            assert_eq!(config.span().total as u64, t + 3, "t={t}");
        }
    }

    #[test]
    fn bes_elementary_dimension() {
        assert_eq!(bes_elementary_min_dimension(4, 2).unwrap(), 1);
        assert_eq!(bes_elementary_min_dimension(5, 2).unwrap(), 2);
        assert_eq!(bes_elementary_min_dimension(200, 2).unwrap(), 7);
        assert_eq!(bes_elementary_min_dimension(12, 3).unwrap(), 2);
        assert_eq!(bes_elementary_min_dimension(6, 3).unwrap(), 1);
    }

    #[test]
    fn bes_elementary_chain_spans() {
        for (t, p, m) in [
            (4u64, 2u64, 1u32),
            (5, 2, 2),
            (8, 2, 2),
            (200, 2, 7),
            (30, 3, 3),
            (31, 3, 3),
            (50, 5, 2),
            (11, 7, 1),
        ] {
            let config = bes_elementary(t, p, m).unwrap();
            assert_eq!(config.len() as u64, t, "(t,p)=({t},{p})");
            assert!(config.span().total as u64 <= t + 3, "(t,p)=({t},{p})");
        }
        // Completed lines use exactly t + 2 vertices: the two shared columns
        // plus one row and one label per two faces.
        let config = bes_elementary(30, 3, 3).unwrap();
        assert_eq!(config.span().total, 32);
        // Lines are row-disjoint and share the two columns.
        let config = bes_elementary(8, 2, 3).unwrap();
        let rows: BTreeSet<usize> = config.triples().iter().map(|t| t.0).collect();
        assert_eq!(rows, BTreeSet::from([0, 1, 2, 3]));
        let cols: BTreeSet<usize> = config.triples().iter().map(|t| t.1).collect();
        assert_eq!(cols, BTreeSet::from([0, 1]));
    }

    #[test]
    fn bes_elementary_gates() {
        assert!(matches!(
            bes_elementary(5, 2, 1),
            Err(Error::DimensionTooSmall(_))
        ));
        assert!(bes_elementary(3, 4, 2).is_err());
        assert!(bes_elementary(2, 2, 2).is_err());
    }
}
