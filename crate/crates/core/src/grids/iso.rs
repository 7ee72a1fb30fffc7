use crate::error::{Error, Result};
use crate::grids::TripleSystem;
use std::collections::BTreeMap;

/// Node budget for [`is_isomorphic`] that comfortably covers desk-scale
/// grids while bounding adversarial inputs.
pub const DEFAULT_ISO_BUDGET: u64 = 10_000_000;

/// A labelled-grid isomorphism: three vertex bijections (one per universe)
/// carrying the triples of one system exactly onto the triples of another.
/// Maps are keyed by the *used* vertices of the source system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridIsomorphism {
    pub row_map: BTreeMap<usize, usize>,
    pub col_map: BTreeMap<usize, usize>,
    pub label_map: BTreeMap<usize, usize>,
}

impl GridIsomorphism {
    /// Checks the claim from scratch: maps must be injective, cover exactly
    /// the used vertices of both sides, and biject the triple sets.
    pub fn validate(&self, a: &TripleSystem, b: &TripleSystem) -> std::result::Result<(), String> {
        if a.len() != b.len() {
            return Err(format!(
                "face counts differ: {} vs {}",
                a.len(),
                b.len()
            ));
        }
        let check_map = |map: &BTreeMap<usize, usize>,
                         used_a: Vec<usize>,
                         used_b: Vec<usize>,
                         what: &str|
         -> std::result::Result<(), String> {
            if map.len() != used_a.len() {
                return Err(format!(
                    "{what} map has {} entries, expected {}",
                    map.len(),
                    used_a.len()
                ));
            }
            let mut images: Vec<usize> = Vec::with_capacity(map.len());
            for (&k, &v) in map {
                if used_a.binary_search(&k).is_err() {
                    return Err(format!("{what} map keys unused vertex {k}"));
                }
                images.push(v);
            }
            images.sort_unstable();
            images.dedup();
            if images != used_b {
                return Err(format!("{what} map images do not cover the target"));
            }
            Ok(())
        };
        check_map(&self.row_map, a.used_rows(), b.used_rows(), "row")?;
        check_map(&self.col_map, a.used_cols(), b.used_cols(), "column")?;
        check_map(&self.label_map, a.used_labels(), b.used_labels(), "label")?;
        for &(r, c, l) in a.triples() {
            let t = (self.row_map[&r], self.col_map[&c], self.label_map[&l]);
            if !b.contains_triple(t) {
                return Err(format!(
                    "triple ({r}, {c}, {l}) maps to ({}, {}, {}), which is absent",
                    t.0, t.1, t.2
                ));
            }
        }
        // Injectivity plus equal face counts makes the triple map onto.
        Ok(())
    }
}

struct Side {
    rows: Vec<usize>,
    cols: Vec<usize>,
    labels: Vec<usize>,
    /// Label id at each (row id, col id), or usize::MAX for an empty cell.
    grid: Vec<Vec<usize>>,
    row_deg: Vec<usize>,
    col_deg: Vec<usize>,
    label_deg: Vec<usize>,
}

const EMPTY: usize = usize::MAX;

fn index_side(ts: &TripleSystem) -> Side {
    let rows = ts.used_rows();
    let cols = ts.used_cols();
    let labels = ts.used_labels();
    let rid = |r: usize| rows.binary_search(&r).unwrap();
    let cid = |c: usize| cols.binary_search(&c).unwrap();
    let lid = |l: usize| labels.binary_search(&l).unwrap();
    let mut grid = vec![vec![EMPTY; cols.len()]; rows.len()];
    let mut row_deg = vec![0; rows.len()];
    let mut col_deg = vec![0; cols.len()];
    let mut label_deg = vec![0; labels.len()];
    for &(r, c, l) in ts.triples() {
        let (ri, ci, li) = (rid(r), cid(c), lid(l));
        grid[ri][ci] = li;
        row_deg[ri] += 1;
        col_deg[ci] += 1;
        label_deg[li] += 1;
    }
    Side {
        rows,
        cols,
        labels,
        grid,
        row_deg,
        col_deg,
        label_deg,
    }
}

struct Search<'s> {
    a: &'s Side,
    b: &'s Side,
    /// Assignment of A's row ids to B's row ids, interleaved with columns.
    row_to: Vec<usize>,
    col_to: Vec<usize>,
    row_used: Vec<bool>,
    col_used: Vec<bool>,
    label_to: Vec<usize>,
    label_from: Vec<usize>,
    nodes: u64,
    budget: u64,
    exhausted: bool,
}

impl<'s> Search<'s> {
    /// Vertices in assignment order: rows and columns interleaved so each
    /// new vertex is constrained by the opposite class right away.
    fn order(&self) -> Vec<(bool, usize)> {
        let nr = self.a.rows.len();
        let nc = self.a.cols.len();
        let mut order = Vec::with_capacity(nr + nc);
        for i in 0..nr.max(nc) {
            if i < nr {
                order.push((true, i));
            }
            if i < nc {
                order.push((false, i));
            }
        }
        order
    }

    fn try_labels_for_row(&mut self, ai: usize, bi: usize, undo: &mut Vec<usize>) -> bool {
        // Cross new row `ai→bi` against all assigned columns.
        for cj in 0..self.col_to.len() {
            let bcj = self.col_to[cj];
            if bcj == EMPTY {
                continue;
            }
            let la = self.a.grid[ai][cj];
            let lb = self.b.grid[bi][bcj];
            if !self.bind_label(la, lb, undo) {
                return false;
            }
        }
        true
    }

    fn try_labels_for_col(&mut self, aj: usize, bj: usize, undo: &mut Vec<usize>) -> bool {
        for ri in 0..self.row_to.len() {
            let bri = self.row_to[ri];
            if bri == EMPTY {
                continue;
            }
            let la = self.a.grid[ri][aj];
            let lb = self.b.grid[bri][bj];
            if !self.bind_label(la, lb, undo) {
                return false;
            }
        }
        true
    }

    fn bind_label(&mut self, la: usize, lb: usize, undo: &mut Vec<usize>) -> bool {
        match (la == EMPTY, lb == EMPTY) {
            (true, true) => true,
            (false, false) => {
                if self.a.label_deg[la] != self.b.label_deg[lb] {
                    return false;
                }
                match (self.label_to[la], self.label_from[lb]) {
                    (x, y) if x == lb && y == la => true,
                    (EMPTY, EMPTY) => {
                        self.label_to[la] = lb;
                        self.label_from[lb] = la;
                        undo.push(la);
                        true
                    }
                    _ => false,
                }
            }
            _ => false,
        }
    }

    fn undo_labels(&mut self, undo: &[usize]) {
        for &la in undo {
            let lb = self.label_to[la];
            self.label_to[la] = EMPTY;
            self.label_from[lb] = EMPTY;
        }
    }

    fn solve(&mut self, order: &[(bool, usize)], depth: usize) -> bool {
        if depth == order.len() {
            return true;
        }
        let (is_row, idx) = order[depth];
        let (deg_a, deg_b, used) = if is_row {
            (&self.a.row_deg, &self.b.row_deg, &self.row_used)
        } else {
            (&self.a.col_deg, &self.b.col_deg, &self.col_used)
        };
        let candidates: Vec<usize> = (0..deg_b.len())
            .filter(|&cand| !used[cand] && deg_b[cand] == deg_a[idx])
            .collect();
        for cand in candidates {
            if self.nodes >= self.budget {
                self.exhausted = true;
                return false;
            }
            self.nodes += 1;
            let mut undo = Vec::new();
            let ok = if is_row {
                self.try_labels_for_row(idx, cand, &mut undo)
            } else {
                self.try_labels_for_col(idx, cand, &mut undo)
            };
            if ok {
                if is_row {
                    self.row_to[idx] = cand;
                    self.row_used[cand] = true;
                } else {
                    self.col_to[idx] = cand;
                    self.col_used[cand] = true;
                }
                if self.solve(order, depth + 1) {
                    return true;
                }
                if is_row {
                    self.row_to[idx] = EMPTY;
                    self.row_used[cand] = false;
                } else {
                    self.col_to[idx] = EMPTY;
                    self.col_used[cand] = false;
                }
            }
            self.undo_labels(&undo);
            if self.exhausted {
                return false;
            }
        }
        false
    }
}

/// Searches for an isomorphism from `a` onto `b` over their *used* vertices,
/// exploring candidate assignments in a fixed canonical order (rows and
/// columns interleaved, candidates ascending), so the witness is
/// deterministic. Returns:
///
/// * `Ok(Some(iso))` — a validated isomorphism was found;
/// * `Ok(None)` — exhaustive search proved there is none;
/// * `Err(BudgetExceeded)` — the backtracking hit `budget` nodes first.
pub fn is_isomorphic(
    a: &TripleSystem,
    b: &TripleSystem,
    budget: u64,
) -> Result<Option<GridIsomorphism>> {
    if a.len() != b.len() {
        return Ok(None);
    }
    let sa = index_side(a);
    let sb = index_side(b);
    if sa.rows.len() != sb.rows.len()
        || sa.cols.len() != sb.cols.len()
        || sa.labels.len() != sb.labels.len()
    {
        return Ok(None);
    }
    let mut deg_a = sa.row_deg.clone();
    let mut deg_b = sb.row_deg.clone();
    deg_a.sort_unstable();
    deg_b.sort_unstable();
    if deg_a != deg_b {
        return Ok(None);
    }
    let (mut deg_a, mut deg_b) = (sa.col_deg.clone(), sb.col_deg.clone());
    deg_a.sort_unstable();
    deg_b.sort_unstable();
    if deg_a != deg_b {
        return Ok(None);
    }
    let (mut deg_a, mut deg_b) = (sa.label_deg.clone(), sb.label_deg.clone());
    deg_a.sort_unstable();
    deg_b.sort_unstable();
    if deg_a != deg_b {
        return Ok(None);
    }

    let mut search = Search {
        a: &sa,
        b: &sb,
        row_to: vec![EMPTY; sa.rows.len()],
        col_to: vec![EMPTY; sa.cols.len()],
        row_used: vec![false; sb.rows.len()],
        col_used: vec![false; sb.cols.len()],
        label_to: vec![EMPTY; sa.labels.len()],
        label_from: vec![EMPTY; sb.labels.len()],
        nodes: 0,
        budget,
        exhausted: false,
    };
    let order = search.order();
    let found = search.solve(&order, 0);
    if search.exhausted {
        return Err(Error::BudgetExceeded(format!(
            "isomorphism search used all {budget} nodes"
        )));
    }
    if !found {
        return Ok(None);
    }

    // Empty cells force no label constraints, so isolated labels can remain
    // unbound; there are none among *used* labels unless both sides have
    // equal counts of them, matched here in ascending order.
    let mut unbound_a: Vec<usize> = (0..sa.labels.len())
        .filter(|&i| search.label_to[i] == EMPTY)
        .collect();
    let unbound_b: Vec<usize> = (0..sb.labels.len())
        .filter(|&i| search.label_from[i] == EMPTY)
        .collect();
    for (la, lb) in unbound_a.drain(..).zip(unbound_b) {
        search.label_to[la] = lb;
    }

    let iso = GridIsomorphism {
        row_map: sa
            .rows
            .iter()
            .enumerate()
            .map(|(i, &r)| (r, sb.rows[search.row_to[i]]))
            .collect(),
        col_map: sa
            .cols
            .iter()
            .enumerate()
            .map(|(i, &c)| (c, sb.cols[search.col_to[i]]))
            .collect(),
        label_map: sa
            .labels
            .iter()
            .enumerate()
            .map(|(i, &l)| (l, sb.labels[search.label_to[i]]))
            .collect(),
    };
    debug_assert!(iso.validate(a, b).is_ok());
    Ok(Some(iso))
}
