use crate::error::{Error, Result};
use crate::group::GroupTable;
use std::collections::BTreeSet;

/// A triple `(row, col, label)`. The three coordinates live in disjoint
/// namespaces even when they share numeric values.
pub type Triple = (usize, usize, usize);

/// A 3-uniform tripartite grid: three vertex universes and a set of triples
/// taking one vertex from each, at most one triple per `(row, col)` cell.
///
/// Universes are sorted and deduplicated; triples are sorted row-major.
/// These invariants are established by every constructor and relied on
/// throughout the crate (binary-searched lookups, canonical CSV output).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TripleSystem {
    rows: Vec<usize>,
    cols: Vec<usize>,
    labels: Vec<usize>,
    triples: Vec<Triple>,
}

impl TripleSystem {
    /// Builds a system from explicit universes and triples, validating
    /// membership and the one-label-per-cell rule.
    pub fn from_triples(
        mut rows: Vec<usize>,
        mut cols: Vec<usize>,
        mut labels: Vec<usize>,
        mut triples: Vec<Triple>,
    ) -> Result<TripleSystem> {
        rows.sort_unstable();
        rows.dedup();
        cols.sort_unstable();
        cols.dedup();
        labels.sort_unstable();
        labels.dedup();
        triples.sort_unstable();
        for w in triples.windows(2) {
            if w[0].0 == w[1].0 && w[0].1 == w[1].1 {
                return Err(Error::InvalidTable(format!(
                    "cell ({}, {}) carries two labels",
                    w[0].0, w[0].1
                )));
            }
        }
        for &(r, c, l) in &triples {
            if rows.binary_search(&r).is_err() {
                return Err(Error::OutOfUniverse(format!("row {r}")));
            }
            if cols.binary_search(&c).is_err() {
                return Err(Error::OutOfUniverse(format!("column {c}")));
            }
            if labels.binary_search(&l).is_err() {
                return Err(Error::OutOfUniverse(format!("label {l}")));
            }
        }
        Ok(TripleSystem {
            rows,
            cols,
            labels,
            triples,
        })
    }

    /// The full multiplication grid of a group: triples `(a, b, a·b)` with
    /// all three universes equal to `0..order`.
    pub fn from_group(table: &GroupTable) -> TripleSystem {
        let n = table.order();
        let universe: Vec<usize> = (0..n).collect();
        let mut triples = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                triples.push((a, b, table.product(a, b)));
            }
        }
        TripleSystem {
            rows: universe.clone(),
            cols: universe.clone(),
            labels: universe,
            triples,
        }
    }

    /// The addition grid of `{0..k} × {0..k}` over the integers: triples
    /// `(a, b, a+b)` with labels `0..2k-1`.
    pub fn interval_grid(k: usize) -> Result<TripleSystem> {
        if k == 0 {
            return Err(Error::OutOfRange("interval grid needs k ≥ 1".into()));
        }
        let mut triples = Vec::with_capacity(k * k);
        for a in 0..k {
            for b in 0..k {
                triples.push((a, b, a + b));
            }
        }
        Ok(TripleSystem {
            rows: (0..k).collect(),
            cols: (0..k).collect(),
            labels: (0..2 * k - 1).collect(),
            triples,
        })
    }

    /// Like [`interval_grid`](Self::interval_grid) but with labels reduced
    /// modulo `modulus`; coincides with the plain interval grid whenever
    /// `modulus ≥ 2k - 1`.
    pub fn interval_mod_grid(k: usize, modulus: usize) -> Result<TripleSystem> {
        if k == 0 {
            return Err(Error::OutOfRange("interval grid needs k ≥ 1".into()));
        }
        if modulus < k {
            return Err(Error::OutOfRange(format!(
                "modulus {modulus} is smaller than the side length {k}"
            )));
        }
        let mut triples = Vec::with_capacity(k * k);
        let mut labels = BTreeSet::new();
        for a in 0..k {
            for b in 0..k {
                let l = (a + b) % modulus;
                labels.insert(l);
                triples.push((a, b, l));
            }
        }
        triples.sort_unstable();
        Ok(TripleSystem {
            rows: (0..k).collect(),
            cols: (0..k).collect(),
            labels: labels.into_iter().collect(),
            triples,
        })
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    pub fn cols(&self) -> &[usize] {
        &self.cols
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    /// Triples in row-major sorted order.
    pub fn triples(&self) -> &[Triple] {
        &self.triples
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    /// Label at cell `(r, c)`, if the cell carries a triple.
    pub fn label_of(&self, r: usize, c: usize) -> Option<usize> {
        self.triples
            .binary_search_by(|probe| (probe.0, probe.1).cmp(&(r, c)))
            .ok()
            .map(|i| self.triples[i].2)
    }

    pub fn contains_cell(&self, r: usize, c: usize) -> bool {
        self.label_of(r, c).is_some()
    }

    pub fn contains_triple(&self, t: Triple) -> bool {
        self.triples.binary_search(&t).is_ok()
    }

    /// Restriction to the given rows and columns. The row and column
    /// universes become exactly the given sets (which must be subsets of the
    /// current universes); the label universe shrinks to the labels that
    /// actually occur.
    pub fn subgrid(&self, rows: &BTreeSet<usize>, cols: &BTreeSet<usize>) -> Result<TripleSystem> {
        for &r in rows {
            if self.rows.binary_search(&r).is_err() {
                return Err(Error::OutOfUniverse(format!("row {r}")));
            }
        }
        for &c in cols {
            if self.cols.binary_search(&c).is_err() {
                return Err(Error::OutOfUniverse(format!("column {c}")));
            }
        }
        let triples: Vec<Triple> = self
            .triples
            .iter()
            .copied()
            .filter(|&(r, c, _)| rows.contains(&r) && cols.contains(&c))
            .collect();
        let labels: BTreeSet<usize> = triples.iter().map(|&(_, _, l)| l).collect();
        Ok(TripleSystem {
            rows: rows.iter().copied().collect(),
            cols: cols.iter().copied().collect(),
            labels: labels.into_iter().collect(),
            triples,
        })
    }

    /// Rows that occur in at least one triple, sorted.
    pub fn used_rows(&self) -> Vec<usize> {
        let set: BTreeSet<usize> = self.triples.iter().map(|t| t.0).collect();
        set.into_iter().collect()
    }

    pub fn used_cols(&self) -> Vec<usize> {
        let set: BTreeSet<usize> = self.triples.iter().map(|t| t.1).collect();
        set.into_iter().collect()
    }

    pub fn used_labels(&self) -> Vec<usize> {
        let set: BTreeSet<usize> = self.triples.iter().map(|t| t.2).collect();
        set.into_iter().collect()
    }
}

/// Whether the system is linear as a 3-uniform hypergraph: any two triples
/// share at most one vertex. With one label per cell this reduces to the two
/// side projections `(row, label)` and `(col, label)` being duplicate-free.
pub fn check_linear(ts: &TripleSystem) -> bool {
    let mut row_label: Vec<(usize, usize)> = ts.triples().iter().map(|&(r, _, l)| (r, l)).collect();
    row_label.sort_unstable();
    if row_label.windows(2).any(|w| w[0] == w[1]) {
        return false;
    }
    let mut col_label: Vec<(usize, usize)> = ts.triples().iter().map(|&(_, c, l)| (c, l)).collect();
    col_label.sort_unstable();
    !col_label.windows(2).any(|w| w[0] == w[1])
}
