use crate::error::{Error, Result};
use crate::grids::TripleSystem;
use crate::group::{GroupTable, Subgroup};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::collections::HashMap;

/// One cell block of the coset partition: the rows of a left coset `rH`
/// crossed with the columns of a right coset `Hs`. Row and column lists
/// follow the parent's element order within each coset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetBlock {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

/// An exact fraction `num/den`, deliberately left unreduced so that the
/// denominator always records the cell count it was measured against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Density {
    pub num: u64,
    pub den: u64,
}

impl Density {
    /// Cross-multiplied comparison; exact for all representable values.
    pub fn cmp_value(&self, other: &Density) -> std::cmp::Ordering {
        let lhs = self.num as u128 * other.den as u128;
        let rhs = other.num as u128 * self.den as u128;
        lhs.cmp(&rhs)
    }
}

/// The winning block of [`densest_block`], with the triples that fall in it.
#[derive(Debug, Clone)]
pub struct DensestBlock {
    /// Index of the block in the input slice.
    pub index: usize,
    pub block: CosetBlock,
    /// The input system restricted to the block's rows and columns.
    pub restriction: TripleSystem,
    /// Triples in the block over cells of the block (`|H|²`).
    pub density: Density,
}

/// Partitions the `n × n` cell grid of `table` into `(n/|H|)²` blocks, one
/// per (left coset, right coset) pair, ordered left-coset-major with cosets
/// in order of their smallest representative.
pub fn coset_blocks(table: &GroupTable, subgroup: &Subgroup) -> Result<Vec<CosetBlock>> {
    let n = table.order();
    if subgroup.parent_order() != n {
        return Err(Error::InvalidSubgroup(format!(
            "subgroup lives in a group of order {}, table has order {}",
            subgroup.parent_order(),
            n
        )));
    }
    let members = subgroup.members();

    let mut left: Vec<Vec<usize>> = Vec::new();
    let mut covered = vec![false; n];
    for r in 0..n {
        if covered[r] {
            continue;
        }
        let coset: Vec<usize> = members.iter().map(|&h| table.product(r, h)).collect();
        for &x in &coset {
            covered[x] = true;
        }
        left.push(coset);
    }

    let mut right: Vec<Vec<usize>> = Vec::new();
    let mut covered = vec![false; n];
    for s in 0..n {
        if covered[s] {
            continue;
        }
        let coset: Vec<usize> = members.iter().map(|&h| table.product(h, s)).collect();
        for &x in &coset {
            covered[x] = true;
        }
        right.push(coset);
    }

    let mut blocks = Vec::with_capacity(left.len() * right.len());
    for l in &left {
        for r in &right {
            blocks.push(CosetBlock {
                rows: l.clone(),
                cols: r.clone(),
            });
        }
    }
    Ok(blocks)
}

/// Counts how many triples of `a` land in each block and returns the block
/// with the most (first in block order on ties), together with the
/// restriction of `a` to it. The blocks must jointly partition the cells
/// that `a`'s triples occupy.
pub fn densest_block(a: &TripleSystem, blocks: &[CosetBlock]) -> Result<DensestBlock> {
    if blocks.is_empty() {
        return Err(Error::OutOfRange("no blocks supplied".into()));
    }
    // Identify each element's coset by interning the distinct row/col lists.
    let mut left_ids: HashMap<&[usize], usize> = HashMap::new();
    let mut right_ids: HashMap<&[usize], usize> = HashMap::new();
    let mut row_class: HashMap<usize, usize> = HashMap::new();
    let mut col_class: HashMap<usize, usize> = HashMap::new();
    for b in blocks {
        let next = left_ids.len();
        let lid = *left_ids.entry(b.rows.as_slice()).or_insert(next);
        if lid == next {
            for &r in &b.rows {
                if row_class.insert(r, lid).is_some_and(|old| old != lid) {
                    return Err(Error::InvalidSubgroup(format!(
                        "row {r} appears in two different cosets"
                    )));
                }
            }
        }
        let next = right_ids.len();
        let rid = *right_ids.entry(b.cols.as_slice()).or_insert(next);
        if rid == next {
            for &c in &b.cols {
                if col_class.insert(c, rid).is_some_and(|old| old != rid) {
                    return Err(Error::InvalidSubgroup(format!(
                        "column {c} appears in two different cosets"
                    )));
                }
            }
        }
    }

    let mut counts: HashMap<(usize, usize), u64> = HashMap::new();
    for &(r, c, _) in a.triples() {
        let lid = *row_class.get(&r).ok_or_else(|| {
            Error::OutOfUniverse(format!("row {r} is covered by no block"))
        })?;
        let rid = *col_class.get(&c).ok_or_else(|| {
            Error::OutOfUniverse(format!("column {c} is covered by no block"))
        })?;
        *counts.entry((lid, rid)).or_insert(0) += 1;
    }

    let mut best: Option<(usize, u64)> = None;
    for (i, b) in blocks.iter().enumerate() {
        let lid = left_ids[b.rows.as_slice()];
        let rid = right_ids[b.cols.as_slice()];
        let cnt = counts.get(&(lid, rid)).copied().unwrap_or(0);
        if best.map_or(true, |(_, c)| cnt > c) {
            best = Some((i, cnt));
        }
    }
    let (index, count) = best.unwrap();
    let block = blocks[index].clone();
    let rows: BTreeSet<usize> = block.rows.iter().copied().collect();
    let cols: BTreeSet<usize> = block.cols.iter().copied().collect();
    let restriction = a.subgrid(&rows, &cols)?;
    let cells = (block.rows.len() * block.cols.len()) as u64;
    Ok(DensestBlock {
        index,
        block,
        restriction,
        density: Density {
            num: count,
            den: cells,
        },
    })
}
