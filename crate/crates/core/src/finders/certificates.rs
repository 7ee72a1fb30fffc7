//! Machine-checkable witnesses for found structures.
//!
//! Each certificate pins down an object by coordinates alone, so a verifier
//! needs nothing but the original input data (a triple CSV or a word list)
//! to re-check every claimed membership. [`verify_certificate`] is that
//! verifier; the finders run it on their own output before returning.

use crate::arith::{checked_pow, gcd, is_prime};
use crate::finders::gf;
use crate::grids::{GridIsomorphism, TripleSystem};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashSet};

/// A `k × k` grid of two arithmetic progressions with a shared difference:
/// cells `(a + i·d, b + j·d)` modulo `n` for `0 ≤ i, j < k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApGridCert {
    pub a: usize,
    pub b: usize,
    pub d: usize,
    pub k: usize,
    pub n: usize,
}

/// A combinatorial subspace of words: coordinates in `wildcard_sets[s]`
/// move together through the alphabet, all others are frozen to `z`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubspaceCert {
    pub alphabet: u32,
    /// Base word; entries under a wildcard set are stored as 0.
    pub z: Vec<u32>,
    pub wildcard_sets: Vec<Vec<usize>>,
}

/// A full product of two affine subspace translates: all cells of
/// `(a1 + Γ) × (a2 + Γ)` where `Γ` is spanned by `basis` over `Z_p`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CosetGridCert {
    pub p: u64,
    pub basis: Vec<Vec<u32>>,
    pub a1: Vec<u32>,
    pub a2: Vec<u32>,
}

/// Which reference table a pipeline run matched.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PipelineCase {
    /// Addition of `{0..k-1}` with labels reduced modulo `modulus`.
    Interval { k: usize, modulus: usize },
    /// Addition in the elementary abelian group of order `p^m`.
    Elementary { p: u64, m: usize },
}

/// The structure certificate embedded in a [`PipelineCert`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum InnerCert {
    ApGrid(ApGridCert),
    CosetGrid(CosetGridCert),
}

/// Rows and columns of the coordinate slice an inner certificate speaks
/// about: slice coordinate `x` names the input row `rows[x]` (likewise for
/// columns), so the inner certificate's cells can be mapped back to input
/// cells with no group arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockSlice {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

/// A vertex bijection as explicit sorted pairs, the serialization-friendly
/// form of [`GridIsomorphism`].
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoPairs {
    pub rows: Vec<(usize, usize)>,
    pub cols: Vec<(usize, usize)>,
    pub labels: Vec<(usize, usize)>,
}

impl IsoPairs {
    pub fn from_isomorphism(iso: &GridIsomorphism) -> IsoPairs {
        IsoPairs {
            rows: iso.row_map.iter().map(|(&a, &b)| (a, b)).collect(),
            cols: iso.col_map.iter().map(|(&a, &b)| (a, b)).collect(),
            labels: iso.label_map.iter().map(|(&a, &b)| (a, b)).collect(),
        }
    }

    pub fn to_isomorphism(&self) -> GridIsomorphism {
        GridIsomorphism {
            row_map: self.rows.iter().copied().collect(),
            col_map: self.cols.iter().copied().collect(),
            label_map: self.labels.iter().copied().collect(),
        }
    }
}

/// End-to-end witness of the subgroup pipeline: which abelian subgroup was
/// used, which coset block was densest, which slice of it hosted the inner
/// structure, and an explicit isomorphism from the extracted subgrid to the
/// reference table named by `case`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipelineCert {
    pub case: PipelineCase,
    /// Members of the abelian subgroup, as parent element indices.
    pub subgroup: Vec<usize>,
    /// Rows and columns of the chosen coset block, in subgroup order.
    pub block: BlockSlice,
    /// The slice of `block` the inner certificate's coordinates refer to.
    pub inner_block: BlockSlice,
    pub inner: InnerCert,
    pub subgrid_iso: IsoPairs,
}

/// Any certificate this crate can emit, tagged for JSON round-trips.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Certificate {
    ApGrid(ApGridCert),
    Subspace(SubspaceCert),
    CosetGrid(CosetGridCert),
    Pipeline(PipelineCert),
}

/// The input data a certificate makes claims about.
#[derive(Debug, Clone)]
pub enum VerifyData {
    /// A triple system; cell claims are checked against its cells.
    Grid(TripleSystem),
    /// A set of fixed-length words over `0..alphabet`.
    Words { alphabet: u32, words: Vec<Vec<u32>> },
}

/// Re-checks every claim a certificate makes against the data, using
/// nothing from the finder that produced it. Returns the first violation.
pub fn verify_certificate(cert: &Certificate, data: &VerifyData) -> Result<(), String> {
    match (cert, data) {
        (Certificate::ApGrid(c), VerifyData::Grid(ts)) => verify_ap_grid(c, ts),
        (Certificate::CosetGrid(c), VerifyData::Grid(ts)) => verify_coset_grid(c, ts),
        (Certificate::Pipeline(c), VerifyData::Grid(ts)) => verify_pipeline(c, ts),
        (Certificate::Subspace(c), VerifyData::Words { alphabet, words }) => {
            verify_subspace(c, *alphabet, words)
        }
        (Certificate::Subspace(_), _) => {
            Err("a subspace certificate needs word data, not a grid".into())
        }
        (_, VerifyData::Words { .. }) => {
            Err("this certificate needs grid data, not words".into())
        }
    }
}

fn verify_ap_grid(c: &ApGridCert, ts: &TripleSystem) -> Result<(), String> {
    check_ap_shape(c)?;
    for i in 0..c.k {
        for j in 0..c.k {
            let (x, y) = ((c.a + i * c.d) % c.n, (c.b + j * c.d) % c.n);
            if !ts.contains_cell(x, y) {
                return Err(format!("claimed cell ({x}, {y}) is absent"));
            }
        }
    }
    Ok(())
}

fn check_ap_shape(c: &ApGridCert) -> Result<(), String> {
    if c.n == 0 || c.k < 2 {
        return Err(format!("degenerate shape: n={}, k={}", c.n, c.k));
    }
    if c.a >= c.n || c.b >= c.n {
        return Err("progression start lies outside the modulus".into());
    }
    if c.d == 0 || c.d >= c.n {
        return Err(format!("difference {} outside 1..{}", c.d, c.n));
    }
    let order = c.n / gcd(c.n as u64, c.d as u64) as usize;
    if order < c.k {
        return Err(format!(
            "difference {} has additive order {order}, below the length {}",
            c.d, c.k
        ));
    }
    Ok(())
}

fn verify_subspace(c: &SubspaceCert, alphabet: u32, words: &[Vec<u32>]) -> Result<(), String> {
    if c.alphabet != alphabet {
        return Err(format!(
            "certificate alphabet {} does not match data alphabet {alphabet}",
            c.alphabet
        ));
    }
    if alphabet < 2 {
        return Err("alphabet must have at least two symbols".into());
    }
    let n = c.z.len();
    if c.wildcard_sets.is_empty() {
        return Err("no wildcard sets".into());
    }
    let mut seen = vec![false; n];
    for set in &c.wildcard_sets {
        if set.is_empty() {
            return Err("empty wildcard set".into());
        }
        for &j in set {
            if j >= n {
                return Err(format!("wildcard position {j} outside the word length {n}"));
            }
            if seen[j] {
                return Err(format!("wildcard position {j} used twice"));
            }
            seen[j] = true;
        }
    }
    if c.z.iter().any(|&d| d >= alphabet) {
        return Err("base word uses a symbol outside the alphabet".into());
    }
    let set: HashSet<&[u32]> = words
        .iter()
        .map(|w| {
            if w.len() != n {
                Err(format!("data word of length {}, expected {n}", w.len()))
            } else if w.iter().any(|&d| d >= alphabet) {
                Err("data word uses a symbol outside the alphabet".into())
            } else {
                Ok(w.as_slice())
            }
        })
        .collect::<Result<_, String>>()?;
    // Walk all alphabet^k assignments of the wildcard sets.
    let k = c.wildcard_sets.len();
    let mut assign = vec![0u32; k];
    let mut word = c.z.clone();
    loop {
        for (s, set) in c.wildcard_sets.iter().enumerate() {
            for &j in set {
                word[j] = assign[s];
            }
        }
        if !set.contains(word.as_slice()) {
            return Err(format!("subspace point {word:?} is absent"));
        }
        let mut carry = true;
        for slot in assign.iter_mut().rev() {
            *slot += 1;
            if *slot < alphabet {
                carry = false;
                break;
            }
            *slot = 0;
        }
        if carry {
            return Ok(());
        }
    }
}

fn verify_coset_grid(c: &CosetGridCert, ts: &TripleSystem) -> Result<(), String> {
    let n = check_coset_shape(c)?;
    let span = gf::span_points(&c.basis, c.p);
    for g1 in &span {
        let x = gf::vec_to_index(&gf::add(&c.a1, g1, c.p), c.p);
        for g2 in &span {
            let y = gf::vec_to_index(&gf::add(&c.a2, g2, c.p), c.p);
            if !ts.contains_cell(x, y) {
                return Err(format!(
                    "claimed cell ({x}, {y}) is absent (dimension {n}, p={})",
                    c.p
                ));
            }
        }
    }
    Ok(())
}

/// Shape invariants of a coset-grid certificate; returns the dimension `n`.
fn check_coset_shape(c: &CosetGridCert) -> Result<usize, String> {
    if !is_prime(c.p) {
        return Err(format!("{} is not prime", c.p));
    }
    if c.basis.is_empty() {
        return Err("empty basis".into());
    }
    let n = c.a1.len();
    if n == 0 || c.a2.len() != n || c.basis.iter().any(|b| b.len() != n) {
        return Err("basis and translate vectors disagree on the dimension".into());
    }
    let in_field =
        |v: &[u32]| v.iter().all(|&d| u64::from(d) < c.p);
    if !in_field(&c.a1) || !in_field(&c.a2) || !c.basis.iter().all(|b| in_field(b)) {
        return Err("vector entry outside the field".into());
    }
    if gf::rank(&c.basis, c.p) != c.basis.len() {
        return Err("basis vectors are linearly dependent".into());
    }
    if checked_pow(c.p, (2 * n) as u32).is_none() {
        return Err("dimension too large to index".into());
    }
    Ok(n)
}

fn verify_pipeline(c: &PipelineCert, ts: &TripleSystem) -> Result<(), String> {
    // Well-formedness of the group-side bookkeeping.
    if c.subgroup.windows(2).any(|w| w[0] >= w[1]) || c.subgroup.is_empty() {
        return Err("subgroup member list is not sorted and nonempty".into());
    }
    let h = c.subgroup.len();
    if c.block.rows.len() != h || c.block.cols.len() != h {
        return Err("block size does not match the subgroup order".into());
    }
    let distinct = |v: &[usize]| v.iter().collect::<BTreeSet<_>>().len() == v.len();
    if !distinct(&c.block.rows) || !distinct(&c.block.cols) {
        return Err("block lists repeat a vertex".into());
    }
    if !distinct(&c.inner_block.rows) || !distinct(&c.inner_block.cols) {
        return Err("slice lists repeat a vertex".into());
    }
    let block_rows: BTreeSet<usize> = c.block.rows.iter().copied().collect();
    let block_cols: BTreeSet<usize> = c.block.cols.iter().copied().collect();
    if !c.inner_block.rows.iter().all(|r| block_rows.contains(r))
        || !c.inner_block.cols.iter().all(|col| block_cols.contains(col))
    {
        return Err("slice uses vertices outside the block".into());
    }

    // The inner certificate must match the case and fit the slice.
    let slice_len = c.inner_block.rows.len();
    if c.inner_block.cols.len() != slice_len {
        return Err("slice rows and columns disagree on size".into());
    }
    if h % slice_len != 0 {
        return Err("slice size does not divide the subgroup order".into());
    }
    // Collect the claimed subgrid cells as (input row, input column).
    let mut rows = BTreeSet::new();
    let mut cols = BTreeSet::new();
    let reference = match (&c.case, &c.inner) {
        (&PipelineCase::Interval { k, modulus }, InnerCert::ApGrid(inner)) => {
            check_ap_shape(inner).map_err(|e| format!("inner certificate: {e}"))?;
            if inner.k != k {
                return Err(format!(
                    "case says k={k} but the inner grid has length {}",
                    inner.k
                ));
            }
            if inner.n != slice_len {
                return Err("inner modulus does not match the slice size".into());
            }
            let order = inner.n / gcd(inner.n as u64, inner.d as u64) as usize;
            if modulus != order {
                return Err(format!(
                    "case modulus {modulus} differs from the difference's order {order}"
                ));
            }
            for i in 0..k {
                let x = (inner.a + i * inner.d) % inner.n;
                rows.insert(c.inner_block.rows[x]);
                for j in 0..k {
                    let y = (inner.b + j * inner.d) % inner.n;
                    cols.insert(c.inner_block.cols[y]);
                    if !ts.contains_cell(c.inner_block.rows[x], c.inner_block.cols[y]) {
                        return Err(format!(
                            "grid cell ({}, {}) is absent from the input",
                            c.inner_block.rows[x], c.inner_block.cols[y]
                        ));
                    }
                }
            }
            TripleSystem::interval_mod_grid(k, modulus)
                .map_err(|e| format!("bad reference shape: {e}"))?
        }
        (&PipelineCase::Elementary { p, m }, InnerCert::CosetGrid(inner)) => {
            let n = check_coset_shape(inner).map_err(|e| format!("inner certificate: {e}"))?;
            if inner.p != p {
                return Err(format!(
                    "case says p={p} but the inner grid uses p={}",
                    inner.p
                ));
            }
            if inner.basis.len() != m {
                return Err(format!(
                    "case says dimension {m} but the basis has {} vectors",
                    inner.basis.len()
                ));
            }
            let pn = checked_pow(p, n as u32)
                .filter(|&x| x as usize == slice_len)
                .ok_or("slice size is not p^n for the inner dimension n")?;
            let _ = pn;
            let span = gf::span_points(&inner.basis, p);
            for g1 in &span {
                let x = gf::vec_to_index(&gf::add(&inner.a1, g1, p), p);
                rows.insert(c.inner_block.rows[x]);
                for g2 in &span {
                    let y = gf::vec_to_index(&gf::add(&inner.a2, g2, p), p);
                    cols.insert(c.inner_block.cols[y]);
                    if !ts.contains_cell(c.inner_block.rows[x], c.inner_block.cols[y]) {
                        return Err(format!(
                            "grid cell ({}, {}) is absent from the input",
                            c.inner_block.rows[x], c.inner_block.cols[y]
                        ));
                    }
                }
            }
            let table = crate::group::build_group(
                &crate::group::GroupSpec::ElementaryAbelian { p, m: m as u32 },
                checked_pow(p, m as u32).ok_or("reference group too large")?,
            )
            .map_err(|e| format!("bad reference shape: {e}"))?;
            TripleSystem::from_group(&table)
        }
        _ => return Err("case kind does not match the inner certificate kind".into()),
    };

    let subgrid = ts
        .subgrid(&rows, &cols)
        .map_err(|e| format!("cannot restrict to the claimed subgrid: {e}"))?;
    c.subgrid_iso
        .to_isomorphism()
        .validate(&subgrid, &reference)
        .map_err(|e| format!("subgrid isomorphism: {e}"))
}
