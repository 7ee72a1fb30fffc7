//! End-to-end structure pipeline: abelian subgroup → densest coset block →
//! primary decomposition → cyclic or elementary-abelian branch → inner grid
//! search → certified reference isomorphism.

use crate::arith::gcd;
use crate::error::{Error, PipelineStage, Result};
use crate::finders::certificates::{
    BlockSlice, Certificate, InnerCert, IsoPairs, PipelineCase, PipelineCert, VerifyData,
    verify_certificate,
};
use crate::finders::{find_ap_grid, find_coset_grid, gf};
use crate::grids::{is_isomorphic, TripleSystem, DEFAULT_ISO_BUDGET};
use crate::group::{
    coset_blocks, densest_block, find_abelian_subgroup, primary_decomposition, build_group,
    DensestBlock, GroupSpec, GroupTable, Subgroup,
};
use std::collections::{BTreeSet, HashSet};

/// Tuning knobs for [`structure_pipeline`].
#[derive(Debug, Clone, Copy)]
pub struct PipelineParams {
    /// Smallest cyclic exponent worth taking the cyclic branch for;
    /// defaults to `max(2k, k²)`.
    pub t_min: Option<u64>,
    /// Smallest torsion rank worth taking the elementary branch for;
    /// defaults to the requested dimension `m`.
    pub m_min: Option<u32>,
    /// Node budget for the final isomorphism search.
    pub iso_budget: u64,
}

impl Default for PipelineParams {
    fn default() -> Self {
        PipelineParams {
            t_min: None,
            m_min: None,
            iso_budget: DEFAULT_ISO_BUDGET,
        }
    }
}

/// Runs the pipeline on a subset `a` of the multiplication grid of `table`,
/// looking for a subgrid of `a` isomorphic either to interval addition of
/// length `k` (cyclic branch) or to the addition table of an elementary
/// abelian group of rank `m`. The returned certificate has already passed
/// [`verify_certificate`] against `a`; every stage that can come up empty
/// reports failure as [`Error::SearchFailed`] naming the stage.
pub fn structure_pipeline(
    table: &GroupTable,
    a: &TripleSystem,
    k: usize,
    m: usize,
    params: &PipelineParams,
) -> Result<PipelineCert> {
    if k < 2 {
        return Err(Error::OutOfRange(format!(
            "interval length must be at least 2, got {k}"
        )));
    }
    if m < 1 {
        return Err(Error::OutOfRange(
            "elementary dimension must be at least 1".into(),
        ));
    }
    let n = table.order();
    for &(r, c, l) in a.triples() {
        if r >= n || c >= n || table.product(r, c) != l {
            return Err(Error::InvalidTable(format!(
                "triple ({r}, {c}, {l}) is not an entry of the group's table"
            )));
        }
    }

    let subgroup =
        find_abelian_subgroup(table, 1).map_err(|e| stage(PipelineStage::AbelianSubgroup, e))?;
    let blocks =
        coset_blocks(table, &subgroup).map_err(|e| stage(PipelineStage::DensestBlock, e))?;
    let densest = densest_block(a, &blocks).map_err(|e| stage(PipelineStage::DensestBlock, e))?;
    let decomp = primary_decomposition(table, &subgroup)
        .map_err(|e| stage(PipelineStage::Decomposition, e))?;

    let t_min = params.t_min.unwrap_or(((2 * k).max(k * k)) as u64);
    let t_star = decomp.exponent();
    if t_star >= t_min && t_star >= k as u64 {
        return case_interval(table, a, &subgroup, &densest, t_star, k, params);
    }

    // Elementary branch: the prime with the largest torsion rank that
    // clears both the rank threshold and the requested dimension; ties go
    // to the smaller prime.
    let m_min = params.m_min.unwrap_or(m as u32);
    let mut choice: Option<(u32, u64)> = None;
    for p in decomp.primes() {
        let r = decomp.rank_of(p);
        if r >= m_min && r as usize >= m && choice.is_none_or(|(best, _)| r > best) {
            choice = Some((r, p));
        }
    }
    let Some((_, p)) = choice else {
        return Err(Error::SearchFailed {
            stage: PipelineStage::BranchSelection,
            detail: format!(
                "subgroup exponent {t_star} is below the cyclic threshold {t_min}, and no \
                 prime reaches torsion rank {}",
                m_min.max(m as u32)
            ),
        });
    };
    case_elementary(table, a, &subgroup, &densest, p, m, params)
}

fn stage(stage: PipelineStage, e: Error) -> Error {
    Error::SearchFailed {
        stage,
        detail: e.to_string(),
    }
}

fn fail(s: PipelineStage, detail: String) -> Error {
    Error::SearchFailed { stage: s, detail }
}

/// Partitions the subgroup into cosets of the slice generated by `steps`
/// (all parent element ids), returning each coset's block vertices in step
/// order. Cosets are ordered by their smallest member.
fn slices(
    members: &[usize],
    steps: &[usize],
    combine: impl Fn(usize, usize) -> usize,
    vertex: impl Fn(usize) -> usize,
) -> Vec<Vec<usize>> {
    let mut covered: HashSet<usize> = HashSet::with_capacity(members.len());
    let mut out = Vec::with_capacity(members.len() / steps.len().max(1));
    for &u in members {
        if covered.contains(&u) {
            continue;
        }
        let elems: Vec<usize> = steps.iter().map(|&s| combine(u, s)).collect();
        covered.extend(elems.iter().copied());
        out.push(elems.into_iter().map(&vertex).collect());
    }
    out
}

/// The (row slice, column slice) pair holding the most cells of `a`,
/// first-wins on ties.
fn densest_pair(
    a: &TripleSystem,
    row_slices: &[Vec<usize>],
    col_slices: &[Vec<usize>],
) -> (usize, usize) {
    let mut best = (0, 0);
    let mut best_count = usize::MAX;
    for (iu, rs) in row_slices.iter().enumerate() {
        for (iw, cs) in col_slices.iter().enumerate() {
            let count: usize = rs
                .iter()
                .map(|&r| cs.iter().filter(|&&c| a.contains_cell(r, c)).count())
                .sum();
            if best_count == usize::MAX || count > best_count {
                best = (iu, iw);
                best_count = count;
            }
        }
    }
    best
}

fn slice_cells(a: &TripleSystem, rows: &[usize], cols: &[usize]) -> Vec<(usize, usize)> {
    let mut cells = Vec::new();
    for (x, &r) in rows.iter().enumerate() {
        for (y, &c) in cols.iter().enumerate() {
            if a.contains_cell(r, c) {
                cells.push((x, y));
            }
        }
    }
    cells
}

fn finish(cert: PipelineCert, a: &TripleSystem) -> Result<PipelineCert> {
    verify_certificate(&Certificate::Pipeline(cert.clone()), &VerifyData::Grid(a.clone()))
        .map_err(|msg| {
            fail(
                PipelineStage::Isomorphism,
                format!("assembled certificate failed its self-check: {msg}"),
            )
        })?;
    Ok(cert)
}

fn case_interval(
    table: &GroupTable,
    a: &TripleSystem,
    subgroup: &Subgroup,
    densest: &DensestBlock,
    t_star: u64,
    k: usize,
    params: &PipelineParams,
) -> Result<PipelineCert> {
    let members = subgroup.members();
    let t = t_star as usize;
    let g = members
        .iter()
        .copied()
        .find(|&x| table.element_order(x) == t_star)
        .ok_or_else(|| {
            fail(
                PipelineStage::BranchSelection,
                "no subgroup element attains the exponent".into(),
            )
        })?;
    let identity = table
        .identity()
        .expect("verified group tables have an identity");
    let mut powers = Vec::with_capacity(t);
    let mut cur = identity;
    for _ in 0..t {
        powers.push(cur);
        cur = table.product(cur, g);
    }

    let pos = |x: usize| {
        members
            .binary_search(&x)
            .expect("products of subgroup members stay in the subgroup")
    };
    let row_slices = slices(
        members,
        &powers,
        |u, s| table.product(u, s),
        |e| densest.block.rows[pos(e)],
    );
    let col_slices = slices(
        members,
        &powers,
        |w, s| table.product(s, w),
        |e| densest.block.cols[pos(e)],
    );
    let (iu, iw) = densest_pair(&densest.restriction, &row_slices, &col_slices);
    let slice_rows = &row_slices[iu];
    let slice_cols = &col_slices[iw];

    let cells = slice_cells(&densest.restriction, slice_rows, slice_cols);
    let inner = find_ap_grid(&cells, t, k)
        .map_err(|e| stage(PipelineStage::ApSearch, e))?
        .ok_or_else(|| {
            fail(
                PipelineStage::ApSearch,
                format!("no length-{k} progression grid in the densest {t} × {t} cyclic slice"),
            )
        })?;

    let modulus = t / gcd(t as u64, inner.d as u64) as usize;
    let mut row_set = BTreeSet::new();
    let mut col_set = BTreeSet::new();
    for i in 0..k {
        row_set.insert(slice_rows[(inner.a + i * inner.d) % t]);
        col_set.insert(slice_cols[(inner.b + i * inner.d) % t]);
    }
    let subgrid = a
        .subgrid(&row_set, &col_set)
        .map_err(|e| stage(PipelineStage::Isomorphism, e))?;
    let reference = TripleSystem::interval_mod_grid(k, modulus)
        .map_err(|e| stage(PipelineStage::Isomorphism, e))?;
    let iso = is_isomorphic(&subgrid, &reference, params.iso_budget)
        .map_err(|e| stage(PipelineStage::Isomorphism, e))?
        .ok_or_else(|| {
            fail(
                PipelineStage::Isomorphism,
                "extracted subgrid is not isomorphic to the reference table".into(),
            )
        })?;

    finish(
        PipelineCert {
            case: PipelineCase::Interval { k, modulus },
            subgroup: members.to_vec(),
            block: BlockSlice {
                rows: densest.block.rows.clone(),
                cols: densest.block.cols.clone(),
            },
            inner_block: BlockSlice {
                rows: slice_rows.clone(),
                cols: slice_cols.clone(),
            },
            inner: InnerCert::ApGrid(inner),
            subgrid_iso: IsoPairs::from_isomorphism(&iso),
        },
        a,
    )
}

fn case_elementary(
    table: &GroupTable,
    a: &TripleSystem,
    subgroup: &Subgroup,
    densest: &DensestBlock,
    p: u64,
    m: usize,
    params: &PipelineParams,
) -> Result<PipelineCert> {
    let members = subgroup.members();
    let identity = table
        .identity()
        .expect("verified group tables have an identity");
    let torsion: Vec<usize> = members
        .iter()
        .copied()
        .filter(|&x| table.pow(x, p) == identity)
        .collect();
    let mut rank = 0usize;
    let mut size = 1usize;
    while size < torsion.len() {
        size *= p as usize;
        rank += 1;
    }
    if size != torsion.len() {
        return Err(fail(
            PipelineStage::BranchSelection,
            format!("{p}-torsion has size {}, not a power of {p}", torsion.len()),
        ));
    }
    if rank < m {
        return Err(fail(
            PipelineStage::BranchSelection,
            format!("{p}-torsion rank {rank} is below the requested dimension {m}"),
        ));
    }

    // Greedy coordinate basis: repeatedly take the smallest torsion element
    // outside the span so far.
    let mut span: HashSet<usize> = HashSet::from([identity]);
    let mut basis: Vec<usize> = Vec::with_capacity(rank);
    for &e in &torsion {
        if span.contains(&e) {
            continue;
        }
        basis.push(e);
        let mut grown = HashSet::with_capacity(span.len() * p as usize);
        for &x in &span {
            let mut cur = x;
            for _ in 0..p {
                grown.insert(cur);
                cur = table.product(cur, e);
            }
        }
        span = grown;
        if span.len() == torsion.len() {
            break;
        }
    }
    debug_assert_eq!(basis.len(), rank);

    let pm = torsion.len();
    let elem_of: Vec<usize> = (0..pm)
        .map(|idx| {
            gf::index_to_vec(idx, p, rank)
                .iter()
                .zip(&basis)
                .fold(identity, |acc, (&d, &b)| {
                    table.product(acc, table.pow(b, u64::from(d)))
                })
        })
        .collect();

    let pos = |x: usize| {
        members
            .binary_search(&x)
            .expect("products of subgroup members stay in the subgroup")
    };
    let row_slices = slices(
        members,
        &elem_of,
        |u, s| table.product(u, s),
        |e| densest.block.rows[pos(e)],
    );
    let col_slices = slices(
        members,
        &elem_of,
        |w, s| table.product(s, w),
        |e| densest.block.cols[pos(e)],
    );
    let (iu, iw) = densest_pair(&densest.restriction, &row_slices, &col_slices);
    let slice_rows = &row_slices[iu];
    let slice_cols = &col_slices[iw];

    let cells = slice_cells(&densest.restriction, slice_rows, slice_cols);
    let inner = find_coset_grid(&cells, p, rank, m)
        .map_err(|e| stage(PipelineStage::SubspaceSearch, e))?
        .ok_or_else(|| {
            fail(
                PipelineStage::SubspaceSearch,
                format!(
                    "no dimension-{m} coset grid in the densest {pm} × {pm} torsion slice"
                ),
            )
        })?;

    let span_pts = gf::span_points(&inner.basis, p);
    let mut row_set = BTreeSet::new();
    let mut col_set = BTreeSet::new();
    for g in &span_pts {
        row_set.insert(slice_rows[gf::vec_to_index(&gf::add(&inner.a1, g, p), p)]);
        col_set.insert(slice_cols[gf::vec_to_index(&gf::add(&inner.a2, g, p), p)]);
    }
    let subgrid = a
        .subgrid(&row_set, &col_set)
        .map_err(|e| stage(PipelineStage::Isomorphism, e))?;
    let ref_table = build_group(&GroupSpec::ElementaryAbelian { p, m: m as u32 }, pm as u64)
        .map_err(|e| stage(PipelineStage::Isomorphism, e))?;
    let reference = TripleSystem::from_group(&ref_table);
    let iso = is_isomorphic(&subgrid, &reference, params.iso_budget)
        .map_err(|e| stage(PipelineStage::Isomorphism, e))?
        .ok_or_else(|| {
            fail(
                PipelineStage::Isomorphism,
                "extracted subgrid is not isomorphic to the reference table".into(),
            )
        })?;

    finish(
        PipelineCert {
            case: PipelineCase::Elementary { p, m },
            subgroup: members.to_vec(),
            block: BlockSlice {
                rows: densest.block.rows.clone(),
                cols: densest.block.cols.clone(),
            },
            inner_block: BlockSlice {
                rows: slice_rows.clone(),
                cols: slice_cols.clone(),
            },
            inner: InnerCert::CosetGrid(inner),
            subgrid_iso: IsoPairs::from_isomorphism(&iso),
        },
        a,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::build_group;

    fn grid(expr: &str) -> (GroupTable, TripleSystem) {
        let table = build_group(&expr.parse().unwrap(), 10_000).unwrap();
        let ts = TripleSystem::from_group(&table);
        (table, ts)
    }

    #[test]
    fn cyclic_group_takes_the_interval_branch() {
        let (table, a) = grid("Z60");
        let cert = structure_pipeline(&table, &a, 3, 1, &PipelineParams::default()).unwrap();
        assert_eq!(cert.case, PipelineCase::Interval { k: 3, modulus: 60 });
        assert_eq!(cert.subgroup.len(), 60);
        match &cert.inner {
            InnerCert::ApGrid(g) => assert_eq!((g.a, g.b, g.d, g.n), (0, 0, 1, 60)),
            other => panic!("expected a progression grid, got {other:?}"),
        }
        let json = serde_json::to_string(&Certificate::Pipeline(cert)).unwrap();
        assert!(json.contains("\"type\":\"pipeline\""));
        assert!(json.contains("\"kind\":\"interval\""));
    }

    #[test]
    fn elementary_group_takes_the_coset_branch() {
        let (table, a) = grid("Z2^4");
        let cert = structure_pipeline(&table, &a, 3, 2, &PipelineParams::default()).unwrap();
        assert_eq!(cert.case, PipelineCase::Elementary { p: 2, m: 2 });
        match &cert.inner {
            InnerCert::CosetGrid(g) => {
                assert_eq!(g.p, 2);
                assert_eq!(g.basis.len(), 2);
            }
            other => panic!("expected a coset grid, got {other:?}"),
        }
    }

    #[test]
    fn symmetric_group_routes_through_its_abelian_subgroup() {
        let (table, a) = grid("S4");
        let cert = structure_pipeline(&table, &a, 2, 1, &PipelineParams::default()).unwrap();
        assert_eq!(cert.case, PipelineCase::Elementary { p: 2, m: 1 });
        assert_eq!(cert.subgroup, vec![0, 1, 6, 7]);
    }

    #[test]
    fn dihedral_group_uses_its_rotations() {
        let (table, a) = grid("D10");
        let cert = structure_pipeline(&table, &a, 2, 1, &PipelineParams::default()).unwrap();
        assert_eq!(cert.case, PipelineCase::Interval { k: 2, modulus: 10 });
        assert_eq!(cert.subgroup, (0..10).collect::<Vec<_>>());
    }

    #[test]
    fn low_threshold_lets_s3_take_the_interval_branch() {
        let (table, a) = grid("S3");
        let params = PipelineParams {
            t_min: Some(3),
            ..PipelineParams::default()
        };
        let cert = structure_pipeline(&table, &a, 3, 1, &params).unwrap();
        assert_eq!(cert.case, PipelineCase::Interval { k: 3, modulus: 3 });
        assert_eq!(cert.subgroup, vec![0, 3, 4]);
        assert_eq!(cert.inner_block.rows, vec![0, 3, 4]);
    }

    #[test]
    fn sparse_input_drives_the_difference_up() {
        // Keep only cells with both coordinates even: the least progression
        // difference that survives is 2.
        let (table, full) = grid("Z12");
        let triples: Vec<_> = full
            .triples()
            .iter()
            .copied()
            .filter(|&(r, c, _)| r % 2 == 0 && c % 2 == 0)
            .collect();
        let a = TripleSystem::from_triples(
            full.rows().to_vec(),
            full.cols().to_vec(),
            full.labels().to_vec(),
            triples,
        )
        .unwrap();
        let cert = structure_pipeline(&table, &a, 2, 1, &PipelineParams::default()).unwrap();
        assert_eq!(cert.case, PipelineCase::Interval { k: 2, modulus: 6 });
        match &cert.inner {
            InnerCert::ApGrid(g) => assert_eq!((g.a, g.b, g.d), (0, 0, 2)),
            other => panic!("expected a progression grid, got {other:?}"),
        }
    }

    #[test]
    fn empty_input_fails_at_the_search_stage() {
        let (table, full) = grid("Z5");
        let a = TripleSystem::from_triples(
            full.rows().to_vec(),
            full.cols().to_vec(),
            full.labels().to_vec(),
            vec![],
        )
        .unwrap();
        let err = structure_pipeline(&table, &a, 2, 1, &PipelineParams::default()).unwrap_err();
        assert!(matches!(
            err,
            Error::SearchFailed {
                stage: PipelineStage::ApSearch,
                ..
            }
        ));
    }

    #[test]
    fn no_branch_available_reports_branch_selection() {
        // Z6 with k = 3: exponent 6 < 9, and both primes have rank 1 < 2.
        let (table, a) = grid("Z6");
        let err = structure_pipeline(&table, &a, 3, 2, &PipelineParams::default()).unwrap_err();
        assert!(matches!(
            err,
            Error::SearchFailed {
                stage: PipelineStage::BranchSelection,
                ..
            }
        ));
    }

    #[test]
    fn foreign_triples_are_rejected() {
        let (table, full) = grid("Z4");
        let mut triples = full.triples().to_vec();
        triples[0] = (0, 0, 1); // 0 + 0 is 0, not 1
        let a = TripleSystem::from_triples(
            full.rows().to_vec(),
            full.cols().to_vec(),
            full.labels().to_vec(),
            triples,
        )
        .unwrap();
        assert!(matches!(
            structure_pipeline(&table, &a, 2, 1, &PipelineParams::default()),
            Err(Error::InvalidTable(_))
        ));
    }

    #[test]
    fn tampered_certificates_fail_verification() {
        let (table, a) = grid("Z60");
        let cert = structure_pipeline(&table, &a, 3, 1, &PipelineParams::default()).unwrap();
        let mut bad = cert.clone();
        bad.subgrid_iso.labels[0].1 = 999;
        let err = verify_certificate(&Certificate::Pipeline(bad), &VerifyData::Grid(a.clone()))
            .unwrap_err();
        assert!(err.contains("isomorphism"), "{err}");

        let mut bad = cert;
        if let InnerCert::ApGrid(g) = &mut bad.inner {
            g.d = 7; // order of 7 in Z_60 is 60/gcd = 60, modulus now wrong
        }
        assert!(
            verify_certificate(&Certificate::Pipeline(bad), &VerifyData::Grid(a)).is_err()
        );
    }

    #[test]
    fn quaternions_have_enough_torsion() {
        // The quaternion group's largest abelian subgroup is cyclic of
        // order 4; with k = 2 the default threshold 4 admits the cyclic
        // branch.
        let (table, a) = grid("Q8");
        let cert = structure_pipeline(&table, &a, 2, 1, &PipelineParams::default()).unwrap();
        assert_eq!(cert.case, PipelineCase::Interval { k: 2, modulus: 4 });
    }
}
