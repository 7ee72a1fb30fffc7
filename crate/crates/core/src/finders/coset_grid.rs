//! Exhaustive search for products of affine subspace translates inside a
//! set of cells of `(Z_p)^n × (Z_p)^n`.

use crate::arith::{checked_pow, is_prime};
use crate::error::{Error, Result};
use crate::finders::certificates::CosetGridCert;
use crate::finders::gf;
use rayon::prelude::*;

/// Ceiling on the total number of cell checks a scan may need
/// (`#subspaces · p^{2n}`); larger instances are refused up front.
pub const DEFAULT_COSET_WORK_CAP: u128 = 50_000_000;

/// Finds a `k`-dimensional subspace `Γ ≤ (Z_p)^n` and translates `a1, a2`
/// with every cell of `(a1 + Γ) × (a2 + Γ)` inside `cells` (vectors are
/// addressed by their base-`p`, most-significant-first index).
///
/// Subspaces are tried in the canonical reduced-echelon order of
/// [`gf::rref_bases`] and translates in ascending least-representative
/// order, so the result is deterministic and `None` is conclusive.
pub fn find_coset_grid(
    cells: &[(usize, usize)],
    p: u64,
    n: usize,
    k: usize,
) -> Result<Option<CosetGridCert>> {
    if !is_prime(p) {
        return Err(Error::InvalidSpec(format!("{p} is not a prime")));
    }
    if k < 1 || k > n {
        return Err(Error::OutOfRange(format!(
            "dimension {k} must be between 1 and {n}"
        )));
    }
    let work = checked_pow(p, 2 * n as u32)
        .map(u128::from)
        .and_then(|cells_per_subspace| {
            gf::subspace_count(p, n, k)?.checked_mul(cells_per_subspace)
        });
    match work {
        Some(w) if w <= DEFAULT_COSET_WORK_CAP => {}
        w => {
            return Err(Error::CapExceeded(format!(
                "scan needs {} cell checks, cap is {DEFAULT_COSET_WORK_CAP}",
                w.map_or_else(|| "too many".into(), |x| x.to_string())
            )))
        }
    }
    let pn = checked_pow(p, n as u32).unwrap() as usize;
    let mut present = Bitmap::new(pn * pn);
    for &(x, y) in cells {
        if x >= pn || y >= pn {
            return Err(Error::OutOfUniverse(format!(
                "cell ({x}, {y}) outside the {pn} × {pn} grid"
            )));
        }
        present.set(x * pn + y);
    }

    let bases = gf::rref_bases(p, n, k);
    let best = bases
        .par_iter()
        .enumerate()
        .filter_map(|(si, basis)| {
            let span = gf::span_points(basis, p);
            let reps = gf::coset_reps(basis, p, n);
            let translate = |rep: usize| -> Vec<usize> {
                let v = gf::index_to_vec(rep, p, n);
                span.iter()
                    .map(|g| gf::vec_to_index(&gf::add(&v, g, p), p))
                    .collect()
            };
            let sides: Vec<Vec<usize>> = reps.iter().map(|&r| translate(r)).collect();
            for (i1, rows) in sides.iter().enumerate() {
                for (i2, cols) in sides.iter().enumerate() {
                    if rows
                        .iter()
                        .all(|&x| cols.iter().all(|&y| present.get(x * pn + y)))
                    {
                        return Some((si, i1, i2));
                    }
                }
            }
            None
        })
        .min();

    Ok(best.map(|(si, i1, i2)| {
        let basis = bases[si].clone();
        let reps = gf::coset_reps(&basis, p, n);
        CosetGridCert {
            p,
            a1: gf::index_to_vec(reps[i1], p, n),
            a2: gf::index_to_vec(reps[i2], p, n),
            basis,
        }
    }))
}

struct Bitmap(Vec<u64>);

impl Bitmap {
    fn new(bits: usize) -> Bitmap {
        Bitmap(vec![0; bits.div_ceil(64)])
    }
    fn set(&mut self, i: usize) {
        self.0[i >> 6] |= 1 << (i & 63);
    }
    fn get(&self, i: usize) -> bool {
        self.0[i >> 6] & (1 << (i & 63)) != 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finders::certificates::{verify_certificate, Certificate, VerifyData};
    use crate::grids::TripleSystem;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn all_cells(pn: usize) -> Vec<(usize, usize)> {
        (0..pn).flat_map(|x| (0..pn).map(move |y| (x, y))).collect()
    }

    fn cells_as_grid(cells: &[(usize, usize)], pn: usize) -> TripleSystem {
        TripleSystem::from_triples(
            (0..pn).collect(),
            (0..pn).collect(),
            vec![0],
            cells.iter().map(|&(x, y)| (x, y, 0)).collect(),
        )
        .unwrap()
    }

    /// Independent reference: every k-subset of nonzero vectors of full
    /// rank, every translate pair over all of (Z_p)^n, no canonicalization.
    fn naive_found(cells: &[(usize, usize)], p: u64, n: usize, k: usize) -> bool {
        let pn = (p as usize).pow(n as u32);
        let set: std::collections::HashSet<(usize, usize)> = cells.iter().copied().collect();
        let vectors: Vec<Vec<u32>> = (1..pn).map(|i| gf::index_to_vec(i, p, n)).collect();
        let mut combo: Vec<usize> = (0..k).collect();
        loop {
            let basis: Vec<Vec<u32>> = combo.iter().map(|&i| vectors[i].clone()).collect();
            if gf::rank(&basis, p) == k {
                let span = gf::span_points(&basis, p);
                for a1 in 0..pn {
                    let v1 = gf::index_to_vec(a1, p, n);
                    let rows: Vec<usize> = span
                        .iter()
                        .map(|g| gf::vec_to_index(&gf::add(&v1, g, p), p))
                        .collect();
                    for a2 in 0..pn {
                        let v2 = gf::index_to_vec(a2, p, n);
                        let cols: Vec<usize> = span
                            .iter()
                            .map(|g| gf::vec_to_index(&gf::add(&v2, g, p), p))
                            .collect();
                        if rows
                            .iter()
                            .all(|&x| cols.iter().all(|&y| set.contains(&(x, y))))
                        {
                            return true;
                        }
                    }
                }
            }
            let mut i = k;
            let mut advanced = false;
            while i > 0 {
                i -= 1;
                if combo[i] < vectors.len() - k + i {
                    combo[i] += 1;
                    for j in i + 1..k {
                        combo[j] = combo[j - 1] + 1;
                    }
                    advanced = true;
                    break;
                }
            }
            if !advanced {
                return false;
            }
        }
    }

    #[test]
    fn full_plane_gives_the_first_line() {
        let c = find_coset_grid(&all_cells(4), 2, 2, 1).unwrap().unwrap();
        assert_eq!(c.basis, vec![vec![0, 1]]);
        assert_eq!(c.a1, vec![0, 0]);
        assert_eq!(c.a2, vec![0, 0]);
    }

    #[test]
    fn restricted_first_coordinate() {
        // Cells with both first coordinates zero: indices {0,1} × {0,1}.
        let cells = vec![(0, 0), (0, 1), (1, 0), (1, 1)];
        let c = find_coset_grid(&cells, 2, 2, 1).unwrap().unwrap();
        assert_eq!(c.basis, vec![vec![0, 1]]);
        assert_eq!(c.a1, vec![0, 0]);
        assert_eq!(c.a2, vec![0, 0]);
        verify_certificate(
            &Certificate::CosetGrid(c),
            &VerifyData::Grid(cells_as_grid(&cells, 4)),
        )
        .unwrap();
    }

    #[test]
    fn diagonal_has_no_product() {
        let cells: Vec<_> = (0..4).map(|x| (x, x)).collect();
        assert!(find_coset_grid(&cells, 2, 2, 1).unwrap().is_none());
    }

    #[test]
    fn whole_space_at_full_dimension() {
        let c = find_coset_grid(&all_cells(4), 2, 2, 2).unwrap().unwrap();
        assert_eq!(c.basis, vec![vec![1, 0], vec![0, 1]]);
        assert_eq!(c.a1, vec![0, 0]);
    }

    #[test]
    fn ternary_field() {
        let c = find_coset_grid(&all_cells(3), 3, 1, 1).unwrap().unwrap();
        assert_eq!(c.basis, vec![vec![1]]);
        assert_eq!(c.a1, vec![0]);
    }

    #[test]
    fn off_origin_translates_are_reported() {
        // Rows and columns both {2,3} = (1,·): the same translate
        // (1,0) + span{(0,1)} on each side, nowhere near the origin.
        let cells = vec![(2, 2), (2, 3), (3, 2), (3, 3)];
        let c = find_coset_grid(&cells, 2, 2, 1).unwrap().unwrap();
        verify_certificate(
            &Certificate::CosetGrid(c.clone()),
            &VerifyData::Grid(cells_as_grid(&cells, 4)),
        )
        .unwrap();
        assert_eq!(c.basis, vec![vec![0, 1]]);
        assert_eq!(c.a1, vec![1, 0]);
        assert_eq!(c.a2, vec![1, 0]);
    }

    #[test]
    fn mismatched_side_subspaces_yield_nothing() {
        // Rows {2,3} translate span{(0,1)}, cols {1,3} translate span{(1,0)}:
        // no single subspace works for both sides, so the search is empty.
        let cells = vec![(2, 1), (2, 3), (3, 1), (3, 3)];
        assert!(find_coset_grid(&cells, 2, 2, 1).unwrap().is_none());
    }

    #[test]
    fn rejects_bad_arguments_and_oversize() {
        assert!(find_coset_grid(&[], 4, 2, 1).is_err());
        assert!(find_coset_grid(&[], 2, 2, 3).is_err());
        assert!(find_coset_grid(&[(16, 0)], 2, 2, 1).is_err());
        assert!(matches!(
            find_coset_grid(&[], 2, 26, 1),
            Err(Error::CapExceeded(_))
        ));
    }

    #[test]
    fn agrees_with_naive_scan_on_random_subsets() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for trial in 0..60 {
            let density = if trial % 2 == 0 { 0.55 } else { 0.85 };
            let cells: Vec<_> = all_cells(4)
                .into_iter()
                .filter(|_| rng.gen_bool(density))
                .collect();
            let fast = find_coset_grid(&cells, 2, 2, 1).unwrap();
            let slow = naive_found(&cells, 2, 2, 1);
            assert_eq!(fast.is_some(), slow, "trial {trial}");
            if let Some(c) = fast {
                verify_certificate(
                    &Certificate::CosetGrid(c),
                    &VerifyData::Grid(cells_as_grid(&cells, 4)),
                )
                .unwrap();
            }
        }
    }
}
