//! Exhaustive search for grids of two same-difference arithmetic
//! progressions inside a set of cells of `Z_n × Z_n`.

use crate::arith::gcd;
use crate::error::{Error, Result};
use crate::finders::certificates::ApGridCert;
use rayon::prelude::*;

/// Scans every `(a, b, d)` with `d ≠ 0` of additive order at least `k` and
/// returns the lexicographically least triple whose full `k × k` cell grid
/// `(a + i·d, b + j·d) mod n` lies inside `cells` — or `None`, which is
/// conclusive: the scan is complete.
pub fn find_ap_grid(cells: &[(usize, usize)], n: usize, k: usize) -> Result<Option<ApGridCert>> {
    if k < 2 {
        return Err(Error::OutOfRange(format!(
            "progression length must be at least 2, got {k}"
        )));
    }
    if n < k {
        return Err(Error::OutOfRange(format!(
            "modulus {n} is below the progression length {k}"
        )));
    }
    let mut present = vec![false; n * n];
    for &(x, y) in cells {
        if x >= n || y >= n {
            return Err(Error::OutOfUniverse(format!(
                "cell ({x}, {y}) outside the {n} × {n} grid"
            )));
        }
        present[x * n + y] = true;
    }
    let ds: Vec<usize> = (1..n)
        .filter(|&d| n / gcd(n as u64, d as u64) as usize >= k)
        .collect();

    let best = (0..n)
        .into_par_iter()
        .filter_map(|a| {
            let mut row_ok = Vec::with_capacity(k);
            for b in 0..n {
                for &d in &ds {
                    row_ok.clear();
                    row_ok.extend((0..k).map(|i| (a + i * d) % n));
                    let hit = row_ok.iter().all(|&r| {
                        (0..k).all(|j| present[r * n + (b + j * d) % n])
                    });
                    if hit {
                        // First hit per `a` is least in (b, d); the reduce
                        // below finishes the ordering over `a`.
                        return Some((a, b, d));
                    }
                }
            }
            None
        })
        .min();

    Ok(best.map(|(a, b, d)| ApGridCert { a, b, d, k, n }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finders::certificates::{verify_certificate, Certificate, VerifyData};
    use crate::grids::TripleSystem;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn all_cells(n: usize) -> Vec<(usize, usize)> {
        (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).collect()
    }

    /// Unpruned reference: literal triple loop, no order filter shortcuts
    /// beyond the definition itself.
    fn naive(cells: &[(usize, usize)], n: usize, k: usize) -> Option<(usize, usize, usize)> {
        let set: std::collections::HashSet<(usize, usize)> = cells.iter().copied().collect();
        for a in 0..n {
            for b in 0..n {
                'd: for d in 1..n {
                    let mut seen = vec![false; n];
                    for i in 0..k {
                        let r = (a + i * d) % n;
                        if seen[r] {
                            continue 'd; // progression repeats: order < k
                        }
                        seen[r] = true;
                    }
                    for i in 0..k {
                        for j in 0..k {
                            if !set.contains(&((a + i * d) % n, (b + j * d) % n)) {
                                continue 'd;
                            }
                        }
                    }
                    return Some((a, b, d));
                }
            }
        }
        None
    }

    #[test]
    fn full_grid_gives_unit_difference() {
        let c = find_ap_grid(&all_cells(5), 5, 3).unwrap().unwrap();
        assert_eq!((c.a, c.b, c.d), (0, 0, 1));
    }

    #[test]
    fn even_cells_need_difference_two() {
        let cells: Vec<_> = (0..8)
            .flat_map(|x| (0..8).map(move |y| (x, y)))
            .filter(|&(x, y): &(usize, usize)| x % 2 == 0 && y % 2 == 0)
            .collect();
        let c = find_ap_grid(&cells, 8, 3).unwrap().unwrap();
        assert_eq!((c.a, c.b, c.d), (0, 0, 2));
    }

    #[test]
    fn single_cell_has_no_grid()     {
        assert!(find_ap_grid(&[(0, 0)], 5, 2).unwrap().is_none());
    }

    #[test]
    fn wrapping_progressions_are_found() {
        let rows = [0usize, 5, 6];
        let cells: Vec<_> = rows
            .iter()
            .flat_map(|&x| rows.iter().map(move |&y| (x, y)))
            .collect();
        let c = find_ap_grid(&cells, 7, 3).unwrap().unwrap();
        // 0, 6, 12 ≡ 5 (mod 7) stays inside {0, 5, 6}.
        assert_eq!((c.a, c.b, c.d), (0, 0, 6));
    }

    #[test]
    fn short_order_differences_are_skipped() {
        let pts = [0usize, 3];
        let cells: Vec<_> = pts
            .iter()
            .flat_map(|&x| pts.iter().map(move |&y| (x, y)))
            .collect();
        // d = 3 has additive order 2 in Z_6: fine at k = 2, dead at k = 3.
        let c = find_ap_grid(&cells, 6, 2).unwrap().unwrap();
        assert_eq!((c.a, c.b, c.d), (0, 0, 3));
        assert!(find_ap_grid(&cells, 6, 3).unwrap().is_none());
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(find_ap_grid(&all_cells(4), 4, 1).is_err());
        assert!(find_ap_grid(&all_cells(2), 2, 3).is_err());
        assert!(find_ap_grid(&[(5, 0)], 3, 2).is_err());
    }

    #[test]
    fn agrees_with_naive_scan_on_random_subsets() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in [5usize, 6, 7] {
            for trial in 0..40 {
                let cells: Vec<_> = all_cells(n)
                    .into_iter()
                    .filter(|_| rng.gen_bool(0.7))
                    .collect();
                let fast = find_ap_grid(&cells, n, 3).unwrap();
                let slow = naive(&cells, n, 3);
                match (fast, slow) {
                    (None, None) => {}
                    (Some(c), Some((a, b, d))) => {
                        assert_eq!((c.a, c.b, c.d), (a, b, d), "n={n} trial={trial}");
                        let ts = TripleSystem::from_triples(
                            (0..n).collect(),
                            (0..n).collect(),
                            vec![0],
                            cells.iter().map(|&(x, y)| (x, y, 0)).collect(),
                        )
                        .unwrap();
                        verify_certificate(&Certificate::ApGrid(c), &VerifyData::Grid(ts))
                            .unwrap();
                    }
                    (f, s) => panic!("disagreement at n={n} trial={trial}: {f:?} vs {s:?}"),
                }
            }
        }
    }

    #[test]
    fn success_is_monotone_in_k() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let cells: Vec<_> = all_cells(8)
                .into_iter()
                .filter(|_| rng.gen_bool(0.8))
                .collect();
            for k in (3..=4).rev() {
                if find_ap_grid(&cells, 8, k).unwrap().is_some() {
                    for smaller in 2..k {
                        assert!(
                            find_ap_grid(&cells, 8, smaller).unwrap().is_some(),
                            "found at {k} but not at {smaller}"
                        );
                    }
                }
            }
        }
    }
}
