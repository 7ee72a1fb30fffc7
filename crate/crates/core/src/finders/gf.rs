//! Dense little vectors over the prime field of `p` elements.
//!
//! Vectors are digit slices with the first coordinate most significant, so
//! lexicographic order on a vector agrees with numeric order on its index —
//! the same convention the group builders use for elementary abelian groups.

use crate::arith::checked_pow;

pub(crate) fn index_to_vec(idx: usize, p: u64, n: usize) -> Vec<u32> {
    let p = p as usize;
    let mut v = vec![0u32; n];
    let mut x = idx;
    for slot in v.iter_mut().rev() {
        *slot = (x % p) as u32;
        x /= p;
    }
    debug_assert_eq!(x, 0, "index {idx} does not fit in {n} base-{p} digits");
    v
}

pub(crate) fn vec_to_index(v: &[u32], p: u64) -> usize {
    let p = p as usize;
    v.iter().fold(0usize, |acc, &d| acc * p + d as usize)
}

pub(crate) fn add(x: &[u32], y: &[u32], p: u64) -> Vec<u32> {
    let p = p as u32;
    x.iter().zip(y).map(|(&a, &b)| (a + b) % p).collect()
}

/// Rank of a list of vectors via Gaussian elimination.
pub(crate) fn rank(rows: &[Vec<u32>], p: u64) -> usize {
    let p = p as u64;
    let mut mat: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x as u64 % p).collect())
        .collect();
    let n = match mat.first() {
        Some(r) => r.len(),
        None => return 0,
    };
    let mut rank = 0;
    for col in 0..n {
        let Some(pivot) = (rank..mat.len()).find(|&i| mat[i][col] != 0) else {
            continue;
        };
        mat.swap(rank, pivot);
        let inv = (1..p).find(|&x| x * mat[rank][col] % p == 1).unwrap();
        for j in col..n {
            mat[rank][j] = mat[rank][j] * inv % p;
        }
        for i in 0..mat.len() {
            if i != rank && mat[i][col] != 0 {
                let f = mat[i][col];
                for j in col..n {
                    mat[i][j] = (mat[i][j] + (p - f) * mat[rank][j]) % p;
                }
            }
        }
        rank += 1;
        if rank == mat.len() {
            break;
        }
    }
    rank
}

/// Number of `k`-dimensional subspaces of the `n`-dimensional space over
/// the field of `p` elements (the Gaussian binomial coefficient); `None` on
/// overflow, which any sane work cap treats as "too many".
pub(crate) fn subspace_count(p: u64, n: usize, k: usize) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let p = p as u128;
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    let pn = p.checked_pow(n as u32)?;
    let pk = p.checked_pow(k as u32)?;
    for i in 0..k {
        let pi = p.pow(i as u32);
        num = num.checked_mul(pn - pi)?;
        den = den.checked_mul(pk - pi)?;
    }
    Some(num / den)
}

/// Every `k`-dimensional subspace of `(Z_p)^n` exactly once, as its unique
/// reduced-echelon basis (rows listed pivot-first). The list is sorted by
/// the ascending-sorted tuple of basis vectors, compared lexicographically.
pub(crate) fn rref_bases(p: u64, n: usize, k: usize) -> Vec<Vec<Vec<u32>>> {
    let mut out = Vec::new();
    if k == 0 || k > n {
        return out;
    }
    let mut pivots: Vec<usize> = (0..k).collect();
    loop {
        // Free entries: row i, column j with j > pivots[i] and j not a pivot.
        let mut free: Vec<(usize, usize)> = Vec::new();
        for i in 0..k {
            for j in pivots[i] + 1..n {
                if !pivots.contains(&j) {
                    free.push((i, j));
                }
            }
        }
        let mut values = vec![0u32; free.len()];
        loop {
            let mut basis = vec![vec![0u32; n]; k];
            for i in 0..k {
                basis[i][pivots[i]] = 1;
            }
            for (slot, &(i, j)) in free.iter().enumerate() {
                basis[i][j] = values[slot];
            }
            out.push(basis);
            // Odometer over the free entries.
            let mut carry = true;
            for v in values.iter_mut().rev() {
                *v += 1;
                if u64::from(*v) < p {
                    carry = false;
                    break;
                }
                *v = 0;
            }
            if carry {
                break;
            }
        }
        // Next pivot-column combination in lexicographic order.
        let mut i = k;
        let mut advanced = false;
        while i > 0 {
            i -= 1;
            if pivots[i] < n - k + i {
                pivots[i] += 1;
                for j in i + 1..k {
                    pivots[j] = pivots[j - 1] + 1;
                }
                advanced = true;
                break;
            }
        }
        if !advanced {
            break;
        }
    }
    out.sort_by_cached_key(|basis| {
        let mut key = basis.clone();
        key.sort_unstable();
        key
    });
    out
}

/// The `p^k` points of the span of `basis`, ordered by ascending
/// coefficient vector (so the zero vector comes first).
pub(crate) fn span_points(basis: &[Vec<u32>], p: u64) -> Vec<Vec<u32>> {
    let n = basis.first().map_or(0, Vec::len);
    let mut points = vec![vec![0u32; n]];
    for b in basis {
        let mut next = Vec::with_capacity(points.len() * p as usize);
        for pt in &points {
            let mut shifted = pt.clone();
            for _ in 0..p {
                next.push(shifted.clone());
                shifted = add(&shifted, b, p);
            }
        }
        points = next;
    }
    points
}

/// One representative per coset of the span of `basis` in `(Z_p)^n`: the
/// numerically least element of each coset, in ascending order.
pub(crate) fn coset_reps(basis: &[Vec<u32>], p: u64, n: usize) -> Vec<usize> {
    let pn = checked_pow(p, n as u32).expect("universe fits in u64") as usize;
    let span = span_points(basis, p);
    let mut covered = vec![false; pn];
    let mut reps = Vec::with_capacity(pn / span.len());
    for idx in 0..pn {
        if covered[idx] {
            continue;
        }
        reps.push(idx);
        let v = index_to_vec(idx, p, n);
        for offset in &span {
            covered[vec_to_index(&add(&v, offset, p), p)] = true;
        }
    }
    reps
}
