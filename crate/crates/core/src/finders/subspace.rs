//! Exhaustive search for combinatorial subspaces inside a set of words.

use crate::error::{Error, Result};
use crate::finders::certificates::SubspaceCert;
use std::collections::HashSet;

/// Default ceiling on the estimated enumeration size `(alphabet + k)^len`.
pub const DEFAULT_SUBSPACE_CAP: u64 = 50_000_000;

/// Finds a `k`-dimensional combinatorial subspace contained in `words`:
/// `k` disjoint nonempty wildcard sets plus a frozen base word, such that
/// every one of the `alphabet^k` instantiations is present.
///
/// Wildcard families are tried smaller-sets-first (each set advanced in
/// (size, lexicographic) order, sets ordered by increasing minimum), then
/// base words in lexicographic order, so the first hit is canonical and
/// `None` means a complete scan found nothing. The estimated enumeration
/// size `(alphabet + k)^len` must stay within the cap (`cap_override`
/// replaces [`DEFAULT_SUBSPACE_CAP`]), otherwise the search is refused.
pub fn find_combinatorial_subspace(
    words: &[Vec<u32>],
    alphabet: u32,
    len: usize,
    k: usize,
    cap_override: Option<u64>,
) -> Result<Option<SubspaceCert>> {
    if alphabet < 2 {
        return Err(Error::OutOfRange(format!(
            "alphabet must have at least 2 symbols, got {alphabet}"
        )));
    }
    if k < 1 || k > len {
        return Err(Error::OutOfRange(format!(
            "dimension {k} must be between 1 and the word length {len}"
        )));
    }
    let cap = cap_override.unwrap_or(DEFAULT_SUBSPACE_CAP);
    match u64::from(alphabet + k as u32).checked_pow(len as u32) {
        Some(est) if est <= cap => {}
        est => {
            return Err(Error::CapExceeded(format!(
                "estimated enumeration size ({} + {k})^{len} = {} exceeds the cap of {cap}",
                alphabet,
                est.map_or_else(|| "overflow".into(), |e: u64| e.to_string()),
            )))
        }
    }

    let mut set: HashSet<u64> = HashSet::with_capacity(words.len());
    for w in words {
        if w.len() != len {
            return Err(Error::OutOfUniverse(format!(
                "word of length {}, expected {len}",
                w.len()
            )));
        }
        if w.iter().any(|&d| d >= alphabet) {
            return Err(Error::OutOfUniverse(
                "word uses a symbol outside the alphabet".into(),
            ));
        }
        set.insert(encode(w, alphabet));
    }

    let weights: Vec<u64> = (0..len)
        .map(|j| u64::from(alphabet).pow((len - 1 - j) as u32))
        .collect();
    let mut search = Search {
        set,
        alphabet,
        len,
        k,
        weights,
        sets: Vec::with_capacity(k),
        used: vec![false; len],
    };
    Ok(search.family(0))
}

fn encode(w: &[u32], alphabet: u32) -> u64 {
    w.iter()
        .fold(0u64, |acc, &d| acc * u64::from(alphabet) + u64::from(d))
}

struct Search {
    set: HashSet<u64>,
    alphabet: u32,
    len: usize,
    k: usize,
    weights: Vec<u64>,
    sets: Vec<Vec<usize>>,
    used: Vec<bool>,
}

impl Search {
    /// Chooses wildcard set number `sets.len()`, all of whose positions must
    /// exceed `floor` (0 = unconstrained), then recurses.
    fn family(&mut self, floor: usize) -> Option<SubspaceCert> {
        if self.sets.len() == self.k {
            return self.bases();
        }
        let pool: Vec<usize> = (floor..self.len).filter(|&j| !self.used[j]).collect();
        for size in 1..=pool.len() {
            let mut combo: Vec<usize> = (0..size).collect();
            loop {
                let positions: Vec<usize> = combo.iter().map(|&i| pool[i]).collect();
                for &j in &positions {
                    self.used[j] = true;
                }
                let next_floor = positions[0] + 1;
                self.sets.push(positions);
                if let Some(found) = self.family(next_floor) {
                    return Some(found);
                }
                let positions = self.sets.pop().unwrap();
                for &j in &positions {
                    self.used[j] = false;
                }
                // Lexicographic successor of the index combination.
                let mut i = size;
                let mut advanced = false;
                while i > 0 {
                    i -= 1;
                    if combo[i] < pool.len() - size + i {
                        combo[i] += 1;
                        for j in i + 1..size {
                            combo[j] = combo[j - 1] + 1;
                        }
                        advanced = true;
                        break;
                    }
                }
                if !advanced {
                    break;
                }
            }
        }
        None
    }

    /// With the wildcard family fixed, walks base words in lexicographic
    /// order and tests all alphabet^k instantiations of each.
    fn bases(&self) -> Option<SubspaceCert> {
        let free: Vec<usize> = (0..self.len).filter(|&j| !self.used[j]).collect();
        let set_weights: Vec<u64> = self
            .sets
            .iter()
            .map(|s| s.iter().map(|&j| self.weights[j]).sum())
            .collect();
        let m = u64::from(self.alphabet);
        let mut z_vals = vec![0u32; free.len()];
        loop {
            let base: u64 = free
                .iter()
                .zip(&z_vals)
                .map(|(&j, &v)| self.weights[j] * u64::from(v))
                .sum();
            if self.all_points_present(base, &set_weights) {
                let mut z = vec![0u32; self.len];
                for (&j, &v) in free.iter().zip(&z_vals) {
                    z[j] = v;
                }
                return Some(SubspaceCert {
                    alphabet: self.alphabet,
                    z,
                    wildcard_sets: self.sets.clone(),
                });
            }
            let mut carry = true;
            for v in z_vals.iter_mut().rev() {
                *v += 1;
                if u64::from(*v) < m {
                    carry = false;
                    break;
                }
                *v = 0;
            }
            if carry {
                return None;
            }
        }
    }

    fn all_points_present(&self, base: u64, set_weights: &[u64]) -> bool {
        let mut assign = vec![0u64; self.k];
        loop {
            let idx = base
                + assign
                    .iter()
                    .zip(set_weights)
                    .map(|(&x, &w)| x * w)
                    .sum::<u64>();
            if !self.set.contains(&idx) {
                return false;
            }
            let mut carry = true;
            for slot in assign.iter_mut().rev() {
                *slot += 1;
                if *slot < u64::from(self.alphabet) {
                    carry = false;
                    break;
                }
                *slot = 0;
            }
            if carry {
                return true;
            }
        }
    }
}
