use crate::error::{Error, Result};
use crate::group::GroupTable;
use rayon::prelude::*;

/// A validated subgroup of a [`GroupTable`], stored as a sorted member list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    parent_order: usize,
    members: Vec<usize>,
}

impl Subgroup {
    /// Validates that `members` really form a subgroup: within range,
    /// containing the identity, and closed under products (closure under
    /// inverses follows in a finite group).
    pub fn new(table: &GroupTable, mut members: Vec<usize>) -> Result<Subgroup> {
        let n = table.order();
        members.sort_unstable();
        members.dedup();
        if members.is_empty() {
            return Err(Error::InvalidSubgroup("empty member list".into()));
        }
        if let Some(&bad) = members.iter().find(|&&x| x >= n) {
            return Err(Error::InvalidSubgroup(format!(
                "member {bad} is outside 0..{n}"
            )));
        }
        let e = table
            .identity()
            .ok_or_else(|| Error::InvalidSubgroup("parent table has no identity".into()))?;
        if members.binary_search(&e).is_err() {
            return Err(Error::InvalidSubgroup(format!(
                "member list omits the identity {e}"
            )));
        }
        for &a in &members {
            for &b in &members {
                let ab = table.product(a, b);
                if members.binary_search(&ab).is_err() {
                    return Err(Error::InvalidSubgroup(format!(
                        "not closed: {a}·{b} = {ab} is missing"
                    )));
                }
            }
        }
        Ok(Subgroup {
            parent_order: n,
            members,
        })
    }

    /// The whole group as a subgroup of itself.
    pub fn whole(table: &GroupTable) -> Subgroup {
        Subgroup {
            parent_order: table.order(),
            members: (0..table.order()).collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn parent_order(&self) -> usize {
        self.parent_order
    }

    /// Sorted member list.
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }
}

/// Closure of `gens` under right multiplication, as a sorted element list.
/// In a finite group this is exactly the generated subgroup.
fn generated_subgroup(table: &GroupTable, gens: &[usize]) -> Vec<usize> {
    let e = table.identity().expect("valid group required");
    let mut seen = vec![false; table.order()];
    seen[e] = true;
    let mut stack = vec![e];
    let mut members = vec![e];
    while let Some(u) = stack.pop() {
        for &g in gens {
            let v = table.product(u, g);
            if !seen[v] {
                seen[v] = true;
                members.push(v);
                stack.push(v);
            }
        }
    }
    members.sort_unstable();
    members
}

/// Finds a large abelian subgroup, keeping the largest candidate over all
/// starting elements (ties broken toward the lexicographically smallest
/// member list). Returns an error only when even the best candidate has
/// fewer than `min_order` elements.
///
/// Each starting element seeds a greedy climb: repeatedly adjoin the
/// smallest element that commutes with everything collected so far, until
/// none is left. Every climb ends at a *maximal* abelian subgroup (its
/// centralizer is itself), the subgroup at least doubles per step, and an
/// abelian input group is always recovered whole.
pub fn find_abelian_subgroup(table: &GroupTable, min_order: usize) -> Result<Subgroup> {
    let n = table.order();
    if table.identity().is_none() {
        return Err(Error::InvalidSubgroup("table has no identity".into()));
    }

    let best = (0..n)
        .into_par_iter()
        .map(|x| {
            let mut gens = vec![x];
            let mut members = generated_subgroup(table, &gens);
            loop {
                let next = (0..n).find(|&y| {
                    members.binary_search(&y).is_err()
                        && members
                            .iter()
                            .all(|&h| table.product(h, y) == table.product(y, h))
                });
                match next {
                    Some(y) => {
                        gens.push(y);
                        members = generated_subgroup(table, &gens);
                    }
                    None => break,
                }
            }
            debug_assert!(is_abelian(table, &members));
            members
        })
        .reduce(
            || vec![table.identity().unwrap()],
            |a, b| if better(&b, &a) { b } else { a },
        );

    if best.len() < min_order {
        return Err(Error::NotFound(format!(
            "largest abelian subgroup found has order {}, below the requested {min_order}",
            best.len()
        )));
    }
    Ok(Subgroup {
        parent_order: n,
        members: best,
    })
}

fn is_abelian(table: &GroupTable, members: &[usize]) -> bool {
    for (i, &a) in members.iter().enumerate() {
        for &b in &members[i + 1..] {
            if table.product(a, b) != table.product(b, a) {
                return false;
            }
        }
    }
    true
}

/// Order first, then lexicographically smaller member list.
fn better(cand: &[usize], incumbent: &[usize]) -> bool {
    match cand.len().cmp(&incumbent.len()) {
        std::cmp::Ordering::Greater => true,
        std::cmp::Ordering::Less => false,
        std::cmp::Ordering::Equal => cand < incumbent,
    }
}
