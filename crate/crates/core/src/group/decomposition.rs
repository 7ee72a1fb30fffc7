use crate::arith::is_prime;
use crate::error::{Error, Result};
use crate::group::{GroupTable, Subgroup};

/// One primary factor `(Z_{p^exponent})^multiplicity` of an abelian group.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimaryFactor {
    pub p: u64,
    pub exponent: u32,
    pub multiplicity: u32,
}

/// Primary decomposition of a finite abelian group: the multiset of cyclic
/// prime-power factors, sorted by `(p, exponent)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimaryDecomposition {
    pub factors: Vec<PrimaryFactor>,
}

impl PrimaryDecomposition {
    /// Product of all factor orders.
    pub fn order(&self) -> u64 {
        self.factors
            .iter()
            .map(|f| f.p.pow(f.exponent * f.multiplicity))
            .product()
    }

    /// Largest element order: the product over primes of the largest
    /// prime-power factor.
    pub fn exponent(&self) -> u64 {
        let mut acc = 1u64;
        let mut i = 0;
        while i < self.factors.len() {
            let p = self.factors[i].p;
            let mut max_e = 0;
            while i < self.factors.len() && self.factors[i].p == p {
                max_e = max_e.max(self.factors[i].exponent);
                i += 1;
            }
            acc *= p.pow(max_e);
        }
        acc
    }

    /// Number of cyclic factors whose order is a power of `p` (counting
    /// multiplicity), i.e. the rank of the `p`-part.
    pub fn rank_of(&self, p: u64) -> u32 {
        self.factors
            .iter()
            .filter(|f| f.p == p)
            .map(|f| f.multiplicity)
            .sum()
    }

    /// Distinct primes dividing the order, ascending.
    pub fn primes(&self) -> Vec<u64> {
        let mut ps: Vec<u64> = self.factors.iter().map(|f| f.p).collect();
        ps.dedup();
        ps
    }
}

/// Computes the primary decomposition of an abelian subgroup by counting,
/// for each prime `p` dividing the order, the elements killed by each power
/// `p^i`: if `c_i` of them exist then `log_p c_i − log_p c_{i−1}` counts the
/// cyclic factors of exponent at least `i`, and consecutive differences give
/// exact multiplicities. Fails with the first non-commuting pair if the
/// subgroup is not abelian.
pub fn primary_decomposition(
    table: &GroupTable,
    subgroup: &Subgroup,
) -> Result<PrimaryDecomposition> {
    if subgroup.parent_order() != table.order() {
        return Err(Error::InvalidSubgroup(format!(
            "subgroup lives in a group of order {}, table has order {}",
            subgroup.parent_order(),
            table.order()
        )));
    }
    let members = subgroup.members();
    for (i, &a) in members.iter().enumerate() {
        for &b in &members[i + 1..] {
            if table.product(a, b) != table.product(b, a) {
                return Err(Error::NotAbelian { a, b });
            }
        }
    }

    let h = members.len() as u64;
    let element_orders: Vec<u64> = members.iter().map(|&x| table.element_order(x)).collect();

    let mut factors = Vec::new();
    let mut remaining = h;
    let mut p = 2u64;
    while remaining > 1 {
        if !is_prime(p) || remaining % p != 0 {
            p += 1;
            continue;
        }
        let mut v = 0u32;
        while remaining % p == 0 {
            remaining /= p;
            v += 1;
        }
        // c[i] = #elements of order dividing p^i. Only pure p-power orders
        // contribute; in an abelian group they are exactly p^v in total.
        let mut kill_counts = vec![0u64; v as usize + 1];
        for &ord in &element_orders {
            let mut o = ord;
            let mut i = 0u32;
            while o % p == 0 {
                o /= p;
                i += 1;
            }
            if o == 1 && i <= v {
                kill_counts[i as usize] += 1;
            }
        }
        let mut c = vec![0u64; v as usize + 2];
        let mut acc = 0;
        for i in 0..=v as usize {
            acc += kill_counts[i];
            c[i] = acc;
        }
        c[v as usize + 1] = c[v as usize];
        let log_p = |x: u64| -> u32 {
            let mut e = 0;
            let mut y = 1u64;
            while y < x {
                y *= p;
                e += 1;
            }
            assert_eq!(y, x, "p-part of an abelian group must have p-power size");
            e
        };
        // m[i] = #cyclic factors with exponent ≥ i.
        let m: Vec<u32> = (0..=v as usize + 1)
            .map(|i| {
                if i == 0 {
                    0
                } else {
                    log_p(c[i]) - log_p(c[i - 1])
                }
            })
            .collect();
        for e in 1..=v as usize {
            let mult = m[e] - m[e + 1];
            if mult > 0 {
                factors.push(PrimaryFactor {
                    p,
                    exponent: e as u32,
                    multiplicity: mult,
                });
            }
        }
        p += 1;
    }

    let decomp = PrimaryDecomposition { factors };
    debug_assert_eq!(decomp.order(), h);
    Ok(decomp)
}
