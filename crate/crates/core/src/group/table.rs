use crate::error::{Error, Result};
use crate::group::GroupSpec;
use std::collections::HashMap;

/// A finite group materialized as a full multiplication table.
///
/// Elements are indices `0..order`. For every supported family the identity
/// sits at index 0 and the element order follows a documented convention:
///
/// * `Z<n>`: residues `0..n` in natural order.
/// * `Z<p>^<m>`: coordinate tuples in lexicographic order with the first
///   coordinate most significant, so index `c < p` is the tuple whose last
///   coordinate is `c`.
/// * `D<n>`: rotations `r0..r{n-1}` first, then reflections `s0..s{n-1}`,
///   where `s{j}` is the reflection `s·r{j}` and products follow
///   `(s^a r^j)(s^b r^k) = s^{a XOR b} r^{(-1)^b j + k}`.
/// * `S<n>`: permutations in lexicographic one-line order, composed as
///   `(f∘g)(x) = f(g(x))`.
/// * `Q8`: `1, -1, i, -i, j, -j, k, -k`.
/// * Direct products: mixed-radix tuples, leftmost factor most significant.
#[derive(Debug, Clone)]
pub struct GroupTable {
    order: usize,
    mul: Vec<u32>,
    identity: Option<usize>,
    names: Vec<String>,
}

impl GroupTable {
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn product(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }

    /// Two-sided identity, when the table has one.
    pub fn identity(&self) -> Option<usize> {
        self.identity
    }

    pub fn name(&self, x: usize) -> &str {
        &self.names[x]
    }

    /// `x⁻¹`. Meaningful only when the group axioms hold.
    pub fn inverse(&self, x: usize) -> usize {
        let e = self.identity.expect("table has no identity");
        (0..self.order)
            .find(|&y| self.product(x, y) == e && self.product(y, x) == e)
            .expect("element has no inverse")
    }

    /// `x^e` by repeated squaring. Meaningful only for valid groups.
    pub fn pow(&self, x: usize, e: u64) -> usize {
        let mut acc = self.identity.expect("table has no identity");
        let mut base = x;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.product(acc, base);
            }
            base = self.product(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative order of `x`. Meaningful only for valid groups.
    pub fn element_order(&self, x: usize) -> u64 {
        let e = self.identity.expect("table has no identity");
        let mut cur = x;
        let mut ord = 1u64;
        while cur != e {
            cur = self.product(cur, x);
            ord += 1;
            assert!(
                ord <= self.order as u64,
                "element order exceeds group order; table is not a group"
            );
        }
        ord
    }

    /// Wraps an explicit square matrix as a table. Only structural shape is
    /// checked (squareness and entry range); use
    /// [`verify_group_axioms`](crate::group::verify_group_axioms) to test
    /// whether the result is actually a group.
    pub fn from_rows(rows: Vec<Vec<usize>>) -> Result<GroupTable> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidTable("empty table".into()));
        }
        let mut mul = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidTable(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            for (j, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(Error::InvalidTable(format!(
                        "entry ({i},{j}) = {v} is outside 0..{n}"
                    )));
                }
                mul.push(v as u32);
            }
        }
        let identity = (0..n).find(|&e| {
            (0..n).all(|x| mul[e * n + x] as usize == x && mul[x * n + e] as usize == x)
        });
        let names = (0..n).map(|i| i.to_string()).collect();
        Ok(GroupTable {
            order: n,
            mul,
            identity,
            names,
        })
    }
}

/// Builds the multiplication table named by `spec`, refusing orders above
/// `cap` before allocating anything.
pub fn build_group(spec: &GroupSpec, cap: u64) -> Result<GroupTable> {
    let order = spec
        .order()
        .ok_or_else(|| Error::InvalidSpec(format!("`{spec}`: order overflows")))?;
    if order > cap {
        return Err(Error::SpecTooLarge { order, cap });
    }
    let (order, mul, names) = build_part(spec);
    Ok(GroupTable {
        order,
        mul,
        identity: Some(0),
        names,
    })
}

type Part = (usize, Vec<u32>, Vec<String>);

fn build_part(spec: &GroupSpec) -> Part {
    match spec {
        GroupSpec::Cyclic(n) => cyclic(*n as usize),
        GroupSpec::ElementaryAbelian { p, m } => elementary(*p as usize, *m as usize),
        GroupSpec::Dihedral(n) => dihedral(*n as usize),
        GroupSpec::Symmetric(n) => symmetric(*n as usize),
        GroupSpec::Quaternion => quaternion(),
        GroupSpec::DirectProduct(parts) => {
            let built: Vec<Part> = parts.iter().map(build_part).collect();
            direct_product(&built)
        }
    }
}

fn cyclic(n: usize) -> Part {
    let mut mul = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            mul.push(((a + b) % n) as u32);
        }
    }
    let names = (0..n).map(|i| i.to_string()).collect();
    (n, mul, names)
}

fn elementary(p: usize, m: usize) -> Part {
    let n = p.pow(m as u32);
    // Coordinates of each index, first coordinate most significant.
    let coords: Vec<Vec<usize>> = (0..n)
        .map(|mut idx| {
            let mut c = vec![0; m];
            for slot in (0..m).rev() {
                c[slot] = idx % p;
                idx /= p;
            }
            c
        })
        .collect();
    let mut mul = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            let mut idx = 0;
            for i in 0..m {
                idx = idx * p + (coords[a][i] + coords[b][i]) % p;
            }
            mul.push(idx as u32);
        }
    }
    let names = coords
        .iter()
        .map(|c| {
            if m == 1 {
                c[0].to_string()
            } else {
                let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
                format!("({})", parts.join(","))
            }
        })
        .collect();
    (n, mul, names)
}

fn dihedral(n: usize) -> Part {
    let total = 2 * n;
    let mut mul = Vec::with_capacity(total * total);
    for a in 0..total {
        let (s, j) = (a / n, a % n);
        for b in 0..total {
            let (t, k) = (b / n, b % n);
            let flip = s ^ t;
            let rot = if t == 0 { (j + k) % n } else { (k + n - j) % n };
            mul.push((flip * n + rot) as u32);
        }
    }
    let mut names: Vec<String> = (0..n).map(|j| format!("r{j}")).collect();
    names.extend((0..n).map(|j| format!("s{j}")));
    (total, mul, names)
}

fn symmetric(n: usize) -> Part {
    let perms = all_permutations_lex(n);
    let total = perms.len();
    let rank: HashMap<&[u8], u32> = perms
        .iter()
        .enumerate()
        .map(|(i, p)| (p.as_slice(), i as u32))
        .collect();
    let mut mul = Vec::with_capacity(total * total);
    let mut composed = vec![0u8; n];
    for a in &perms {
        for b in &perms {
            for x in 0..n {
                composed[x] = a[b[x] as usize];
            }
            mul.push(rank[composed.as_slice()]);
        }
    }
    let names = perms
        .iter()
        .map(|p| p.iter().map(|d| d.to_string()).collect::<String>())
        .collect();
    (total, mul, names)
}

fn all_permutations_lex(n: usize) -> Vec<Vec<u8>> {
    let mut cur: Vec<u8> = (0..n as u8).collect();
    let mut out = vec![cur.clone()];
    while next_permutation(&mut cur) {
        out.push(cur.clone());
    }
    out
}

fn next_permutation(p: &mut [u8]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

fn quaternion() -> Part {
    // Index = basis * 2 + sign_bit, basis in {1, i, j, k}.
    // mul_basis[a][b] = (resulting basis, sign is negative).
    const MUL_BASIS: [[(usize, bool); 4]; 4] = [
        [(0, false), (1, false), (2, false), (3, false)],
        [(1, false), (0, true), (3, false), (2, true)],
        [(2, false), (3, true), (0, true), (1, false)],
        [(3, false), (2, false), (1, true), (0, true)],
    ];
    let mut mul = Vec::with_capacity(64);
    for a in 0..8 {
        let (ba, sa) = (a / 2, a % 2 == 1);
        for b in 0..8 {
            let (bb, sb) = (b / 2, b % 2 == 1);
            let (bc, neg) = MUL_BASIS[ba][bb];
            let sc = sa ^ sb ^ neg;
            mul.push((bc * 2 + sc as usize) as u32);
        }
    }
    let names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
        .into_iter()
        .map(String::from)
        .collect();
    (8, mul, names)
}

fn direct_product(parts: &[Part]) -> Part {
    let f = parts.len();
    let total: usize = parts.iter().map(|p| p.0).product();
    // Mixed-radix digits of every index, leftmost factor most significant.
    let digits: Vec<Vec<u32>> = (0..total)
        .map(|mut idx| {
            let mut d = vec![0u32; f];
            for slot in (0..f).rev() {
                d[slot] = (idx % parts[slot].0) as u32;
                idx /= parts[slot].0;
            }
            d
        })
        .collect();
    let mut mul = Vec::with_capacity(total * total);
    for a in 0..total {
        for b in 0..total {
            let mut idx = 0usize;
            for i in 0..f {
                let (n_i, mul_i, _) = &parts[i];
                idx = idx * n_i + mul_i[digits[a][i] as usize * n_i + digits[b][i] as usize] as usize;
            }
            mul.push(idx as u32);
        }
    }
    let names = digits
        .iter()
        .map(|d| {
            let comps: Vec<&str> = d
                .iter()
                .enumerate()
                .map(|(i, &x)| parts[i].2[x as usize].as_str())
                .collect();
            format!("({})", comps.join(","))
        })
        .collect();
    (total, mul, names)
}
