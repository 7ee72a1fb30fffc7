use crate::arith::is_prime;
use crate::error::{Error, Result};
use std::fmt;
use std::str::FromStr;

/// Default cap on the order of any group this crate will materialize as a
/// full multiplication table.
pub const DEFAULT_ORDER_CAP: u64 = 10_000;

/// A name for a concretely representable finite group.
///
/// The textual grammar accepts atoms `Z<n>` (cyclic), `Z<p>^<m>` (elementary
/// abelian, `p` prime), `D<n>` (dihedral of order `2n`, `n ≥ 3`), `S<n>`
/// (symmetric, `n ≤ 8`), and `Q8`, joined by a case-insensitive `x` for
/// direct products: `Z4xZ2`, `S3 x Z5`, `Z2^3xD4`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(u64),
    ElementaryAbelian { p: u64, m: u32 },
    Dihedral(u64),
    Symmetric(u32),
    Quaternion,
    DirectProduct(Vec<GroupSpec>),
}

impl GroupSpec {
    /// Group order, or `None` on overflow.
    pub fn order(&self) -> Option<u64> {
        match self {
            GroupSpec::Cyclic(n) => Some(*n),
            GroupSpec::ElementaryAbelian { p, m } => p.checked_pow(*m),
            GroupSpec::Dihedral(n) => n.checked_mul(2),
            GroupSpec::Symmetric(n) => {
                let mut acc: u64 = 1;
                for i in 2..=(*n as u64) {
                    acc = acc.checked_mul(i)?;
                }
                Some(acc)
            }
            GroupSpec::Quaternion => Some(8),
            GroupSpec::DirectProduct(parts) => {
                let mut acc: u64 = 1;
                for part in parts {
                    acc = acc.checked_mul(part.order()?)?;
                }
                Some(acc)
            }
        }
    }

    fn parse_atom(atom: &str) -> Result<GroupSpec> {
        let err = |msg: String| Error::InvalidSpec(msg);
        let lower = atom.to_ascii_lowercase();
        if lower == "q8" {
            return Ok(GroupSpec::Quaternion);
        }
        let (head, rest) = match lower.split_at_checked(1) {
            Some(parts) => parts,
            None => return Err(err("empty atom".into())),
        };
        match head {
            "z" => {
                if let Some((base, exp)) = rest.split_once('^') {
                    let p: u64 = base
                        .parse()
                        .map_err(|_| err(format!("bad base in `{atom}`")))?;
                    let m: u32 = exp
                        .parse()
                        .map_err(|_| err(format!("bad exponent in `{atom}`")))?;
                    if !is_prime(p) {
                        return Err(err(format!("`{atom}`: base {p} must be prime")));
                    }
                    if m == 0 {
                        return Err(err(format!("`{atom}`: exponent must be at least 1")));
                    }
                    Ok(GroupSpec::ElementaryAbelian { p, m })
                } else {
                    let n: u64 = rest
                        .parse()
                        .map_err(|_| err(format!("bad order in `{atom}`")))?;
                    if n == 0 {
                        return Err(err(format!("`{atom}`: order must be at least 1")));
                    }
                    Ok(GroupSpec::Cyclic(n))
                }
            }
            "d" => {
                let n: u64 = rest
                    .parse()
                    .map_err(|_| err(format!("bad index in `{atom}`")))?;
                if n < 3 {
                    return Err(err(format!("`{atom}`: dihedral index must be at least 3")));
                }
                Ok(GroupSpec::Dihedral(n))
            }
            "s" => {
                let n: u32 = rest
                    .parse()
                    .map_err(|_| err(format!("bad degree in `{atom}`")))?;
                if n == 0 || n > 8 {
                    return Err(err(format!(
                        "`{atom}`: symmetric degree must be between 1 and 8"
                    )));
                }
                Ok(GroupSpec::Symmetric(n))
            }
            _ => Err(err(format!("unrecognized atom `{atom}`"))),
        }
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned.is_empty() {
            return Err(Error::InvalidSpec("empty expression".into()));
        }
        let mut atoms = Vec::new();
        for piece in cleaned.split(['x', 'X']) {
            if piece.is_empty() {
                return Err(Error::InvalidSpec(format!(
                    "empty factor in `{s}` (stray product sign?)"
                )));
            }
            atoms.push(GroupSpec::parse_atom(piece)?);
        }
        if atoms.len() == 1 {
            Ok(atoms.pop().unwrap())
        } else {
            Ok(GroupSpec::DirectProduct(atoms))
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "Z{n}"),
            GroupSpec::ElementaryAbelian { p, m } => write!(f, "Z{p}^{m}"),
            GroupSpec::Dihedral(n) => write!(f, "D{n}"),
            GroupSpec::Symmetric(n) => write!(f, "S{n}"),
            GroupSpec::Quaternion => write!(f, "Q8"),
            GroupSpec::DirectProduct(parts) => {
                let names: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
                write!(f, "{}", names.join("x"))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_atoms() {
        assert_eq!("Z12".parse::<GroupSpec>().unwrap(), GroupSpec::Cyclic(12));
        assert_eq!(
            "z2^5".parse::<GroupSpec>().unwrap(),
            GroupSpec::ElementaryAbelian { p: 2, m: 5 }
        );
        assert_eq!("D4".parse::<GroupSpec>().unwrap(), GroupSpec::Dihedral(4));
        assert_eq!("S5".parse::<GroupSpec>().unwrap(), GroupSpec::Symmetric(5));
        assert_eq!("q8".parse::<GroupSpec>().unwrap(), GroupSpec::Quaternion);
    }

    #[test]
    fn parses_products_case_insensitively() {
        let spec: GroupSpec = "Z4 X z2^2 x s3".parse().unwrap();
        assert_eq!(
            spec,
            GroupSpec::DirectProduct(vec![
                GroupSpec::Cyclic(4),
                GroupSpec::ElementaryAbelian { p: 2, m: 2 },
                GroupSpec::Symmetric(3),
            ])
        );
        assert_eq!(spec.order(), Some(4 * 4 * 6));
        assert_eq!(spec.to_string(), "Z4xZ2^2xS3");
    }

    #[test]
    fn rejects_bad_atoms() {
        for bad in [
            "", "x", "Z0", "Z4^2", "Z6^1", "D2", "S0", "S9", "Q16", "G5", "Z3x", "xZ3",
        ] {
            assert!(
                bad.parse::<GroupSpec>().is_err(),
                "`{bad}` should not parse"
            );
        }
    }

    #[test]
    fn orders() {
        assert_eq!("S8".parse::<GroupSpec>().unwrap().order(), Some(40320));
        assert_eq!("D10".parse::<GroupSpec>().unwrap().order(), Some(20));
        assert_eq!("Z2^10".parse::<GroupSpec>().unwrap().order(), Some(1024));
        // Overflow is reported as None rather than wrapping.
        let huge = GroupSpec::DirectProduct(vec![GroupSpec::Cyclic(u64::MAX), GroupSpec::Cyclic(3)]);
        assert_eq!(huge.order(), None);
    }
}
