use crate::group::GroupTable;

/// Outcome of the four group-axiom checks on a multiplication table.
///
/// `first_violation` describes the earliest failure found, in the checking
/// order below, with concrete element indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    /// Every row and every column is a permutation of the elements.
    pub latin_square: bool,
    /// Some element is a two-sided identity.
    pub identity: bool,
    /// Every element has a two-sided inverse (vacuously false with no identity).
    pub inverses: bool,
    /// `(a·b)·c = a·(b·c)` for all triples; this check is cubic in the order.
    pub associativity: bool,
    pub first_violation: Option<String>,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        self.latin_square && self.identity && self.inverses && self.associativity
    }
}

/// Checks the Latin-square property, identity, inverses, and associativity
/// directly from the table. The associativity pass visits all `n³` triples.
pub fn verify_group_axioms(table: &GroupTable) -> AxiomReport {
    let n = table.order();
    let mut violation: Option<String> = None;
    let note = |msg: String, slot: &mut Option<String>| {
        if slot.is_none() {
            *slot = Some(msg);
        }
    };

    let mut latin = true;
    'latin: for a in 0..n {
        let mut row_seen = vec![false; n];
        let mut col_seen = vec![false; n];
        for b in 0..n {
            let r = table.product(a, b);
            if row_seen[r] {
                note(format!("row {a} repeats value {r}"), &mut violation);
                latin = false;
                break 'latin;
            }
            row_seen[r] = true;
            let c = table.product(b, a);
            if col_seen[c] {
                note(format!("column {a} repeats value {c}"), &mut violation);
                latin = false;
                break 'latin;
            }
            col_seen[c] = true;
        }
    }

    let identity_elt =
        (0..n).find(|&e| (0..n).all(|x| table.product(e, x) == x && table.product(x, e) == x));
    if identity_elt.is_none() {
        note("no two-sided identity element".into(), &mut violation);
    }

    let inverses = match identity_elt {
        None => false,
        Some(e) => {
            let mut ok = true;
            for x in 0..n {
                if !(0..n).any(|y| table.product(x, y) == e && table.product(y, x) == e) {
                    note(format!("element {x} has no two-sided inverse"), &mut violation);
                    ok = false;
                    break;
                }
            }
            ok
        }
    };

    let mut assoc = true;
    'assoc: for a in 0..n {
        for b in 0..n {
            let ab = table.product(a, b);
            for c in 0..n {
                if table.product(ab, c) != table.product(a, table.product(b, c)) {
                    note(
                        format!("associativity fails at ({a},{b},{c})"),
                        &mut violation,
                    );
                    assoc = false;
                    break 'assoc;
                }
            }
        }
    }

    AxiomReport {
        latin_square: latin,
        identity: identity_elt.is_some(),
        inverses,
        associativity: assoc,
        first_violation: violation,
    }
}
