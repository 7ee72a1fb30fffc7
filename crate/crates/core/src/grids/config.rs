use crate::error::{Error, Result};
use crate::grids::{Triple, TripleSystem};
use std::collections::BTreeSet;

/// Vertex usage of a configuration, counted per universe.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Span {
    pub rows: usize,
    pub cols: usize,
    pub labels: usize,
    /// `rows + cols + labels`: the configuration's vertex budget.
    pub total: usize,
}

/// A set of triples chosen from an ambient [`TripleSystem`]. The faces are
/// the chosen triples; the span is how many distinct vertices they touch.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Configuration {
    parent: TripleSystem,
    triples: Vec<Triple>,
}

impl Configuration {
    /// Validates that every triple belongs to the parent system.
    pub fn new(parent: TripleSystem, mut triples: Vec<Triple>) -> Result<Configuration> {
        triples.sort_unstable();
        triples.dedup();
        for &t in &triples {
            if !parent.contains_triple(t) {
                return Err(Error::OutOfUniverse(format!(
                    "triple ({}, {}, {}) is not in the parent system",
                    t.0, t.1, t.2
                )));
            }
        }
        Ok(Configuration { parent, triples })
    }

    pub fn parent(&self) -> &TripleSystem {
        &self.parent
    }

    /// Chosen triples, sorted row-major.
    pub fn triples(&self) -> &[Triple] {
        &self.triples
    }

    /// Number of faces.
    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    pub fn span(&self) -> Span {
        let rows: BTreeSet<usize> = self.triples.iter().map(|t| t.0).collect();
        let cols: BTreeSet<usize> = self.triples.iter().map(|t| t.1).collect();
        let labels: BTreeSet<usize> = self.triples.iter().map(|t| t.2).collect();
        Span {
            rows: rows.len(),
            cols: cols.len(),
            labels: labels.len(),
            total: rows.len() + cols.len() + labels.len(),
        }
    }

    /// The configuration as a standalone system. Universes stay the
    /// parent's, so ambient sizes survive a round trip through CSV.
    pub fn to_triple_system(&self) -> TripleSystem {
        TripleSystem::from_triples(
            self.parent.rows().to_vec(),
            self.parent.cols().to_vec(),
            self.parent.labels().to_vec(),
            self.triples.clone(),
        )
        .expect("configuration triples are valid in the parent universes")
    }
}
