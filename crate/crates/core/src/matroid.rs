//! Matroids presented by their lattice of flats.
//!
//! Elements carry labels (positive integers). A freshly constructed matroid on
//! `n` elements uses labels `1..=n`; intervals and deletions keep the labels of
//! the surviving elements so that coordinates stay traceable.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Axiom, Error, Result};
use crate::linalg::Matrix;

/// A subset of a matroid's ground set, stored as a bitset over element
/// positions (not labels).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct ElementSet(u64);

pub const MAX_GROUND: usize = 64;

impl ElementSet {
    pub const EMPTY: ElementSet = ElementSet(0);

    pub fn full(n: usize) -> Self {
        if n == 64 {
            ElementSet(u64::MAX)
        } else {
            ElementSet((1u64 << n) - 1)
        }
    }

    pub fn from_positions(positions: impl IntoIterator<Item = usize>) -> Self {
        positions.into_iter().fold(ElementSet(0), |s, p| s.with(p))
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, p: usize) -> bool {
        self.0 >> p & 1 == 1
    }

    pub fn with(self, p: usize) -> Self {
        ElementSet(self.0 | 1 << p)
    }

    pub fn without(self, p: usize) -> Self {
        ElementSet(self.0 & !(1 << p))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: ElementSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: ElementSet) -> Self {
        ElementSet(self.0 | other.0)
    }

    pub fn intersection(self, other: ElementSet) -> Self {
        ElementSet(self.0 & other.0)
    }

    pub fn difference(self, other: ElementSet) -> Self {
        ElementSet(self.0 & !other.0)
    }

    /// Positions in increasing order.
    pub fn positions(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let p = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(p)
            }
        })
    }

    /// Lexicographic comparison of the sorted position lists.
    pub fn lex_cmp(self, other: ElementSet) -> Ordering {
        self.positions().cmp(other.positions())
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Matroid {
    name: Option<String>,
    elements: Vec<usize>,
    flats: Vec<ElementSet>,
    ranks: Vec<usize>,
    rank: usize,
}

impl fmt::Debug for Matroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Matroid")
            .field("name", &self.name)
            .field("elements", &self.elements)
            .field("rank", &self.rank)
            .field("flats", &self.flats.iter().map(|&s| self.labels_of(s)).collect::<Vec<_>>())
            .finish()
    }
}

impl Matroid {
    /// Validates a flat collection on the ground set `1..=ground_size`.
    pub fn from_flats(ground_size: usize, flats: &[Vec<usize>]) -> Result<Self> {
        if ground_size == 0 {
            return Err(Error::InvalidInput("ground set must be nonempty".into()));
        }
        Self::from_labelled_flats((1..=ground_size).collect(), flats)
    }

    /// Validates a flat collection written in terms of the given element labels.
    pub fn from_labelled_flats(elements: Vec<usize>, flats: &[Vec<usize>]) -> Result<Self> {
        if elements.len() > MAX_GROUND {
            return Err(Error::InvalidInput(format!("ground set larger than {MAX_GROUND}")));
        }
        let mut sorted = elements.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != elements.len() || sorted != elements {
            return Err(Error::InvalidInput("element labels must be strictly increasing".into()));
        }
        let mut sets = Vec::with_capacity(flats.len());
        for flat in flats {
            let mut s = ElementSet::EMPTY;
            for &e in flat {
                match elements.binary_search(&e) {
                    Ok(p) => s = s.with(p),
                    Err(_) => {
                        return Err(Error::AxiomViolation {
                            axiom: Axiom::ElementRange,
                            detail: format!("element {e} of flat {flat:?} is not in the ground set"),
                        })
                    }
                }
            }
            sets.push(s);
        }
        Self::from_sets(elements, sets)
    }

    fn from_sets(elements: Vec<usize>, sets: Vec<ElementSet>) -> Result<Self> {
        let n = elements.len();
        let ground = ElementSet::full(n);
        let mut seen = HashSet::new();
        let flats: Vec<ElementSet> = sets.into_iter().filter(|s| seen.insert(*s)).collect();
        let label = |s: ElementSet| -> Vec<usize> { s.positions().map(|p| elements[p]).collect() };

        if !seen.contains(&ElementSet::EMPTY) {
            return Err(Error::AxiomViolation {
                axiom: Axiom::EmptyFlat,
                detail: "the empty set must be a flat".into(),
            });
        }
        if !seen.contains(&ground) {
            return Err(Error::AxiomViolation {
                axiom: Axiom::GroundFlat,
                detail: format!("the ground set {:?} must be a flat", elements),
            });
        }
        for (a, &f) in flats.iter().enumerate() {
            for &g in &flats[a + 1..] {
                if !seen.contains(&f.intersection(g)) {
                    return Err(Error::AxiomViolation {
                        axiom: Axiom::Intersection,
                        detail: format!(
                            "{:?} ∩ {:?} = {:?} is not a flat",
                            label(f),
                            label(g),
                            label(f.intersection(g))
                        ),
                    });
                }
            }
        }

        let mut by_size = flats.clone();
        by_size.sort_by_key(|s| (s.len(), s.bits()));
        let covers: Vec<Vec<ElementSet>> = by_size.iter().map(|&f| covers_in(&by_size, f)).collect();

        for (&f, cov) in by_size.iter().zip(&covers) {
            for p in ground.difference(f).positions() {
                let count = cov.iter().filter(|g| g.contains(p)).count();
                if count != 1 {
                    return Err(Error::AxiomViolation {
                        axiom: Axiom::UniqueCover,
                        detail: format!(
                            "flat {:?} and element {}: {} covering flats contain it (expected 1)",
                            label(f),
                            elements[p],
                            count
                        ),
                    });
                }
            }
        }

        // Longest-chain height, then check every cover steps it by exactly one.
        let index = |s: ElementSet| by_size.binary_search_by_key(&(s.len(), s.bits()), |t| (t.len(), t.bits())).unwrap();
        let mut height = vec![0usize; by_size.len()];
        for (i, cov) in covers.iter().enumerate() {
            for &g in cov {
                let j = index(g);
                height[j] = height[j].max(height[i] + 1);
            }
        }
        for (i, cov) in covers.iter().enumerate() {
            for &g in cov {
                if height[index(g)] != height[i] + 1 {
                    return Err(Error::AxiomViolation {
                        axiom: Axiom::Graded,
                        detail: format!(
                            "cover {:?} < {:?} skips a rank level; maximal chains differ in length",
                            label(by_size[i]),
                            label(g)
                        ),
                    });
                }
            }
        }

        let mut ranked: Vec<(usize, ElementSet)> =
            by_size.iter().enumerate().map(|(i, &s)| (height[i], s)).collect();
        ranked.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.lex_cmp(b.1)));
        let rank = height[index(ground)];
        Ok(Matroid {
            name: None,
            elements,
            ranks: ranked.iter().map(|r| r.0).collect(),
            flats: ranked.into_iter().map(|r| r.1).collect(),
            rank,
        })
    }

    pub fn boolean(n: usize) -> Result<Self> {
        if n == 0 || n > 20 {
            return Err(Error::InvalidInput(format!("boolean matroid size {n} out of range")));
        }
        let sets = (0..1u64 << n).map(ElementSet).collect();
        Ok(Self::from_sets((1..=n).collect(), sets)?.named(format!("B{n}")))
    }

    /// U(k, n): every subset of size below `k` is a flat, plus the ground set.
    pub fn uniform(k: usize, n: usize) -> Result<Self> {
        if k == 0 || k > n || n > 20 {
            return Err(Error::InvalidInput(format!("uniform matroid U({k},{n}) out of range")));
        }
        let ground = ElementSet::full(n);
        let sets = (0..1u64 << n)
            .map(ElementSet)
            .filter(|s| s.len() < k || *s == ground)
            .collect();
        Ok(Self::from_sets((1..=n).collect(), sets)?.named(format!("U({k},{n})")))
    }

    /// Matroid of the columns of `matrix`; flats are closed column subsets.
    pub fn from_vectors(matrix: &Matrix) -> Result<Self> {
        let n = matrix.ncols();
        if n == 0 || n > 16 {
            return Err(Error::InvalidInput(format!("{n} columns is out of range")));
        }
        let columns: Vec<_> = (0..n).map(|c| matrix.column(c)).collect();
        if let Some(c) = columns.iter().position(|col| crate::rational::is_zero_vec(col)) {
            return Err(Error::InvalidInput(format!(
                "column {} is zero; loops are not supported",
                c + 1
            )));
        }
        let rank_of = |s: u64| -> usize {
            let cols: Vec<_> = ElementSet(s).positions().map(|p| columns[p].clone()).collect();
            if cols.is_empty() {
                0
            } else {
                Matrix::from_columns(&cols, matrix.nrows()).rank()
            }
        };
        let ranks: Vec<usize> = (0..1u64 << n).map(rank_of).collect();
        let sets = (0..1u64 << n)
            .filter(|&s| (0..n).all(|p| s >> p & 1 == 1 || ranks[(s | 1 << p) as usize] > ranks[s as usize]))
            .map(ElementSet)
            .collect();
        Self::from_sets((1..=n).collect(), sets)
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn ground_size(&self) -> usize {
        self.elements.len()
    }

    /// Element labels, increasing.
    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn ground(&self) -> ElementSet {
        ElementSet::full(self.elements.len())
    }

    pub fn position(&self, label: usize) -> Option<usize> {
        self.elements.binary_search(&label).ok()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Flats in canonical order: by rank, then lexicographically.
    pub fn flats(&self) -> &[ElementSet] {
        &self.flats
    }

    pub fn flat_rank(&self, flat: ElementSet) -> Option<usize> {
        self.flat_index(flat).map(|i| self.ranks[i])
    }

    pub fn flat_index(&self, set: ElementSet) -> Option<usize> {
        self.flats.iter().position(|&f| f == set)
    }

    pub fn is_flat(&self, set: ElementSet) -> bool {
        self.flat_index(set).is_some()
    }

    pub fn is_nontrivial(&self, set: ElementSet) -> bool {
        !set.is_empty() && set != self.ground()
    }

    /// Nonempty proper flats in canonical order.
    pub fn nontrivial_flats(&self) -> Vec<ElementSet> {
        self.flats.iter().copied().filter(|&f| self.is_nontrivial(f)).collect()
    }

    /// Flat counts indexed by rank.
    pub fn flat_counts_by_rank(&self) -> Vec<usize> {
        let mut counts = vec![0; self.rank + 1];
        for &r in &self.ranks {
            counts[r] += 1;
        }
        counts
    }

    pub fn labels_of(&self, set: ElementSet) -> Vec<usize> {
        set.positions().map(|p| self.elements[p]).collect()
    }

    pub fn set_of_labels(&self, labels: &[usize]) -> Result<ElementSet> {
        labels.iter().try_fold(ElementSet::EMPTY, |s, &e| {
            self.position(e)
                .map(|p| s.with(p))
                .ok_or_else(|| Error::InvalidInput(format!("element {e} is not in the ground set")))
        })
    }

    pub fn covers(&self, flat: ElementSet) -> Vec<ElementSet> {
        covers_in(&self.flats, flat)
    }

    /// The matroid of the interval `[lower, upper]`, on `upper \ lower`.
    pub fn interval(&self, lower: ElementSet, upper: ElementSet) -> Result<Matroid> {
        for s in [lower, upper] {
            if !self.is_flat(s) {
                return Err(Error::InvalidInput(format!("{:?} is not a flat", self.labels_of(s))));
            }
        }
        if !lower.is_subset(upper) {
            return Err(Error::InvalidInput(format!(
                "{:?} is not below {:?}",
                self.labels_of(lower),
                self.labels_of(upper)
            )));
        }
        let kept: Vec<usize> = upper.difference(lower).positions().collect();
        let elements = kept.iter().map(|&p| self.elements[p]).collect();
        let sets = self
            .flats
            .iter()
            .filter(|f| lower.is_subset(**f) && f.is_subset(upper))
            .map(|f| reindex(f.difference(lower), &kept))
            .collect();
        Self::from_sets(elements, sets)
    }

    /// Localization `[∅, flat]`.
    pub fn localization(&self, flat: ElementSet) -> Result<Matroid> {
        self.interval(ElementSet::EMPTY, flat)
    }

    /// Contraction `[flat, E]`.
    pub fn contraction(&self, flat: ElementSet) -> Result<Matroid> {
        self.interval(flat, self.ground())
    }

    /// Deletion of the element labelled `label`; flats are the images `F \ {label}`.
    pub fn delete(&self, label: usize) -> Result<Matroid> {
        let p = self.element_position(label)?;
        if self.ground_size() < 2 {
            return Err(Error::InvalidInput("cannot delete from a one-element matroid".into()));
        }
        let kept: Vec<usize> = self.ground().without(p).positions().collect();
        let elements = kept.iter().map(|&q| self.elements[q]).collect();
        let sets = self.flats.iter().map(|f| reindex(f.without(p), &kept)).collect();
        Self::from_sets(elements, sets)
    }

    pub fn is_coloop(&self, label: usize) -> Result<bool> {
        Ok(self.delete(label)?.rank() < self.rank)
    }

    /// Labels of all coloops.
    pub fn coloops(&self) -> Vec<usize> {
        if self.ground_size() < 2 {
            return self.elements.clone();
        }
        self.elements.iter().copied().filter(|&e| self.is_coloop(e).unwrap_or(false)).collect()
    }

    /// Nontrivial flats `F` not containing the element with `F ∪ {element}` also
    /// a flat, in canonical (rank, lex) order, which refines inclusion.
    pub fn deletion_flat_pairs(&self, label: usize) -> Result<Vec<ElementSet>> {
        let p = self.element_position(label)?;
        if self.ground_size() < 2 || self.is_coloop(label)? {
            return Err(Error::ColoopInput(label));
        }
        Ok(self
            .flats
            .iter()
            .copied()
            .filter(|&f| self.is_nontrivial(f) && !f.contains(p) && self.is_flat(f.with(p)))
            .collect())
    }

    fn element_position(&self, label: usize) -> Result<usize> {
        self.position(label)
            .ok_or_else(|| Error::InvalidInput(format!("element {label} is not in the ground set")))
    }

    pub fn is_boolean(&self) -> bool {
        self.flats.len() as u128 == 1u128 << self.ground_size()
    }

    pub fn to_document(&self) -> MatroidDocument {
        let canonical: Vec<usize> = (1..=self.ground_size()).collect();
        MatroidDocument {
            name: self.name.clone(),
            ground_size: self.ground_size(),
            elements: (self.elements != canonical).then(|| self.elements.clone()),
            flats: self.flats.iter().map(|&f| self.labels_of(f)).collect(),
        }
    }

    pub fn from_document(doc: &MatroidDocument) -> Result<Self> {
        let elements = match &doc.elements {
            Some(e) => {
                if e.len() != doc.ground_size {
                    return Err(Error::InvalidInput("elements list does not match ground_size".into()));
                }
                e.clone()
            }
            None => (1..=doc.ground_size).collect(),
        };
        if elements.is_empty() {
            return Err(Error::InvalidInput("ground set must be nonempty".into()));
        }
        let m = Self::from_labelled_flats(elements, &doc.flats)?;
        Ok(match &doc.name {
            Some(n) => m.named(n.clone()),
            None => m,
        })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: MatroidDocument = serde_json::from_str(text)?;
        Self::from_document(&doc)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("matroid serializes")
    }
}

/// JSON form of a matroid: 1-based element labels, `[]` for the empty flat.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatroidDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub ground_size: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elements: Option<Vec<usize>>,
    pub flats: Vec<Vec<usize>>,
}

fn covers_in(flats: &[ElementSet], f: ElementSet) -> Vec<ElementSet> {
    let above: Vec<ElementSet> =
        flats.iter().copied().filter(|&g| g != f && f.is_subset(g)).collect();
    above
        .iter()
        .copied()
        .filter(|&g| !above.iter().any(|&h| h != g && h.is_subset(g)))
        .collect()
}

/// Re-encodes `set` (a subset of `kept`) in positions relative to `kept`.
fn reindex(set: ElementSet, kept: &[usize]) -> ElementSet {
    ElementSet::from_positions(kept.iter().enumerate().filter(|(_, &p)| set.contains(p)).map(|(i, _)| i))
}
