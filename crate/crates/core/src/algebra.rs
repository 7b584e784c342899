//! Finite effect algebras stored as dense partial-sum tables.
//!
//! A [`FiniteEffectAlgebra`] can only be obtained through [`validate`], which
//! checks every instance of the effect-algebra axioms by exhaustion. Derived
//! data (orthosupplements, the order relation and differences `q ⊖ p`) is
//! computed once at validation time and is immutable afterwards.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Default hard cap on the carrier size.
pub const DEFAULT_MAX_ELEMENTS: usize = 64;

/// Position of an element in the carrier of its owning algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ElementId(pub usize);

impl ElementId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("duplicate element label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown element label `{0}`")]
    UnknownLabel(String),
    #[error("sum table must be {expected}x{expected}")]
    TableShape { expected: usize },
    #[error("sum entry {a} ⊕ {b} points outside the carrier")]
    EntryOutOfRange { a: String, b: String },
    #[error("conflicting entries for {a} ⊕ {b}: `{first}` and `{second}`")]
    ConflictingSum {
        a: String,
        b: String,
        first: String,
        second: String,
    },
    #[error("carrier has {size} elements, the cap is {cap}")]
    TooLarge { size: usize, cap: usize },
    #[error("degenerate algebra: zero and unit coincide")]
    Degenerate,
    #[error("commutativity fails: {0} ⊕ {1} and {1} ⊕ {0} disagree")]
    CommutativityViolation(String, String),
    #[error("associativity fails for p={0}, q={1}, r={2}")]
    AssociativityViolation(String, String, String),
    #[error("{0} has no orthosupplement")]
    SupplementMissing(String),
    #[error("{0} has two orthosupplements: {1} and {2}")]
    SupplementNotUnique(String, String, String),
    #[error("{0} is orthogonal to the unit but is not zero")]
    UnitIsotropic(String),
    #[error("declared zero does not act as a neutral element on {0}")]
    ZeroLawViolation(String),
    #[error("the zero element has no isotropic index")]
    ZeroHasNoIndex,
    #[error("algebra is not an orthoalgebra ({0} ⊕ {0} is defined)")]
    NotAnOrthoalgebra(String),
}

impl AlgebraError {
    /// True for errors about the shape of the input rather than an axiom.
    pub fn is_malformed(&self) -> bool {
        matches!(
            self,
            AlgebraError::DuplicateLabel(_)
                | AlgebraError::UnknownLabel(_)
                | AlgebraError::TableShape { .. }
                | AlgebraError::EntryOutOfRange { .. }
                | AlgebraError::ConflictingSum { .. }
                | AlgebraError::TooLarge { .. }
        )
    }
}

/// On-disk JSON form of an algebra. One orientation of each sum suffices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub elements: Vec<String>,
    pub zero: String,
    pub unit: String,
    pub sums: Vec<[String; 3]>,
}

/// An unvalidated dense partial table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawAlgebra {
    pub labels: Vec<String>,
    pub zero: usize,
    pub unit: usize,
    /// `table[a][b] = Some(c)` means `a ⊕ b = c`.
    pub table: Vec<Vec<Option<usize>>>,
}

impl RawAlgebra {
    /// Builds a dense table from the file form, symmetrizing single-sided
    /// entries. Opposite orientations with different values are reported as
    /// a commutativity violation.
    pub fn from_file(file: &AlgebraFile) -> Result<Self, AlgebraError> {
        let mut index = HashMap::with_capacity(file.elements.len());
        for (i, label) in file.elements.iter().enumerate() {
            if index.insert(label.as_str(), i).is_some() {
                return Err(AlgebraError::DuplicateLabel(label.clone()));
            }
        }
        let lookup = |label: &str| {
            index
                .get(label)
                .copied()
                .ok_or_else(|| AlgebraError::UnknownLabel(label.to_string()))
        };
        let n = file.elements.len();
        let zero = lookup(&file.zero)?;
        let unit = lookup(&file.unit)?;
        let mut table: Vec<Vec<Option<usize>>> = vec![vec![None; n]; n];
        // explicit entries first, so that mirrored entries never mask a conflict
        for [a, b, c] in &file.sums {
            let (a, b, c) = (lookup(a)?, lookup(b)?, lookup(c)?);
            match table[a][b] {
                Some(prev) if prev != c => {
                    return Err(AlgebraError::ConflictingSum {
                        a: file.elements[a].clone(),
                        b: file.elements[b].clone(),
                        first: file.elements[prev].clone(),
                        second: file.elements[c].clone(),
                    })
                }
                _ => table[a][b] = Some(c),
            }
        }
        #[allow(clippy::needless_range_loop)]
        for a in 0..n {
            for b in 0..n {
                match (table[a][b], table[b][a]) {
                    (Some(x), Some(y)) if x != y => {
                        return Err(AlgebraError::CommutativityViolation(
                            file.elements[a].clone(),
                            file.elements[b].clone(),
                        ))
                    }
                    (Some(x), None) => table[b][a] = Some(x),
                    _ => {}
                }
            }
        }
        Ok(RawAlgebra {
            labels: file.elements.clone(),
            zero,
            unit,
            table,
        })
    }
}

/// Order relation and orthosupplement of a validated algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderStructure {
    size: usize,
    leq: Vec<bool>,
    supplement: Vec<ElementId>,
}

impl OrderStructure {
    pub fn leq(&self, p: ElementId, q: ElementId) -> bool {
        self.leq[p.0 * self.size + q.0]
    }

    pub fn supplement(&self, p: ElementId) -> ElementId {
        self.supplement[p.0]
    }

    pub fn size(&self) -> usize {
        self.size
    }
}

/// A finite effect algebra `(L, 0, 1, ⊕)` that passed validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteEffectAlgebra {
    labels: Vec<String>,
    zero: ElementId,
    unit: ElementId,
    sum: Vec<Option<ElementId>>,
    /// `minus[q * n + p] = r` iff `p ⊕ r = q`.
    minus: Vec<Option<ElementId>>,
    order: OrderStructure,
}

/// Checks all effect-algebra axioms with the default size cap.
pub fn validate(raw: RawAlgebra) -> Result<FiniteEffectAlgebra, AlgebraError> {
    validate_with_cap(raw, DEFAULT_MAX_ELEMENTS)
}

pub fn validate_with_cap(raw: RawAlgebra, cap: usize) -> Result<FiniteEffectAlgebra, AlgebraError> {
    let n = raw.labels.len();
    if n > cap {
        return Err(AlgebraError::TooLarge { size: n, cap });
    }
    {
        let mut seen = HashMap::with_capacity(n);
        for label in &raw.labels {
            if seen.insert(label.as_str(), ()).is_some() {
                return Err(AlgebraError::DuplicateLabel(label.clone()));
            }
        }
    }
    if raw.table.len() != n || raw.table.iter().any(|row| row.len() != n) {
        return Err(AlgebraError::TableShape { expected: n });
    }
    if raw.zero >= n || raw.unit >= n {
        return Err(AlgebraError::TableShape { expected: n });
    }
    if n < 2 || raw.zero == raw.unit {
        return Err(AlgebraError::Degenerate);
    }
    let label = |i: usize| raw.labels[i].clone();
    for a in 0..n {
        for b in 0..n {
            if let Some(c) = raw.table[a][b] {
                if c >= n {
                    return Err(AlgebraError::EntryOutOfRange { a: label(a), b: label(b) });
                }
            }
        }
    }
    let sum = |a: usize, b: usize| raw.table[a][b];

    // (i) commutativity in definedness and value
    for a in 0..n {
        for b in a + 1..n {
            if sum(a, b) != sum(b, a) {
                return Err(AlgebraError::CommutativityViolation(label(a), label(b)));
            }
        }
    }

    // (ii) q ⊥ r and p ⊥ (q ⊕ r) imply p ⊥ q, (p ⊕ q) ⊥ r and equal sums
    for q in 0..n {
        for r in 0..n {
            let Some(qr) = sum(q, r) else { continue };
            for p in 0..n {
                let Some(lhs) = sum(p, qr) else { continue };
                let rhs = sum(p, q).and_then(|pq| sum(pq, r));
                if rhs != Some(lhs) {
                    return Err(AlgebraError::AssociativityViolation(label(p), label(q), label(r)));
                }
            }
        }
    }

    // (iii) unique orthosupplement
    let mut supplement = Vec::with_capacity(n);
    for p in 0..n {
        let mut found = (0..n).filter(|&q| sum(p, q) == Some(raw.unit));
        match (found.next(), found.next()) {
            (None, _) => return Err(AlgebraError::SupplementMissing(label(p))),
            (Some(q1), Some(q2)) => {
                return Err(AlgebraError::SupplementNotUnique(label(p), label(q1), label(q2)))
            }
            (Some(q), None) => supplement.push(ElementId(q)),
        }
    }

    // (iv') p ⊥ 1 implies p = 0
    for p in 0..n {
        if p != raw.zero && sum(p, raw.unit).is_some() {
            return Err(AlgebraError::UnitIsotropic(label(p)));
        }
    }

    for p in 0..n {
        if sum(raw.zero, p) != Some(p) {
            return Err(AlgebraError::ZeroLawViolation(label(p)));
        }
    }

    let mut table = Vec::with_capacity(n * n);
    let mut minus = vec![None; n * n];
    let mut leq = vec![false; n * n];
    for p in 0..n {
        for r in 0..n {
            let s = sum(p, r);
            table.push(s.map(ElementId));
            if let Some(q) = s {
                // cancellativity makes the difference unique
                minus[q * n + p] = Some(ElementId(r));
                leq[p * n + q] = true;
            }
        }
    }

    Ok(FiniteEffectAlgebra {
        labels: raw.labels,
        zero: ElementId(raw.zero),
        unit: ElementId(raw.unit),
        sum: table,
        minus,
        order: OrderStructure { size: n, leq, supplement },
    })
}

impl FiniteEffectAlgebra {
    pub fn from_file(file: &AlgebraFile) -> Result<Self, AlgebraError> {
        validate(RawAlgebra::from_file(file)?)
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn elements(&self) -> impl Iterator<Item = ElementId> + '_ {
        (0..self.labels.len()).map(ElementId)
    }

    pub fn zero(&self) -> ElementId {
        self.zero
    }

    pub fn unit(&self) -> ElementId {
        self.unit
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, p: ElementId) -> &str {
        &self.labels[p.0]
    }

    pub fn id_of(&self, label: &str) -> Option<ElementId> {
        self.labels.iter().position(|l| l == label).map(ElementId)
    }

    /// `a ⊕ b`, if defined.
    #[inline]
    pub fn sum(&self, a: ElementId, b: ElementId) -> Option<ElementId> {
        self.sum[a.0 * self.size() + b.0]
    }

    #[inline]
    pub fn orthogonal(&self, a: ElementId, b: ElementId) -> bool {
        self.sum(a, b).is_some()
    }

    /// The unique `r` with `p ⊕ r = q`, if `p ≤ q`.
    #[inline]
    pub fn minus(&self, q: ElementId, p: ElementId) -> Option<ElementId> {
        self.minus[q.0 * self.size() + p.0]
    }

    #[inline]
    pub fn supplement(&self, p: ElementId) -> ElementId {
        self.order.supplement(p)
    }

    #[inline]
    pub fn leq(&self, p: ElementId, q: ElementId) -> bool {
        self.order.leq(p, q)
    }

    /// Order relation and orthosupplement map.
    pub fn derive_order(&self) -> OrderStructure {
        self.order.clone()
    }

    /// Sum of a sequence of elements, left to right.
    pub fn sum_all<I: IntoIterator<Item = ElementId>>(&self, items: I) -> Option<ElementId> {
        items
            .into_iter()
            .try_fold(self.zero, |acc, x| self.sum(acc, x))
    }

    /// Dense raw form, e.g. for rebuilding after a permutation.
    pub fn to_raw(&self) -> RawAlgebra {
        let n = self.size();
        RawAlgebra {
            labels: self.labels.clone(),
            zero: self.zero.0,
            unit: self.unit.0,
            table: (0..n)
                .map(|a| {
                    (0..n)
                        .map(|b| self.sum(ElementId(a), ElementId(b)).map(|c| c.0))
                        .collect()
                })
                .collect(),
        }
    }

    /// File form with each unordered sum listed once (`a` index ≤ `b` index).
    pub fn to_file(&self) -> AlgebraFile {
        let mut sums = Vec::new();
        for a in self.elements() {
            for b in self.elements().filter(|b| *b >= a) {
                if let Some(c) = self.sum(a, b) {
                    sums.push([
                        self.label(a).to_string(),
                        self.label(b).to_string(),
                        self.label(c).to_string(),
                    ]);
                }
            }
        }
        AlgebraFile {
            elements: self.labels.clone(),
            zero: self.label(self.zero).to_string(),
            unit: self.label(self.unit).to_string(),
            sums,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("algebra file serializes")
    }

    /// Reorders the carrier: element `i` of the result is element `perm[i]` of `self`.
    pub fn permuted(&self, perm: &[usize]) -> Result<FiniteEffectAlgebra, AlgebraError> {
        let n = self.size();
        assert_eq!(perm.len(), n, "permutation length must match carrier size");
        let mut inverse = vec![usize::MAX; n];
        for (new, &old) in perm.iter().enumerate() {
            inverse[old] = new;
        }
        assert!(inverse.iter().all(|&i| i < n), "not a permutation");
        let raw = RawAlgebra {
            labels: perm.iter().map(|&old| self.labels[old].clone()).collect(),
            zero: inverse[self.zero.0],
            unit: inverse[self.unit.0],
            table: perm
                .iter()
                .map(|&a| {
                    perm.iter()
                        .map(|&b| self.sum(ElementId(a), ElementId(b)).map(|c| inverse[c.0]))
                        .collect()
                })
                .collect(),
        };
        validate_with_cap(raw, n.max(DEFAULT_MAX_ELEMENTS))
    }
}

impl std::str::FromStr for FiniteEffectAlgebra {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let file: AlgebraFile = serde_json::from_str(s).map_err(|e| e.to_string())?;
        FiniteEffectAlgebra::from_file(&file).map_err(|e| e.to_string())
    }
}
