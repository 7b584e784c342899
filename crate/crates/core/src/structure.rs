//! Order-theoretic structure of a validated algebra.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraError, ElementId, FiniteEffectAlgebra};

/// Outcome of a decision procedure that can name a counterexample.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict<W> {
    Holds,
    Fails(W),
}

impl<W> Verdict<W> {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn counterexample(&self) -> Option<&W> {
        match self {
            Verdict::Holds => None,
            Verdict::Fails(w) => Some(w),
        }
    }
}

/// Mackey decomposition `p = x ⊕ z`, `q = y ⊕ z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub x: ElementId,
    pub y: ElementId,
    pub z: ElementId,
}

impl FiniteEffectAlgebra {
    /// Fails with the first nonzero `p` for which `p ⊕ p` is defined.
    pub fn orthoalgebra_verdict(&self) -> Verdict<ElementId> {
        match self
            .elements()
            .find(|&p| p != self.zero() && self.orthogonal(p, p))
        {
            Some(p) => Verdict::Fails(p),
            None => Verdict::Holds,
        }
    }

    pub fn is_orthoalgebra(&self) -> bool {
        self.orthoalgebra_verdict().holds()
    }

    fn require_orthoalgebra(&self) -> Result<(), AlgebraError> {
        match self.orthoalgebra_verdict() {
            Verdict::Holds => Ok(()),
            Verdict::Fails(p) => Err(AlgebraError::NotAnOrthoalgebra(self.label(p).to_string())),
        }
    }

    pub fn lower_bounds(&self, p: ElementId, q: ElementId) -> Vec<ElementId> {
        self.elements()
            .filter(|&x| self.leq(x, p) && self.leq(x, q))
            .collect()
    }

    pub fn upper_bounds(&self, p: ElementId, q: ElementId) -> Vec<ElementId> {
        self.elements()
            .filter(|&x| self.leq(p, x) && self.leq(q, x))
            .collect()
    }

    /// Greatest lower bound of `{p, q}`, if it exists.
    pub fn meet(&self, p: ElementId, q: ElementId) -> Option<ElementId> {
        let lower = self.lower_bounds(p, q);
        lower
            .iter()
            .copied()
            .find(|&m| lower.iter().all(|&x| self.leq(x, m)))
    }

    /// Least upper bound of `{p, q}`, if it exists.
    pub fn join(&self, p: ElementId, q: ElementId) -> Option<ElementId> {
        let upper = self.upper_bounds(p, q);
        upper
            .iter()
            .copied()
            .find(|&m| upper.iter().all(|&x| self.leq(m, x)))
    }

    /// `p ∧ p' = 0`.
    pub fn is_sharp(&self, p: ElementId) -> bool {
        self.meet(p, self.supplement(p)) == Some(self.zero())
    }

    pub fn sharp_elements(&self) -> Vec<ElementId> {
        self.elements().filter(|&p| self.is_sharp(p)).collect()
    }

    /// The interval `[0, p]` in index order.
    pub fn interval(&self, p: ElementId) -> Vec<ElementId> {
        self.elements().filter(|&x| self.leq(x, p)).collect()
    }

    /// Minimal nonzero elements.
    pub fn atoms(&self) -> Vec<ElementId> {
        let zero = self.zero();
        self.elements()
            .filter(|&p| p != zero && self.elements().all(|x| !self.leq(x, p) || x == zero || x == p))
            .collect()
    }

    pub fn is_atomic(&self) -> bool {
        let atoms = self.atoms();
        self.elements()
            .filter(|&p| p != self.zero())
            .all(|p| atoms.iter().any(|&a| self.leq(a, p)))
    }

    /// Largest `n` such that `p ⊕ p ⊕ … ⊕ p` (n summands) is defined, or
    /// `None` if the iteration does not terminate within the carrier size.
    fn iterate_multiples(&self, p: ElementId) -> Option<usize> {
        let mut acc = p;
        let mut n = 1;
        while let Some(next) = self.sum(acc, p) {
            acc = next;
            n += 1;
            if n > self.size() {
                return None;
            }
        }
        Some(n)
    }

    pub fn isotropic_index(&self, p: ElementId) -> Result<usize, AlgebraError> {
        if p == self.zero() {
            return Err(AlgebraError::ZeroHasNoIndex);
        }
        // n·p strictly increases in a finite poset, so this terminates
        Ok(self
            .iterate_multiples(p)
            .expect("multiples of a nonzero element strictly increase"))
    }

    pub fn is_archimedean(&self) -> bool {
        self.elements()
            .filter(|&p| p != self.zero())
            .all(|p| self.iterate_multiples(p).is_some())
    }

    /// Every decomposition `p = x ⊕ z`, `q = y ⊕ z` with `x, y, z` pairwise
    /// orthogonal, ordered by `z`. Empty means `p` and `q` are incompatible.
    pub fn are_compatible(&self, p: ElementId, q: ElementId) -> Vec<Decomposition> {
        self.elements()
            .filter_map(|z| {
                let x = self.minus(p, z)?;
                let y = self.minus(q, z)?;
                (self.orthogonal(x, y) && self.orthogonal(x, z) && self.orthogonal(y, z))
                    .then_some(Decomposition { x, y, z })
            })
            .collect()
    }

    pub fn incompatible_pairs(&self) -> Vec<(ElementId, ElementId)> {
        let mut out = Vec::new();
        for p in self.elements() {
            for q in self.elements().filter(|&q| q > p) {
                if self.are_compatible(p, q).is_empty() {
                    out.push((p, q));
                }
            }
        }
        out
    }

    /// Coherence law: every pairwise orthogonal triple has a defined sum.
    pub fn check_coherence(&self) -> Result<Verdict<(ElementId, ElementId, ElementId)>, AlgebraError> {
        self.require_orthoalgebra()?;
        for p in self.elements() {
            for q in self.elements().filter(|&q| self.orthogonal(p, q)) {
                let pq = self.sum(p, q).expect("orthogonal");
                for r in self.elements() {
                    if self.orthogonal(p, r) && self.orthogonal(q, r) && !self.orthogonal(pq, r) {
                        return Ok(Verdict::Fails((p, q, r)));
                    }
                }
            }
        }
        Ok(Verdict::Holds)
    }

    pub fn is_orthomodular_poset(&self) -> bool {
        self.check_coherence().map(|v| v.holds()).unwrap_or(false)
    }

    /// Boolean-ness via orthoalgebra + coherence + pairwise compatibility.
    pub fn is_boolean(&self) -> bool {
        self.is_orthomodular_poset() && self.incompatible_pairs().is_empty()
    }

    /// Boolean-ness decided on the order alone: a distributive lattice in
    /// which the orthosupplement is a lattice complement.
    pub fn is_boolean_lattice(&self) -> bool {
        let n = self.size();
        let mut meet = vec![ElementId(0); n * n];
        let mut join = vec![ElementId(0); n * n];
        for p in self.elements() {
            for q in self.elements() {
                match (self.meet(p, q), self.join(p, q)) {
                    (Some(m), Some(j)) => {
                        meet[p.0 * n + q.0] = m;
                        join[p.0 * n + q.0] = j;
                    }
                    _ => return false,
                }
            }
        }
        let m = |a: ElementId, b: ElementId| meet[a.0 * n + b.0];
        let j = |a: ElementId, b: ElementId| join[a.0 * n + b.0];
        for p in self.elements() {
            let s = self.supplement(p);
            if m(p, s) != self.zero() || j(p, s) != self.unit() {
                return false;
            }
        }
        for a in self.elements() {
            for b in self.elements() {
                for c in self.elements() {
                    if m(a, j(b, c)) != j(m(a, b), m(a, c)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn structure_report(&self) -> StructureReport {
        let is_orthoalgebra = self.is_orthoalgebra();
        let is_orthomodular_poset = is_orthoalgebra && self.is_orthomodular_poset();
        let incompatible_pairs = self.incompatible_pairs();
        let is_boolean = is_orthomodular_poset && incompatible_pairs.is_empty();
        let iota = self
            .elements()
            .filter(|&p| p != self.zero())
            .map(|p| (p, self.isotropic_index(p).expect("nonzero")))
            .collect();
        StructureReport {
            is_effect_algebra: true,
            is_orthoalgebra,
            is_orthomodular_poset,
            is_boolean,
            sharp_elements: self.sharp_elements(),
            atoms: self.atoms(),
            iota,
            is_atomic: self.is_atomic(),
            is_archimedean: self.is_archimedean(),
            incompatible_pairs,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureReport {
    pub is_effect_algebra: bool,
    pub is_orthoalgebra: bool,
    pub is_orthomodular_poset: bool,
    pub is_boolean: bool,
    pub sharp_elements: Vec<ElementId>,
    pub atoms: Vec<ElementId>,
    /// Isotropic index of every nonzero element.
    pub iota: BTreeMap<ElementId, usize>,
    pub is_atomic: bool,
    pub is_archimedean: bool,
    pub incompatible_pairs: Vec<(ElementId, ElementId)>,
}
