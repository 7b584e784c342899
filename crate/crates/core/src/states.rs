//! State spaces as exact-rational polytopes.
//!
//! A state is a vector `v` indexed by the carrier with `v_a + v_b = v_c`
//! whenever `a ⊕ b = c`, `v_1 = 1` and `v ≥ 0`. The equalities are solved
//! once into an affine parametrization `v = v₀ + B·t`; vertices are then the
//! feasible points where `d = dim t` linearly independent nonnegativity
//! constraints are active. All `d`-subsets are tried.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{ElementId, FiniteEffectAlgebra};
use crate::rational::{self, Rational};
use crate::structure::Verdict;

pub const MAX_STATE_CARRIER: usize = 32;
/// Upper bound on the number of active-set subsystems tried.
pub const MAX_SUBSYSTEMS: u128 = 20_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StateError {
    #[error("the algebra has no states")]
    EmptyStateSpace,
    #[error("carrier has {0} elements, vertex enumeration is capped at {MAX_STATE_CARRIER}")]
    TooLarge(usize),
    #[error("{0} active-set subsystems exceed the enumeration cap")]
    TooManySubsystems(u128),
}

/// `Σ coeff·v_p = rhs`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearEquation {
    pub terms: Vec<(ElementId, i64)>,
    pub rhs: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StateConstraints {
    pub variables: usize,
    pub equalities: Vec<LinearEquation>,
    /// Variables constrained to be nonnegative (all of them).
    pub nonnegative: Vec<ElementId>,
}

/// One equation per unordered defined sum plus `v_1 = 1`. `v_0 = 0` is not
/// postulated; it follows from `0 ⊕ 0 = 0`.
pub fn state_constraints(alg: &FiniteEffectAlgebra) -> StateConstraints {
    let mut equalities = Vec::new();
    for a in alg.elements() {
        for b in alg.elements().filter(|&b| b >= a) {
            let Some(c) = alg.sum(a, b) else { continue };
            let mut coeffs: BTreeMap<ElementId, i64> = BTreeMap::new();
            *coeffs.entry(a).or_default() += 1;
            *coeffs.entry(b).or_default() += 1;
            *coeffs.entry(c).or_default() -= 1;
            let terms: Vec<_> = coeffs.into_iter().filter(|(_, k)| *k != 0).collect();
            equalities.push(LinearEquation { terms, rhs: 0 });
        }
    }
    equalities.push(LinearEquation { terms: vec![(alg.unit(), 1)], rhs: 1 });
    StateConstraints {
        variables: alg.size(),
        equalities,
        nonnegative: alg.elements().collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StateVector {
    values: Vec<Rational>,
}

impl StateVector {
    pub fn new(values: Vec<Rational>) -> Self {
        StateVector { values }
    }

    pub fn get(&self, p: ElementId) -> &Rational {
        &self.values[p.index()]
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    /// Checks every defining constraint exactly; returns the first failure.
    pub fn check(&self, alg: &FiniteEffectAlgebra) -> Result<(), String> {
        if self.values.len() != alg.size() {
            return Err("wrong length".into());
        }
        if !self.get(alg.unit()).is_one() {
            return Err("value at unit is not 1".into());
        }
        if !self.get(alg.zero()).is_zero() {
            return Err("value at zero is not 0".into());
        }
        for p in alg.elements() {
            if !rational::is_nonnegative(self.get(p)) {
                return Err(format!("negative value at {}", alg.label(p)));
            }
        }
        for a in alg.elements() {
            for b in alg.elements() {
                if let Some(c) = alg.sum(a, b) {
                    if self.get(a) + self.get(b) != *self.get(c) {
                        return Err(format!("additivity fails on {} ⊕ {}", alg.label(a), alg.label(b)));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_dispersion_free(&self) -> bool {
        self.values.iter().all(|v| v.is_zero() || v.is_one())
    }

    /// Convex combination with the given nonnegative weights summing to 1.
    pub fn mixture(states: &[StateVector], weights: &[Rational]) -> StateVector {
        assert_eq!(states.len(), weights.len());
        let n = states.first().map(|s| s.values.len()).unwrap_or(0);
        let mut values = vec![Rational::zero(); n];
        for (s, w) in states.iter().zip(weights) {
            for (acc, v) in values.iter_mut().zip(&s.values) {
                *acc += w * v;
            }
        }
        StateVector { values }
    }

    /// `{label: "p/q"}` map.
    pub fn to_labelled(&self, alg: &FiniteEffectAlgebra) -> BTreeMap<String, String> {
        alg.elements()
            .map(|p| (alg.label(p).to_string(), rational::format(self.get(p))))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StatePolytope {
    /// Pairwise distinct, sorted.
    pub vertices: Vec<StateVector>,
    pub dimension: usize,
}

impl StatePolytope {
    pub fn to_json(&self, alg: &FiniteEffectAlgebra) -> serde_json::Value {
        serde_json::to_value(self.vertices.iter().map(|v| v.to_labelled(alg)).collect::<Vec<_>>())
            .expect("vertex maps serialize")
    }
}

/// Affine parametrization `v = base + Σ t_j · directions[j]`.
struct Parametrization {
    base: Vec<Rational>,
    directions: Vec<Vec<Rational>>,
}

fn solve_equalities(alg: &FiniteEffectAlgebra) -> Option<Parametrization> {
    let n = alg.size();
    let cons = state_constraints(alg);
    let mut rows: Vec<Vec<Rational>> = cons
        .equalities
        .iter()
        .map(|eq| {
            let mut row = vec![Rational::zero(); n + 1];
            for (p, k) in &eq.terms {
                row[p.index()] += rational::int(*k);
            }
            row[n] = rational::int(eq.rhs);
            row
        })
        .collect();
    let pivots = rational::rref(&mut rows, n + 1);
    if pivots.contains(&n) {
        return None;
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let mut base = vec![Rational::zero(); n];
    for (r, &c) in pivots.iter().enumerate() {
        base[c] = rows[r][n].clone();
    }
    let directions = free
        .iter()
        .map(|&f| {
            let mut dir = vec![Rational::zero(); n];
            dir[f] = Rational::one();
            for (r, &c) in pivots.iter().enumerate() {
                dir[c] = -rows[r][f].clone();
            }
            dir
        })
        .collect();
    Some(Parametrization { base, directions })
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc.saturating_mul((n - i) as u128) / (i as u128 + 1))
}

/// Exact vertex enumeration of the state polytope.
pub fn enumerate_vertex_states(alg: &FiniteEffectAlgebra) -> Result<StatePolytope, StateError> {
    let n = alg.size();
    if n > MAX_STATE_CARRIER {
        return Err(StateError::TooLarge(n));
    }
    let param = solve_equalities(alg).ok_or(StateError::EmptyStateSpace)?;
    let d = param.directions.len();

    // inequality rows g·t ≥ -h, one per carrier element, deduplicated
    let mut rows: Vec<(Vec<Rational>, Rational)> = Vec::new();
    for p in 0..n {
        let g: Vec<Rational> = param.directions.iter().map(|dir| dir[p].clone()).collect();
        let h = param.base[p].clone();
        if g.iter().all(Zero::is_zero) {
            if !rational::is_nonnegative(&h) {
                return Err(StateError::EmptyStateSpace);
            }
            continue;
        }
        if !rows.iter().any(|(g2, h2)| *g2 == g && *h2 == h) {
            rows.push((g, h));
        }
    }

    let point = |t: &[Rational]| -> Vec<Rational> {
        let mut v = param.base.clone();
        for (tj, dir) in t.iter().zip(&param.directions) {
            for (x, dx) in v.iter_mut().zip(dir) {
                *x += tj * dx;
            }
        }
        v
    };
    let feasible = |v: &[Rational]| v.iter().all(rational::is_nonnegative);

    let mut vertices: Vec<StateVector> = Vec::new();
    if d == 0 {
        let v = point(&[]);
        if feasible(&v) {
            vertices.push(StateVector { values: v });
        }
    } else {
        let count = binomial(rows.len(), d);
        if count > MAX_SUBSYSTEMS {
            return Err(StateError::TooManySubsystems(count));
        }
        let mut chosen: Vec<usize> = Vec::with_capacity(d);
        enumerate_subsets(rows.len(), d, 0, &mut chosen, &mut |subset| {
            let m: Vec<Vec<Rational>> = subset.iter().map(|&i| rows[i].0.clone()).collect();
            let rhs: Vec<Rational> = subset.iter().map(|&i| -rows[i].1.clone()).collect();
            if let Some(t) = rational::solve_square(&m, &rhs) {
                let v = point(&t);
                if feasible(&v) {
                    vertices.push(StateVector { values: v });
                }
            }
        });
    }
    vertices.sort();
    vertices.dedup();
    if vertices.is_empty() {
        return Err(StateError::EmptyStateSpace);
    }
    let dimension = {
        let origin = &vertices[0].values;
        let diffs: Vec<Vec<Rational>> = vertices[1..]
            .iter()
            .map(|v| v.values.iter().zip(origin).map(|(a, b)| a - b).collect())
            .collect();
        rational::rank(diffs, n)
    };
    Ok(StatePolytope { vertices, dimension })
}

fn enumerate_subsets(n: usize, k: usize, start: usize, chosen: &mut Vec<usize>, visit: &mut impl FnMut(&[usize])) {
    if chosen.len() == k {
        visit(chosen);
        return;
    }
    let remaining = k - chosen.len();
    for i in start..=n - remaining {
        chosen.push(i);
        enumerate_subsets(n, k, i + 1, chosen, visit);
        chosen.pop();
    }
}

/// Fails with every pair `p < q` that no vertex state distinguishes.
pub fn is_separating(alg: &FiniteEffectAlgebra, polytope: &StatePolytope) -> Verdict<Vec<(ElementId, ElementId)>> {
    let mut merged = Vec::new();
    for p in alg.elements() {
        for q in alg.elements().filter(|&q| q > p) {
            if polytope.vertices.iter().all(|s| s.get(p) == s.get(q)) {
                merged.push((p, q));
            }
        }
    }
    if merged.is_empty() {
        Verdict::Holds
    } else {
        Verdict::Fails(merged)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{boolean_powerset, chain, horizontal_sum, mo};
    use crate::rational::{frac, int};

    fn values(alg: &FiniteEffectAlgebra, s: &StateVector, labels: &[&str]) -> Vec<Rational> {
        labels.iter().map(|l| s.get(alg.id_of(l).unwrap()).clone()).collect()
    }

    #[test]
    fn constraint_examples() {
        let c2 = chain(2).unwrap();
        let h = c2.id_of("1/2").unwrap();
        let cons = state_constraints(&c2);
        assert!(cons.equalities.contains(&LinearEquation { terms: vec![(h, 2), (c2.unit(), -1)], rhs: 0 }));
        assert!(cons.equalities.contains(&LinearEquation { terms: vec![(c2.unit(), 1)], rhs: 1 }));

        let m = mo(2).unwrap();
        let id = |s: &str| m.id_of(s).unwrap();
        let cons = state_constraints(&m);
        // 0⊕x for six x, two complement pairs, and the unit equation
        assert_eq!(cons.equalities.len(), 6 + 2 + 1);
        assert!(cons.equalities.contains(&LinearEquation {
            terms: vec![(m.unit(), -1), (id("a_1"), 1), (id("a_1'"), 1)],
            rhs: 0
        }));
    }

    #[test]
    fn vertex_examples() {
        let b2 = boolean_powerset(2).unwrap();
        let poly = enumerate_vertex_states(&b2).unwrap();
        let got: Vec<_> = poly.vertices.iter().map(|v| values(&b2, v, &["{1}", "{2}"])).collect();
        assert_eq!(got, vec![vec![int(0), int(1)], vec![int(1), int(0)]]);
        assert_eq!(poly.dimension, 1);

        let c2 = chain(2).unwrap();
        let poly = enumerate_vertex_states(&c2).unwrap();
        assert_eq!(poly.vertices.len(), 1);
        assert_eq!(values(&c2, &poly.vertices[0], &["1/2"]), vec![frac(1, 2)]);
        assert_eq!(poly.dimension, 0);

        let m = mo(2).unwrap();
        let poly = enumerate_vertex_states(&m).unwrap();
        let mut got: Vec<_> = poly.vertices.iter().map(|v| values(&m, v, &["a_1", "a_2"])).collect();
        got.sort();
        assert_eq!(
            got,
            vec![
                vec![int(0), int(0)],
                vec![int(0), int(1)],
                vec![int(1), int(0)],
                vec![int(1), int(1)]
            ]
        );
        assert_eq!(poly.dimension, 2);
    }

    #[test]
    fn separation_examples() {
        for alg in [boolean_powerset(2).unwrap(), chain(2).unwrap()] {
            let poly = enumerate_vertex_states(&alg).unwrap();
            assert!(is_separating(&alg, &poly).holds());
        }
        let b1 = boolean_powerset(1).unwrap();
        let hs = horizontal_sum(&[b1.clone(), b1]).unwrap();
        let poly = enumerate_vertex_states(&hs).unwrap();
        // a two-element algebra is always separated by its unique state
        assert!(is_separating(&hs, &poly).holds());
    }

    #[test]
    fn vertices_satisfy_constraints_exactly() {
        for alg in [boolean_powerset(3).unwrap(), mo(3).unwrap(), chain(5).unwrap()] {
            for v in enumerate_vertex_states(&alg).unwrap().vertices {
                v.check(&alg).unwrap();
            }
        }
    }

    #[test]
    fn carrier_cap() {
        let b5 = boolean_powerset(5).unwrap();
        assert_eq!(enumerate_vertex_states(&b5).unwrap().vertices.len(), 5);
        let big = crate::catalog::product(&[boolean_powerset(5).unwrap(), chain(1).unwrap()]).unwrap();
        assert_eq!(enumerate_vertex_states(&big), Err(StateError::TooLarge(64)));
    }

    #[test]
    fn labelled_output_uses_fractions() {
        let c2 = chain(2).unwrap();
        let poly = enumerate_vertex_states(&c2).unwrap();
        let json = poly.to_json(&c2);
        assert_eq!(json, serde_json::json!([{"0": "0", "1/2": "1/2", "1": "1"}]));
    }
}
