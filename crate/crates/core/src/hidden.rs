//! Hidden-variable models built from a cloning witness and a decomposition
//! of the unit into chain ideals.
//!
//! Given `1 = p_1 ⊕ … ⊕ p_N` where each `[0, p_n]` is totally ordered and
//! closed under `⊕`, every `[0, p_n]` becomes an MV-chain with truncated sum
//! (`x + y = x ⊕ y` when defined, `p_n` otherwise) and `x' = p_n ⊖ x`. The
//! model is the product `M = Π [0, p_n]` together with
//! `h(x) = (c(p_n, x))_n`. A state `ω` lifts to `ω̄(x_1, …, x_N) = ω(x_1 ⊕ … ⊕ x_N)`.
//!
//! "Chain ideal" is read as: totally ordered interval that is closed under
//! the inherited partial sum.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{ElementId, FiniteEffectAlgebra};
use crate::cloning::{verify_witness, CloningWitness};
use crate::mv::{check_mv_axioms, effect_algebra_of_mv, FiniteMv, MvAxiomReport};
use crate::rational::{self, Rational};
use crate::states::{StatePolytope, StateVector};
use crate::structure::Verdict;

pub const CHAIN_IDEAL_READING: &str =
    "linearly ordered ideal read as: interval [0,p] totally ordered and closed under the partial sum";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HiddenError {
    #[error("construction failed: {0}")]
    ConstructionFailed(String),
    #[error("not a chain decomposition: {0}")]
    InvalidDecomposition(String),
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ChainDecomposition {
    pub parts: Vec<ElementId>,
}

impl ChainDecomposition {
    pub fn labels(&self, alg: &FiniteEffectAlgebra) -> Vec<String> {
        self.parts.iter().map(|&p| alg.label(p).to_string()).collect()
    }
}

/// `[0, p]` is totally ordered and closed under the inherited sum.
pub fn is_chain_ideal(alg: &FiniteEffectAlgebra, p: ElementId) -> bool {
    let interval = alg.interval(p);
    interval.iter().all(|&x| {
        interval.iter().all(|&y| {
            let comparable = alg.leq(x, y) || alg.leq(y, x);
            let closed = alg.sum(x, y).is_none_or(|s| alg.leq(s, p));
            comparable && closed
        })
    })
}

pub fn check_decomposition(alg: &FiniteEffectAlgebra, parts: &[ElementId]) -> Result<(), HiddenError> {
    let bad = |msg: String| Err(HiddenError::InvalidDecomposition(msg));
    if parts.is_empty() {
        return bad("no parts".into());
    }
    for (i, &p) in parts.iter().enumerate() {
        if p == alg.zero() {
            return bad("zero cannot be a part".into());
        }
        if parts[..i].contains(&p) {
            return bad(format!("{} appears twice", alg.label(p)));
        }
        if !is_chain_ideal(alg, p) {
            return bad(format!("[0,{}] is not a closed chain", alg.label(p)));
        }
    }
    match alg.sum_all(parts.iter().copied()) {
        None => bad("parts are not jointly orthogonal".into()),
        Some(s) if s != alg.unit() => bad(format!("parts sum to {}, not 1", alg.label(s))),
        Some(_) => Ok(()),
    }
}

/// Every family of distinct chain ideals summing to 1, as index-increasing
/// lists, in lexicographic order.
pub fn find_chain_decomposition(alg: &FiniteEffectAlgebra) -> Vec<ChainDecomposition> {
    let candidates: Vec<ElementId> = alg
        .elements()
        .filter(|&p| p != alg.zero() && is_chain_ideal(alg, p))
        .collect();
    let mut out = Vec::new();
    let mut stack = Vec::new();
    fn extend(
        alg: &FiniteEffectAlgebra,
        candidates: &[ElementId],
        start: usize,
        acc: ElementId,
        stack: &mut Vec<ElementId>,
        out: &mut Vec<ChainDecomposition>,
    ) {
        if acc == alg.unit() {
            out.push(ChainDecomposition { parts: stack.clone() });
            return;
        }
        for i in start..candidates.len() {
            if let Some(next) = alg.sum(acc, candidates[i]) {
                stack.push(candidates[i]);
                extend(alg, candidates, i + 1, next, stack, out);
                stack.pop();
            }
        }
    }
    extend(alg, &candidates, 0, alg.zero(), &mut stack, &mut out);
    out
}

/// The chain `[0, p]` as a truncated MV-chain, elements ascending.
fn interval_mv(alg: &FiniteEffectAlgebra, p: ElementId) -> (Vec<ElementId>, FiniteMv) {
    let mut chain = alg.interval(p);
    chain.sort_by(|&x, &y| {
        if x == y {
            std::cmp::Ordering::Equal
        } else if alg.leq(x, y) {
            std::cmp::Ordering::Less
        } else {
            std::cmp::Ordering::Greater
        }
    });
    let pos = |e: ElementId| chain.iter().position(|&c| c == e).expect("inside interval");
    let labels = chain.iter().map(|&x| alg.label(x).to_string()).collect();
    let top = chain.len() - 1;
    let mv = FiniteMv::new(
        labels,
        0,
        top,
        |a, b| match alg.sum(chain[a], chain[b]) {
            Some(s) => pos(s),
            None => top,
        },
        |a| pos(alg.minus(p, chain[a]).expect("x ≤ p")),
    );
    (chain, mv)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HiddenVariableModel {
    pub decomposition: ChainDecomposition,
    /// Ascending elements of each `[0, p_n]`.
    pub components: Vec<Vec<ElementId>>,
    pub component_mvs: Vec<FiniteMv>,
    /// Product of the component chains.
    pub mv: FiniteMv,
    /// `h[x]` is the index of `h(x)` in `mv`.
    pub h: Vec<usize>,
    pub mv_report: MvAxiomReport,
}

impl HiddenVariableModel {
    /// Source elements `(x_1, …, x_N)` making up an element of the product.
    pub fn coordinates(&self, m: usize) -> Vec<ElementId> {
        let mut digits = vec![ElementId(0); self.components.len()];
        let mut i = m;
        for (slot, comp) in digits.iter_mut().zip(&self.components).rev() {
            *slot = comp[i % comp.len()];
            i /= comp.len();
        }
        digits
    }

    pub fn to_file(&self, alg: &FiniteEffectAlgebra) -> ModelFile {
        ModelFile {
            interpretation: CHAIN_IDEAL_READING.to_string(),
            decomposition: self.decomposition.labels(alg),
            h: alg
                .elements()
                .map(|x| {
                    let coords = self.coordinates(self.h[x.index()]);
                    (alg.label(x).to_string(), coords.iter().map(|&c| alg.label(c).to_string()).collect())
                })
                .collect(),
            components: self
                .component_mvs
                .iter()
                .map(|m| {
                    let l = m.labels();
                    ComponentTable {
                        elements: l.to_vec(),
                        plus: (0..m.size())
                            .map(|a| (0..m.size()).map(|b| l[m.plus_idx(a, b)].clone()).collect())
                            .collect(),
                        neg: (0..m.size()).map(|a| (l[a].clone(), l[m.neg_idx(a)].clone())).collect(),
                    }
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentTable {
    pub elements: Vec<String>,
    /// Row-major `plus[a][b]`.
    pub plus: Vec<Vec<String>>,
    pub neg: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub interpretation: String,
    pub decomposition: Vec<String>,
    pub h: BTreeMap<String, Vec<String>>,
    pub components: Vec<ComponentTable>,
}

pub fn hidden_variable_construct(
    alg: &FiniteEffectAlgebra,
    witness: &CloningWitness,
    decomposition: &ChainDecomposition,
) -> Result<HiddenVariableModel, HiddenError> {
    let fail = |msg: String| Err(HiddenError::ConstructionFailed(msg));
    if let Verdict::Fails(v) = verify_witness(alg, witness) {
        return fail(format!("witness is not a cloning bimorphism: {}", v.describe(alg)));
    }
    check_decomposition(alg, &decomposition.parts).map_err(|e| HiddenError::ConstructionFailed(e.to_string()))?;
    for &p in &decomposition.parts {
        if !alg.is_sharp(p) {
            return fail(format!("part {} is not sharp", alg.label(p)));
        }
    }

    let (components, component_mvs): (Vec<_>, Vec<_>) =
        decomposition.parts.iter().map(|&p| interval_mv(alg, p)).unzip();
    let mv = FiniteMv::product(&component_mvs);
    let mv_report = check_mv_axioms(&mv, 0, 0);
    if !mv_report.passes() {
        return fail(format!("product of chains violates MV axioms {:?}", mv_report.violated_axioms()));
    }

    let encode = |digits: &[usize]| digits.iter().zip(&components).fold(0, |acc, (d, c)| acc * c.len() + d);
    let mut h = Vec::with_capacity(alg.size());
    for x in alg.elements() {
        let mut digits = Vec::with_capacity(components.len());
        for (&p, comp) in decomposition.parts.iter().zip(&components) {
            let v = witness.get(p, x);
            match comp.iter().position(|&c| c == v) {
                Some(d) => digits.push(d),
                None => return fail(format!("c({}, {}) = {} lies outside [0,{}]", alg.label(p), alg.label(x), alg.label(v), alg.label(p))),
            }
        }
        h.push(encode(&digits));
    }

    let mut seen = vec![None; mv.size()];
    for x in alg.elements() {
        if let Some(prev) = seen[h[x.index()]].replace(x) {
            return fail(format!("h is not injective: h({}) = h({})", alg.label(prev), alg.label(x)));
        }
    }
    if let Some(m) = seen.iter().position(Option::is_none) {
        return fail(format!("h is not surjective: {} has no preimage", mv.labels()[m]));
    }
    if h[alg.zero().index()] != mv.zero_idx() || h[alg.unit().index()] != mv.one_idx() {
        return fail("h does not preserve 0 and 1".into());
    }
    for x in alg.elements() {
        for y in alg.elements() {
            if let Some(s) = alg.sum(x, y) {
                if h[s.index()] != mv.plus_idx(h[x.index()], h[y.index()]) {
                    return fail(format!("h({} ⊕ {}) ≠ h({}) + h({})", alg.label(x), alg.label(y), alg.label(x), alg.label(y)));
                }
            }
            let source = alg.leq(x, alg.supplement(y));
            let target = mv.leq_idx(h[x.index()], mv.neg_idx(h[y.index()]));
            if source != target {
                return fail(format!("order reflection fails for ({}, {})", alg.label(x), alg.label(y)));
            }
        }
    }

    Ok(HiddenVariableModel {
        decomposition: decomposition.clone(),
        components,
        component_mvs,
        mv,
        h,
        mv_report,
    })
}

/// `ω̄(x_1, …, x_N) = ω(x_1 ⊕ … ⊕ x_N)`, indexed like `model.mv`.
pub fn lift_state(alg: &FiniteEffectAlgebra, model: &HiddenVariableModel, omega: &StateVector) -> Option<Vec<Rational>> {
    (0..model.mv.size())
        .map(|m| alg.sum_all(model.coordinates(m)).map(|x| omega.get(x).clone()))
        .collect()
}

/// Checks a candidate lift: `ω̄ ∘ h = ω` and `ω̄` is a state on the effect
/// algebra of `M`. Returns the violations found.
pub fn check_lift(
    alg: &FiniteEffectAlgebra,
    model: &HiddenVariableModel,
    mv_effects: &FiniteEffectAlgebra,
    omega: &StateVector,
    lift: &[Rational],
) -> Vec<String> {
    let mut problems = Vec::new();
    for q in alg.elements() {
        if lift[model.h[q.index()]] != *omega.get(q) {
            problems.push(format!(
                "ω̄(h({})) = {} but ω({}) = {}",
                alg.label(q),
                rational::format(&lift[model.h[q.index()]]),
                alg.label(q),
                rational::format(omega.get(q))
            ));
        }
    }
    if let Err(e) = StateVector::new(lift.to_vec()).check(mv_effects) {
        problems.push(format!("lift is not a state on M: {e}"));
    }
    problems
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HiddenVariableReport {
    pub seed: u64,
    pub vertex_states: usize,
    pub mixtures: usize,
    pub violations: Vec<String>,
}

impl HiddenVariableReport {
    pub fn passes(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Lifts every vertex state and `mixtures` seeded random convex combinations
/// of them, and checks each lift exactly.
pub fn verify_hidden_variable(
    alg: &FiniteEffectAlgebra,
    model: &HiddenVariableModel,
    states: &StatePolytope,
    mixtures: usize,
    seed: u64,
) -> HiddenVariableReport {
    let mut report = HiddenVariableReport {
        seed,
        vertex_states: states.vertices.len(),
        mixtures,
        violations: Vec::new(),
    };
    let mv_effects = match effect_algebra_of_mv(&model.mv) {
        Ok(e) => e,
        Err(e) => {
            report.violations.push(format!("M does not induce an effect algebra: {e}"));
            return report;
        }
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mixed = (0..mixtures).map(|_| {
        let raw: Vec<i64> = states.vertices.iter().map(|_| rng.gen_range(0..=1000)).collect();
        let total: i64 = raw.iter().sum::<i64>().max(1);
        let mut weights: Vec<Rational> = raw.iter().map(|&w| rational::frac(w, total)).collect();
        if weights.iter().all(Zero::is_zero) {
            weights[0] = Rational::one();
        }
        StateVector::mixture(&states.vertices, &weights)
    });
    let all: Vec<StateVector> = states.vertices.iter().cloned().chain(mixed).collect();
    for (i, omega) in all.iter().enumerate() {
        match lift_state(alg, model, omega) {
            None => report.violations.push(format!("state #{i}: lift formula undefined")),
            Some(lift) => {
                for v in check_lift(alg, model, &mv_effects, omega, &lift) {
                    report.violations.push(format!("state #{i}: {v}"));
                }
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{boolean_powerset, chain, mo};
    use crate::cloning::{find_cloning_bimorphism, meet_witness, SearchConfig, SearchStatus};
    use crate::rational::frac;
    use crate::states::enumerate_vertex_states;

    fn id(alg: &FiniteEffectAlgebra, s: &str) -> ElementId {
        alg.id_of(s).unwrap()
    }

    fn atoms_decomposition(alg: &FiniteEffectAlgebra) -> ChainDecomposition {
        ChainDecomposition { parts: alg.atoms() }
    }

    #[test]
    fn decomposition_examples() {
        let b2 = boolean_powerset(2).unwrap();
        let found = find_chain_decomposition(&b2);
        assert!(found.contains(&ChainDecomposition { parts: vec![id(&b2, "{1}"), id(&b2, "{2}")] }));

        let c2 = chain(2).unwrap();
        assert!(find_chain_decomposition(&c2).contains(&ChainDecomposition { parts: vec![c2.unit()] }));

        let m = mo(2).unwrap();
        let found = find_chain_decomposition(&m);
        assert!(found.contains(&ChainDecomposition { parts: vec![id(&m, "a_1"), id(&m, "a_1'")] }));
        assert!(found.contains(&ChainDecomposition { parts: vec![id(&m, "a_2"), id(&m, "a_2'")] }));
        assert_eq!(found.len(), 2);
    }

    #[test]
    fn check_decomposition_rejects_bad_families() {
        let b2 = boolean_powerset(2).unwrap();
        assert!(check_decomposition(&b2, &[id(&b2, "{1}")]).is_err());
        assert!(check_decomposition(&b2, &[b2.unit()]).is_err());
        assert!(check_decomposition(&b2, &[id(&b2, "{1}"), id(&b2, "{2}")]).is_ok());
        let c2 = chain(2).unwrap();
        let h = id(&c2, "1/2");
        assert!(check_decomposition(&c2, &[h, h]).is_err());
    }

    #[test]
    fn powerset_two_model() {
        let b2 = boolean_powerset(2).unwrap();
        let w = meet_witness(&b2).unwrap();
        let model = hidden_variable_construct(&b2, &w, &atoms_decomposition(&b2)).unwrap();
        assert_eq!(model.mv.size(), 4);
        for x in b2.elements() {
            let coords = model.coordinates(model.h[x.index()]);
            let a = id(&b2, "{1}");
            let b = id(&b2, "{2}");
            assert_eq!(coords, vec![b2.meet(x, a).unwrap(), b2.meet(x, b).unwrap()]);
        }
        let file = model.to_file(&b2);
        assert_eq!(file.decomposition, ["{1}", "{2}"]);
        assert_eq!(file.h["1"], ["{1}", "{2}"]);
        assert_eq!(file.h["{2}"], ["0", "{2}"]);
    }

    #[test]
    fn lift_reproduces_a_given_state() {
        let b2 = boolean_powerset(2).unwrap();
        let model = hidden_variable_construct(&b2, &meet_witness(&b2).unwrap(), &atoms_decomposition(&b2)).unwrap();
        let a = id(&b2, "{1}");
        // ω({1}) = 1/3, ω({2}) = 2/3
        let omega = StateVector::new(
            b2.elements()
                .map(|x| match b2.label(x) {
                    "0" => frac(0, 1),
                    "{1}" => frac(1, 3),
                    "{2}" => frac(2, 3),
                    _ => frac(1, 1),
                })
                .collect(),
        );
        omega.check(&b2).unwrap();
        let lift = lift_state(&b2, &model, &omega).unwrap();
        assert_eq!(lift[model.h[a.index()]], frac(1, 3));
        let effects = effect_algebra_of_mv(&model.mv).unwrap();
        assert!(check_lift(&b2, &model, &effects, &omega, &lift).is_empty());

        // double the first coordinate's contribution
        let perturbed: Vec<Rational> = (0..model.mv.size())
            .map(|m| {
                let coords = model.coordinates(m);
                frac(2, 1) * omega.get(coords[0]) + omega.get(coords[1])
            })
            .collect();
        let problems = check_lift(&b2, &model, &effects, &omega, &perturbed);
        assert!(problems.iter().any(|p| p.contains("value at unit is not 1")), "{problems:?}");
    }

    #[test]
    fn powerset_three_vertex_states() {
        let b3 = boolean_powerset(3).unwrap();
        let model = hidden_variable_construct(&b3, &meet_witness(&b3).unwrap(), &atoms_decomposition(&b3)).unwrap();
        let states = enumerate_vertex_states(&b3).unwrap();
        let report = verify_hidden_variable(&b3, &model, &states, 0, 0);
        assert!(report.passes(), "{report:?}");
        assert_eq!(report.vertex_states, 3);
    }

    #[test]
    fn chain_two_has_no_witness_to_build_from() {
        let c2 = chain(2).unwrap();
        assert_eq!(find_cloning_bimorphism(&c2, SearchConfig::default()).status, SearchStatus::NoWitness);
        let bogus = CloningWitness::from_table(3, vec![c2.zero(); 9]);
        let err = hidden_variable_construct(&c2, &bogus, &ChainDecomposition { parts: vec![c2.unit()] }).unwrap_err();
        assert!(matches!(err, HiddenError::ConstructionFailed(_)));
    }
}
