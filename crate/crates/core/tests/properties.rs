use proptest::prelude::*;
use qlogic::catalog::{boolean_powerset, fuzz_algebra};
use qlogic::cloning::{find_cloning_bimorphism, verify_witness, CloningWitness, SearchConfig, SearchStatus};
use qlogic::hidden::{find_chain_decomposition, hidden_variable_construct};
use qlogic::iso::find_isomorphism;
use qlogic::mv::{effect_algebra_of_mv, luka_neg, luka_plus, FiniteMv};
use qlogic::rational::{frac, Rational};
use qlogic::states::enumerate_vertex_states;
use qlogic::{meet_witness, ElementId, FiniteEffectAlgebra, StateError};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn fuzz(seed: u64, max_size: usize) -> FiniteEffectAlgebra {
    fuzz_algebra(&mut ChaCha8Rng::seed_from_u64(seed), max_size)
}

fn elems(alg: &FiniteEffectAlgebra) -> Vec<ElementId> {
    alg.elements().collect()
}

/// All bimorphisms with unit laws, by plain enumeration. Cells are drawn
/// from common lower bounds, which every witness respects because
/// `p = c(p, q) ⊕ c(p, q')`.
fn brute_force_witnesses(alg: &FiniteEffectAlgebra) -> Vec<CloningWitness> {
    let n = alg.size();
    let es = elems(alg);
    let mut table = vec![ElementId(0); n * n];
    let mut free = Vec::new();
    for &p in &es {
        for &q in &es {
            let cell = p.index() * n + q.index();
            if p == alg.unit() {
                table[cell] = q;
            } else if q == alg.unit() {
                table[cell] = p;
            } else {
                free.push((cell, alg.lower_bounds(p, q)));
            }
        }
    }
    let mut found = Vec::new();
    let mut choice = vec![0usize; free.len()];
    loop {
        for (i, (cell, options)) in free.iter().enumerate() {
            table[*cell] = options[choice[i]];
        }
        let w = CloningWitness::from_table(n, table.clone());
        if verify_witness(alg, &w).holds() {
            found.push(w);
        }
        let mut i = 0;
        loop {
            if i == free.len() {
                found.sort();
                return found;
            }
            choice[i] += 1;
            if choice[i] < free[i].1.len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

fn unit_rational() -> impl Strategy<Value = Rational> {
    (1i64..=24).prop_flat_map(|d| (0..=d).prop_map(move |n| frac(n, d)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cancellativity(seed in any::<u64>()) {
        let alg = fuzz(seed, 16);
        for a in elems(&alg) {
            for x in elems(&alg) {
                for y in elems(&alg) {
                    if let (Some(s), Some(t)) = (alg.sum(a, x), alg.sum(a, y)) {
                        prop_assert!(s != t || x == y);
                    }
                }
            }
        }
    }

    #[test]
    fn orthogonal_pairs_sit_below_supplements(seed in any::<u64>()) {
        let alg = fuzz(seed, 16);
        for p in elems(&alg) {
            for q in elems(&alg) {
                if alg.orthogonal(p, q) {
                    prop_assert!(alg.leq(p, alg.supplement(q)) && alg.leq(q, alg.supplement(p)));
                }
            }
        }
    }

    #[test]
    fn sharpness_dichotomy(seed in any::<u64>()) {
        let alg = fuzz(seed, 16);
        let all_sharp = elems(&alg).iter().all(|&p| alg.is_sharp(p));
        prop_assert_eq!(all_sharp, alg.is_orthoalgebra());
    }

    #[test]
    fn boolean_deciders_agree(seed in any::<u64>()) {
        let alg = fuzz(seed, 16);
        prop_assert_eq!(alg.is_boolean(), alg.is_boolean_lattice());
    }

    #[test]
    fn join_of_orthogonal_pair_is_their_sum(seed in any::<u64>()) {
        let alg = fuzz(seed, 16);
        prop_assume!(alg.is_orthoalgebra());
        for p in elems(&alg) {
            for q in elems(&alg) {
                if let (Some(s), Some(j)) = (alg.sum(p, q), alg.join(p, q)) {
                    prop_assert_eq!(s, j);
                }
            }
        }
    }

    #[test]
    fn vertex_states_are_monotone_and_respect_supplements(seed in any::<u64>()) {
        let alg = fuzz(seed, 12);
        let poly = match enumerate_vertex_states(&alg) {
            Ok(poly) => poly,
            Err(StateError::EmptyStateSpace) => return Ok(()),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        };
        for omega in &poly.vertices {
            prop_assert!(omega.check(&alg).is_ok());
            for p in elems(&alg) {
                prop_assert_eq!(omega.get(alg.supplement(p)), &(Rational::from_integer(1.into()) - omega.get(p)));
                for q in elems(&alg) {
                    if alg.leq(p, q) {
                        prop_assert!(omega.get(p) <= omega.get(q));
                    }
                }
            }
        }
    }

    #[test]
    fn cloning_exists_exactly_on_boolean_orthoalgebras(seed in any::<u64>()) {
        let alg = fuzz(seed, 16);
        prop_assume!(alg.is_orthoalgebra());
        let outcome = find_cloning_bimorphism(&alg, SearchConfig::default());
        prop_assert_eq!(outcome.status == SearchStatus::WitnessFound, alg.is_boolean());
    }

    #[test]
    fn witnesses_force_coherence(seed in any::<u64>()) {
        let alg = fuzz(seed, 16);
        prop_assume!(alg.is_orthoalgebra());
        if find_cloning_bimorphism(&alg, SearchConfig::default()).status == SearchStatus::WitnessFound {
            prop_assert!(alg.check_coherence().unwrap().holds());
        }
    }

    #[test]
    fn search_is_deterministic(seed in any::<u64>()) {
        let alg = fuzz(seed, 16);
        let config = SearchConfig { enumerate_all: true, ..SearchConfig::default() };
        let first = find_cloning_bimorphism(&alg, config);
        let second = find_cloning_bimorphism(&alg, config);
        prop_assert!(first.same_result(&second));
    }

    #[test]
    fn hidden_variable_morphism_reflects_order(seed in any::<u64>()) {
        let alg = fuzz(seed, 16);
        prop_assume!(alg.is_boolean());
        let witness = meet_witness(&alg).unwrap();
        for decomposition in find_chain_decomposition(&alg) {
            let model = hidden_variable_construct(&alg, &witness, &decomposition).unwrap();
            prop_assert_eq!(model.h[alg.zero().index()], model.mv.zero_idx());
            prop_assert_eq!(model.h[alg.unit().index()], model.mv.one_idx());
            for x in elems(&alg) {
                for y in elems(&alg) {
                    let (hx, hy) = (model.h[x.index()], model.h[y.index()]);
                    prop_assert_eq!(
                        alg.leq(x, alg.supplement(y)),
                        model.mv.leq_idx(hx, model.mv.neg_idx(hy))
                    );
                }
            }
        }
    }

    #[test]
    fn boolean_mv_round_trip(seed in any::<u64>()) {
        let alg = fuzz(seed, 16);
        prop_assume!(alg.is_boolean());
        let mv = FiniteMv::from_boolean_algebra(&alg).unwrap();
        let back = effect_algebra_of_mv(&mv).unwrap();
        prop_assert!(find_isomorphism(&alg, &back).is_some());
    }

    #[test]
    fn lukasiewicz_axiom_eight(a in unit_rational(), b in unit_rational()) {
        let lhs = luka_plus(&luka_neg(&luka_plus(&luka_neg(&a), &b)), &b);
        let rhs = luka_plus(&luka_neg(&luka_plus(&a, &luka_neg(&b))), &a);
        prop_assert_eq!(lhs, rhs);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn search_matches_brute_force(seed in any::<u64>()) {
        let alg = fuzz(seed, 5);
        let outcome = find_cloning_bimorphism(&alg, SearchConfig { enumerate_all: true, ..SearchConfig::default() });
        prop_assert_eq!(outcome.witnesses, brute_force_witnesses(&alg));
    }
}

#[test]
fn powersets_have_one_dispersion_free_state_per_atom() {
    for k in 1..=5 {
        let alg = boolean_powerset(k).unwrap();
        let poly = enumerate_vertex_states(&alg).unwrap();
        assert_eq!(poly.vertices.len(), k);
        assert!(poly.vertices.iter().all(|v| v.is_dispersion_free()));
    }
}

#[test]
fn boolean_witnesses_are_unique() {
    for k in 1..=3 {
        let alg = boolean_powerset(k).unwrap();
        let config = SearchConfig { enumerate_all: true, ..SearchConfig::default() };
        let outcome = find_cloning_bimorphism(&alg, config);
        assert_eq!(outcome.witnesses, vec![meet_witness(&alg).unwrap()]);
    }
}
