//! MV-algebras `(M, +, ', 0, 1)`: the axiom suite, finite carriers, the
//! Łukasiewicz structure on rational `[0, 1]`, and the passage to effect
//! algebras (`a ⊕ b := a + b` for `a ≤ b'`).

use std::collections::BTreeMap;
use std::fmt::Debug;

use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{validate, AlgebraError, ElementId, FiniteEffectAlgebra, RawAlgebra};
use crate::rational::{self, Rational};

pub trait MvAlgebra {
    type Elem: Clone + PartialEq + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn plus(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;

    /// The whole carrier, when finite.
    fn finite_elements(&self) -> Option<Vec<Self::Elem>>;

    /// Draws an element, for carriers that cannot be enumerated.
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;

    fn show(&self, a: &Self::Elem) -> String {
        format!("{a:?}")
    }

    /// `a ≤ b` iff `a' + b = 1`.
    fn leq(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.plus(&self.neg(a), b) == self.one()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum CheckMode {
    Exhaustive,
    Sampled { seed: u64, triples: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MvViolation {
    /// Axiom number, 1 to 8.
    pub axiom: u8,
    pub instance: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MvAxiomReport {
    pub mode: CheckMode,
    pub triples_checked: u64,
    /// Number of failing instances per axiom.
    pub violation_counts: BTreeMap<u8, u64>,
    /// First failing instance of each violated axiom.
    pub first_violations: Vec<MvViolation>,
}

impl MvAxiomReport {
    pub fn passes(&self) -> bool {
        self.violation_counts.is_empty()
    }

    pub fn violated_axioms(&self) -> Vec<u8> {
        self.violation_counts.keys().copied().collect()
    }

    fn record(&mut self, axiom: u8, instance: Vec<String>) {
        let count = self.violation_counts.entry(axiom).or_default();
        if *count == 0 {
            self.first_violations.push(MvViolation { axiom, instance });
        }
        *count += 1;
    }
}

/// Checks the eight identities on one triple.
fn check_triple<M: MvAlgebra + ?Sized>(m: &M, a: &M::Elem, b: &M::Elem, c: &M::Elem, report: &mut MvAxiomReport) {
    let show = |xs: &[&M::Elem]| xs.iter().map(|x| m.show(x)).collect::<Vec<_>>();
    let (zero, one) = (m.zero(), m.one());
    report.triples_checked += 1;
    if m.plus(a, b) != m.plus(b, a) {
        report.record(1, show(&[a, b]));
    }
    if m.plus(&m.plus(a, b), c) != m.plus(a, &m.plus(b, c)) {
        report.record(2, show(&[a, b, c]));
    }
    if m.plus(a, &m.neg(a)) != one {
        report.record(3, show(&[a]));
    }
    if m.plus(a, &zero) != *a {
        report.record(4, show(&[a]));
    }
    if m.neg(&m.neg(a)) != *a {
        report.record(5, show(&[a]));
    }
    if m.neg(&zero) != one {
        report.record(6, vec![]);
    }
    if m.plus(a, &one) != one {
        report.record(7, show(&[a]));
    }
    // (a' + b)' + b = (a + b')' + a
    let lhs = m.plus(&m.neg(&m.plus(&m.neg(a), b)), b);
    let rhs = m.plus(&m.neg(&m.plus(a, &m.neg(b))), a);
    if lhs != rhs {
        report.record(8, show(&[a, b]));
    }
}

/// Exhaustive over all triples of a finite carrier, otherwise on
/// `sample_budget` triples drawn from a generator seeded with `seed`.
pub fn check_mv_axioms<M: MvAlgebra + ?Sized>(m: &M, sample_budget: usize, seed: u64) -> MvAxiomReport {
    match m.finite_elements() {
        Some(elems) => {
            let mut report = MvAxiomReport {
                mode: CheckMode::Exhaustive,
                triples_checked: 0,
                violation_counts: BTreeMap::new(),
                first_violations: Vec::new(),
            };
            for a in &elems {
                for b in &elems {
                    for c in &elems {
                        check_triple(m, a, b, c, &mut report);
                    }
                }
            }
            report
        }
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut report = MvAxiomReport {
                mode: CheckMode::Sampled { seed, triples: sample_budget },
                triples_checked: 0,
                violation_counts: BTreeMap::new(),
                first_violations: Vec::new(),
            };
            for _ in 0..sample_budget {
                let (a, b, c) = (m.sample(&mut rng), m.sample(&mut rng), m.sample(&mut rng));
                check_triple(m, &a, &b, &c, &mut report);
            }
            report
        }
    }
}

/// `min(a + b, 1)`.
pub fn luka_plus(a: &Rational, b: &Rational) -> Rational {
    let s = a + b;
    if s > Rational::one() {
        Rational::one()
    } else {
        s
    }
}

/// `1 − a`.
pub fn luka_neg(a: &Rational) -> Rational {
    Rational::one() - a
}

/// The Łukasiewicz MV-algebra on the rationals of `[0, 1]`.
#[derive(Debug, Clone, Copy)]
pub struct Lukasiewicz {
    /// Largest denominator drawn by the sampler.
    pub max_denominator: i64,
}

impl Default for Lukasiewicz {
    fn default() -> Self {
        Lukasiewicz { max_denominator: 24 }
    }
}

impl MvAlgebra for Lukasiewicz {
    type Elem = Rational;

    fn zero(&self) -> Rational {
        rational::int(0)
    }

    fn one(&self) -> Rational {
        rational::int(1)
    }

    fn plus(&self, a: &Rational, b: &Rational) -> Rational {
        luka_plus(a, b)
    }

    fn neg(&self, a: &Rational) -> Rational {
        luka_neg(a)
    }

    fn finite_elements(&self) -> Option<Vec<Rational>> {
        None
    }

    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Rational {
        // corners often enough to matter
        match rng.gen_range(0..10) {
            0 => rational::int(0),
            1 => rational::int(1),
            2 => rational::frac(1, 2),
            _ => rational::random_unit(rng, self.max_denominator),
        }
    }

    fn show(&self, a: &Rational) -> String {
        rational::format(a)
    }
}

/// A finite MV-algebra given by its operation tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteMv {
    labels: Vec<String>,
    plus: Vec<usize>,
    neg: Vec<usize>,
    zero: usize,
    one: usize,
}

impl FiniteMv {
    pub fn new(
        labels: Vec<String>,
        zero: usize,
        one: usize,
        plus: impl Fn(usize, usize) -> usize,
        neg: impl Fn(usize) -> usize,
    ) -> Self {
        let n = labels.len();
        FiniteMv {
            plus: (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).map(|(a, b)| plus(a, b)).collect(),
            neg: (0..n).map(neg).collect(),
            labels,
            zero,
            one,
        }
    }

    /// `{0, 1}` with OR and NOT.
    pub fn boolean() -> Self {
        FiniteMv::new(vec!["0".into(), "1".into()], 0, 1, |a, b| a | b, |a| 1 - a)
    }

    /// `{0, 1/d, …, 1}` with truncated addition.
    pub fn lukasiewicz_chain(d: usize) -> Self {
        assert!(d >= 1);
        let labels = (0..=d)
            .map(|i| match i {
                0 => "0".to_string(),
                i if i == d => "1".to_string(),
                i => format!("{i}/{d}"),
            })
            .collect();
        FiniteMv::new(labels, 0, d, |a, b| (a + b).min(d), |a| d - a)
    }

    /// The MV structure of a Boolean algebra: `+` is join, `'` the complement.
    pub fn from_boolean_algebra(alg: &FiniteEffectAlgebra) -> Option<Self> {
        if !alg.is_boolean() {
            return None;
        }
        Some(FiniteMv::new(
            alg.labels().to_vec(),
            alg.zero().index(),
            alg.unit().index(),
            |a, b| alg.join(ElementId(a), ElementId(b)).expect("lattice").index(),
            |a| alg.supplement(ElementId(a)).index(),
        ))
    }

    /// Componentwise product; element labels are tuples, the first
    /// component most significant.
    pub fn product(parts: &[FiniteMv]) -> Self {
        assert!(!parts.is_empty());
        let size: usize = parts.iter().map(FiniteMv::size).product();
        let decode = |mut i: usize| {
            let mut digits = vec![0; parts.len()];
            for (slot, part) in digits.iter_mut().zip(parts).rev() {
                *slot = i % part.size();
                i /= part.size();
            }
            digits
        };
        let encode = |digits: &[usize]| digits.iter().zip(parts).fold(0, |acc, (d, p)| acc * p.size() + d);
        let labels = (0..size)
            .map(|i| {
                let names: Vec<&str> = decode(i).iter().zip(parts).map(|(&d, p)| p.labels[d].as_str()).collect();
                format!("({})", names.join(","))
            })
            .collect();
        let zero = encode(&parts.iter().map(|p| p.zero).collect::<Vec<_>>());
        let one = encode(&parts.iter().map(|p| p.one).collect::<Vec<_>>());
        FiniteMv::new(
            labels,
            zero,
            one,
            |a, b| {
                let d: Vec<usize> = decode(a).iter().zip(decode(b)).zip(parts).map(|((&x, y), p)| p.plus_idx(x, y)).collect();
                encode(&d)
            },
            |a| {
                let d: Vec<usize> = decode(a).iter().zip(parts).map(|(&x, p)| p.neg_idx(x)).collect();
                encode(&d)
            },
        )
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn zero_idx(&self) -> usize {
        self.zero
    }

    pub fn one_idx(&self) -> usize {
        self.one
    }

    #[inline]
    pub fn plus_idx(&self, a: usize, b: usize) -> usize {
        self.plus[a * self.size() + b]
    }

    #[inline]
    pub fn neg_idx(&self, a: usize) -> usize {
        self.neg[a]
    }

    pub fn leq_idx(&self, a: usize, b: usize) -> bool {
        self.plus_idx(self.neg_idx(a), b) == self.one
    }
}

impl MvAlgebra for FiniteMv {
    type Elem = usize;

    fn zero(&self) -> usize {
        self.zero
    }

    fn one(&self) -> usize {
        self.one
    }

    fn plus(&self, a: &usize, b: &usize) -> usize {
        self.plus_idx(*a, *b)
    }

    fn neg(&self, a: &usize) -> usize {
        self.neg_idx(*a)
    }

    fn finite_elements(&self) -> Option<Vec<usize>> {
        Some((0..self.size()).collect())
    }

    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        rng.gen_range(0..self.size())
    }

    fn show(&self, a: &usize) -> String {
        self.labels[*a].clone()
    }
}

/// Partial algebra with `a ⊕ b = a + b` defined iff `a ≤ b'`. Element `i`
/// of the result is element `i` of the carrier.
pub fn effect_algebra_of_mv(m: &FiniteMv) -> Result<FiniteEffectAlgebra, AlgebraError> {
    let n = m.size();
    let table = (0..n)
        .map(|a| {
            (0..n)
                .map(|b| m.leq_idx(a, m.neg_idx(b)).then(|| m.plus_idx(a, b)))
                .collect()
        })
        .collect();
    validate(RawAlgebra { labels: m.labels.clone(), zero: m.zero, unit: m.one, table })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{boolean_powerset, chain, mo};
    use crate::iso::find_isomorphism;
    use crate::rational::frac;

    /// `a + b := max(a + b − 1, 0)` mistaken for the MV sum.
    struct Broken;

    impl MvAlgebra for Broken {
        type Elem = Rational;
        fn zero(&self) -> Rational {
            rational::int(0)
        }
        fn one(&self) -> Rational {
            rational::int(1)
        }
        fn plus(&self, a: &Rational, b: &Rational) -> Rational {
            let s = a + b - rational::int(1);
            if s < rational::int(0) {
                rational::int(0)
            } else {
                s
            }
        }
        fn neg(&self, a: &Rational) -> Rational {
            luka_neg(a)
        }
        fn finite_elements(&self) -> Option<Vec<Rational>> {
            None
        }
        fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Rational {
            rational::random_unit(rng, 12)
        }
    }

    #[test]
    fn lukasiewicz_rationals_pass_on_samples() {
        let report = check_mv_axioms(&Lukasiewicz::default(), 1000, 42);
        assert!(report.passes(), "{report:?}");
        assert_eq!(report.triples_checked, 1000);
        assert_eq!(report.mode, CheckMode::Sampled { seed: 42, triples: 1000 });
    }

    #[test]
    fn boolean_two_element_passes() {
        let report = check_mv_axioms(&FiniteMv::boolean(), 0, 0);
        assert!(report.passes());
        assert_eq!(report.triples_checked, 8);
    }

    #[test]
    fn broken_sum_fails_complement_axiom() {
        let report = check_mv_axioms(&Broken, 200, 1);
        assert!(report.violated_axioms().contains(&3));
        assert!(!report.passes());
    }

    #[test]
    fn luka_operation_examples() {
        assert_eq!(luka_plus(&frac(1, 2), &frac(3, 4)), rational::int(1));
        let a = frac(2, 7);
        assert_eq!(luka_plus(&a, &rational::int(0)), a);
        // (a' + b)' + b and (a + b')' + a at a = 1/3, b = 1/2
        let (a, b) = (frac(1, 3), frac(1, 2));
        let lhs = luka_plus(&luka_neg(&luka_plus(&luka_neg(&a), &b)), &b);
        let rhs = luka_plus(&luka_neg(&luka_plus(&a, &luka_neg(&b))), &a);
        assert_eq!(lhs, frac(1, 2));
        assert_eq!(rhs, frac(1, 2));
    }

    #[test]
    fn effect_algebras_of_small_mv_algebras() {
        let ea = effect_algebra_of_mv(&FiniteMv::boolean()).unwrap();
        assert!(find_isomorphism(&ea, &boolean_powerset(1).unwrap()).is_some());

        let ea = effect_algebra_of_mv(&FiniteMv::lukasiewicz_chain(2)).unwrap();
        assert_eq!(ea, chain(2).unwrap());

        let sq = FiniteMv::product(&[FiniteMv::boolean(), FiniteMv::boolean()]);
        assert!(check_mv_axioms(&sq, 0, 0).passes());
        let ea = effect_algebra_of_mv(&sq).unwrap();
        assert!(find_isomorphism(&ea, &boolean_powerset(2).unwrap()).is_some());
    }

    #[test]
    fn boolean_round_trip_through_mv() {
        for k in 1..=3 {
            let b = boolean_powerset(k).unwrap();
            let m = FiniteMv::from_boolean_algebra(&b).unwrap();
            assert!(check_mv_axioms(&m, 0, 0).passes());
            let back = effect_algebra_of_mv(&m).unwrap();
            assert!(find_isomorphism(&back, &b).is_some());
        }
        assert!(FiniteMv::from_boolean_algebra(&mo(2).unwrap()).is_none());
    }

    #[test]
    fn lukasiewicz_chains_are_mv_algebras() {
        for d in 1..=6 {
            assert!(check_mv_axioms(&FiniteMv::lukasiewicz_chain(d), 0, 0).passes());
        }
    }
}
