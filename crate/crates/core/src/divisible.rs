//! The divisible effect algebra `L_N = [0,1]^{Ω_N}` over exact rationals.
//!
//! Elements are functions `Ω_N = {1, …, N} → [0, 1]` stored as value
//! vectors. Tensor elements are `N × N` tables, taking `L_N ⊗ L_N ≅ L_{N²}`
//! as the definition of the tensor product. The carrier is uncountable, so
//! laws are checked on seeded samples together with fixed corner cases.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{validate, RawAlgebra};
use crate::catalog::boolean_powerset;
use crate::iso::find_isomorphism;
use crate::mv::{check_mv_axioms, Lukasiewicz, MvAxiomReport};
use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DivisibleError {
    #[error("value {value} at point {point} lies outside [0,1]")]
    OutOfRange { point: usize, value: String },
    #[error("domains differ: {0} vs {1}")]
    DomainMismatch(usize, usize),
    /// The partial sum is undefined; `point` is the first `x ∈ Ω_N`
    /// (1-based) where the values add up past 1.
    #[error("sum undefined at x={point}")]
    Undefined { point: usize },
    #[error("empty domain")]
    EmptyDomain,
    #[error("{0}")]
    Parse(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntervalFunction {
    values: Vec<Rational>,
}

fn check_unit_interval(values: &[Rational]) -> Result<(), DivisibleError> {
    if values.is_empty() {
        return Err(DivisibleError::EmptyDomain);
    }
    match values.iter().position(|v| !rational::in_unit_interval(v)) {
        Some(i) => Err(DivisibleError::OutOfRange { point: i + 1, value: rational::format(&values[i]) }),
        None => Ok(()),
    }
}

impl IntervalFunction {
    pub fn new(values: Vec<Rational>) -> Result<Self, DivisibleError> {
        check_unit_interval(&values)?;
        Ok(IntervalFunction { values })
    }

    pub fn constant(n: usize, v: Rational) -> Result<Self, DivisibleError> {
        Self::new(vec![v; n])
    }

    pub fn zero(n: usize) -> Self {
        IntervalFunction { values: vec![Rational::zero(); n] }
    }

    pub fn one(n: usize) -> Self {
        IntervalFunction { values: vec![Rational::one(); n] }
    }

    /// Indicator of a set of points, given 1-based.
    pub fn indicator(n: usize, points: &[usize]) -> Self {
        let values = (1..=n)
            .map(|x| if points.contains(&x) { Rational::one() } else { Rational::zero() })
            .collect();
        IntervalFunction { values }
    }

    pub fn domain_size(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    /// Value at the 1-based point `x`.
    pub fn at(&self, x: usize) -> &Rational {
        &self.values[x - 1]
    }

    pub fn complement(&self) -> Self {
        IntervalFunction { values: self.values.iter().map(|v| Rational::one() - v).collect() }
    }

    pub fn leq(&self, other: &Self) -> bool {
        self.values.iter().zip(&other.values).all(|(a, b)| a <= b)
    }

    /// Pointwise minimum, the greatest lower bound in `L_N`.
    pub fn meet(&self, other: &Self) -> Self {
        IntervalFunction {
            values: self.values.iter().zip(&other.values).map(|(a, b)| a.min(b).clone()).collect(),
        }
    }

    pub fn is_sharp(&self) -> bool {
        self.meet(&self.complement()).values.iter().all(Zero::is_zero)
    }

    pub fn is_indicator(&self) -> bool {
        self.values.iter().all(|v| v.is_zero() || v.is_one())
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Self {
        IntervalFunction { values: (0..n).map(|_| rational::random_unit(rng, 12)).collect() }
    }

    /// A random function orthogonal to `self`.
    pub fn random_orthogonal<R: Rng + ?Sized>(&self, rng: &mut R) -> Self {
        IntervalFunction {
            values: self
                .values
                .iter()
                .map(|v| rational::random_unit(rng, 12) * (Rational::one() - v))
                .collect(),
        }
    }

    pub fn to_file(&self) -> FunctionFile {
        FunctionFile { n: self.values.len(), values: self.values.iter().map(rational::format).collect() }
    }

    pub fn from_file(file: &FunctionFile) -> Result<Self, DivisibleError> {
        if file.values.len() != file.n {
            return Err(DivisibleError::DomainMismatch(file.n, file.values.len()));
        }
        let values = file
            .values
            .iter()
            .map(|s| rational::parse(s).map_err(DivisibleError::Parse))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(values)
    }
}

/// `{"n": N, "values": ["p/q", …]}`; square functions are row-major with
/// `N²` values.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctionFile {
    pub n: usize,
    pub values: Vec<String>,
}

fn same_domain(a: usize, b: usize) -> Result<(), DivisibleError> {
    if a != b {
        return Err(DivisibleError::DomainMismatch(a, b));
    }
    Ok(())
}

fn add_bounded(f: &[Rational], g: &[Rational]) -> Result<Vec<Rational>, DivisibleError> {
    same_domain(f.len(), g.len())?;
    f.iter()
        .zip(g)
        .enumerate()
        .map(|(i, (a, b))| {
            let s = a + b;
            if s > Rational::one() {
                Err(DivisibleError::Undefined { point: i + 1 })
            } else {
                Ok(s)
            }
        })
        .collect()
}

/// `(f ⊕ g)(x) = f(x) + g(x)`, defined iff the sum stays below 1 everywhere.
pub fn pointwise_sum(f: &IntervalFunction, g: &IntervalFunction) -> Result<IntervalFunction, DivisibleError> {
    Ok(IntervalFunction { values: add_bounded(&f.values, &g.values)? })
}

/// An element of `L_N ⊗ L_N`, i.e. a function on `Ω_N × Ω_N`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SquareIntervalFunction {
    side: usize,
    values: Vec<Rational>,
}

impl SquareIntervalFunction {
    pub fn new(side: usize, values: Vec<Rational>) -> Result<Self, DivisibleError> {
        same_domain(side * side, values.len())?;
        check_unit_interval(&values)?;
        Ok(SquareIntervalFunction { side, values })
    }

    /// `(f ⊗ g)(x, y) = f(x)·g(y)`.
    pub fn tensor(f: &IntervalFunction, g: &IntervalFunction) -> Result<Self, DivisibleError> {
        same_domain(f.domain_size(), g.domain_size())?;
        let values = f.values.iter().flat_map(|a| g.values.iter().map(move |b| a * b)).collect();
        Ok(SquareIntervalFunction { side: f.domain_size(), values })
    }

    pub fn constant(side: usize, v: Rational) -> Result<Self, DivisibleError> {
        Self::new(side, vec![v; side * side])
    }

    pub fn side(&self) -> usize {
        self.side
    }

    /// Value at the 1-based point `(x, y)`.
    pub fn at(&self, x: usize, y: usize) -> &Rational {
        &self.values[(x - 1) * self.side + (y - 1)]
    }

    pub fn sum(&self, other: &Self) -> Result<Self, DivisibleError> {
        same_domain(self.side, other.side)?;
        Ok(SquareIntervalFunction { side: self.side, values: add_bounded(&self.values, &other.values)? })
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R, side: usize) -> Self {
        SquareIntervalFunction { side, values: (0..side * side).map(|_| rational::random_unit(rng, 12)).collect() }
    }

    pub fn random_orthogonal<R: Rng + ?Sized>(&self, rng: &mut R) -> Self {
        SquareIntervalFunction {
            side: self.side,
            values: self
                .values
                .iter()
                .map(|v| rational::random_unit(rng, 12) * (Rational::one() - v))
                .collect(),
        }
    }

    pub fn to_file(&self) -> FunctionFile {
        FunctionFile { n: self.side, values: self.values.iter().map(rational::format).collect() }
    }
}

/// The cloning morphism `φ(F)(x) = F(x, x)`.
pub fn diagonal_clone(f: &SquareIntervalFunction) -> IntervalFunction {
    IntervalFunction { values: (1..=f.side).map(|x| f.at(x, x).clone()).collect() }
}

/// `φ(f ⊗ g)(x) = f(x)·g(x)`.
pub fn product_bimorphism(f: &IntervalFunction, g: &IntervalFunction) -> Result<IntervalFunction, DivisibleError> {
    same_domain(f.domain_size(), g.domain_size())?;
    Ok(IntervalFunction { values: f.values.iter().zip(&g.values).map(|(a, b)| a * b).collect() })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SharpReport {
    pub n: usize,
    pub indicators: usize,
    pub all_indicators_sharp: bool,
    pub closed_under_sum_and_complement: bool,
    pub isomorphic_to_powerset: bool,
    pub sampled: usize,
    /// Sampled functions where sharpness and being `{0,1}`-valued disagree.
    pub sharpness_mismatches: usize,
}

impl SharpReport {
    pub fn passes(&self) -> bool {
        self.all_indicators_sharp
            && self.closed_under_sum_and_complement
            && self.isomorphic_to_powerset
            && self.sharpness_mismatches == 0
    }
}

/// The `2^N` indicator functions: sharp, closed under `⊕` and `'`, and
/// forming an algebra isomorphic to the powerset of `Ω_N`.
pub fn sharp_elements_sample(n: usize, sample_budget: usize, seed: u64) -> SharpReport {
    assert!((1..=16).contains(&n), "N must lie in 1..=16");
    let count = 1usize << n;
    let indicator = |mask: usize| {
        let points: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect();
        IntervalFunction::indicator(n, &points)
    };
    let elems: Vec<IntervalFunction> = (0..count).map(indicator).collect();
    let index_of = |f: &IntervalFunction| elems.iter().position(|e| e == f);

    let all_indicators_sharp = elems.iter().all(IntervalFunction::is_sharp);
    let mut closed = true;
    let mut table = vec![vec![None; count]; count];
    for (a, fa) in elems.iter().enumerate() {
        closed &= index_of(&fa.complement()).is_some();
        for (b, fb) in elems.iter().enumerate() {
            if let Ok(s) = pointwise_sum(fa, fb) {
                match index_of(&s) {
                    Some(c) => table[a][b] = Some(c),
                    None => closed = false,
                }
            }
        }
    }

    // the isomorphism check builds a finite algebra, capped by the catalog
    let isomorphic_to_powerset = closed
        && n <= crate::catalog::MAX_POWERSET_RANK
        && validate(RawAlgebra {
            labels: (0..count).map(|m| format!("χ{m}")).collect(),
            zero: 0,
            unit: count - 1,
            table,
        })
        .ok()
        .zip(boolean_powerset(n).ok())
        .is_some_and(|(sharp, powerset)| find_isomorphism(&sharp, &powerset).is_some());

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sharpness_mismatches = (0..sample_budget)
        .filter(|_| {
            let f = IntervalFunction::random(&mut rng, n);
            f.is_sharp() != f.is_indicator()
        })
        .count();

    SharpReport {
        n,
        indicators: count,
        all_indicators_sharp,
        closed_under_sum_and_complement: closed,
        isomorphic_to_powerset,
        sampled: sample_budget,
        sharpness_mismatches,
    }
}

/// Outcome of the sampled law checks on `L_N`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LawReport {
    pub n: usize,
    pub seed: u64,
    pub samples: usize,
    pub diagonal_unit_failures: usize,
    pub diagonal_additivity_failures: usize,
    pub product_unit_failures: usize,
    pub product_biadditivity_failures: usize,
    pub hidden_variable_failures: usize,
    pub mv: MvAxiomReport,
}

impl LawReport {
    pub fn passes(&self) -> bool {
        self.diagonal_unit_failures == 0
            && self.diagonal_additivity_failures == 0
            && self.product_unit_failures == 0
            && self.product_biadditivity_failures == 0
            && self.hidden_variable_failures == 0
            && self.mv.passes()
    }
}

/// Fixed test points: all-0, all-1, all-1/2 and the point indicators.
pub fn corner_functions(n: usize) -> Vec<IntervalFunction> {
    let mut out = vec![IntervalFunction::zero(n), IntervalFunction::one(n)];
    out.push(IntervalFunction::constant(n, rational::frac(1, 2)).expect("1/2 in range"));
    out.extend((1..=n).map(|x| IntervalFunction::indicator(n, &[x])));
    out
}

fn random_state<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<Rational> {
    let raw: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=100)).collect();
    let total: i64 = raw.iter().sum();
    if total == 0 {
        let mut w = vec![Rational::zero(); n];
        w[0] = Rational::one();
        return w;
    }
    raw.iter().map(|&w| rational::frac(w, total)).collect()
}

fn evaluate(weights: &[Rational], f: &IntervalFunction) -> Rational {
    weights.iter().zip(f.values()).map(|(w, v)| w * v).sum()
}

/// Checks, on corner cases and `samples` seeded random draws:
/// the diagonal map's unit laws and additivity, the product bimorphism's
/// unit laws and biadditivity, the hidden-variable construction with
/// `p_n = χ{n}`, and the Łukasiewicz MV axioms.
pub fn check_laws(n: usize, samples: usize, seed: u64) -> LawReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let one = IntervalFunction::one(n);
    let mut report = LawReport {
        n,
        seed,
        samples,
        diagonal_unit_failures: 0,
        diagonal_additivity_failures: 0,
        product_unit_failures: 0,
        product_biadditivity_failures: 0,
        hidden_variable_failures: 0,
        mv: check_mv_axioms(&Lukasiewicz::default(), samples, seed),
    };
    let parts: Vec<IntervalFunction> = (1..=n).map(|x| IntervalFunction::indicator(n, &[x])).collect();

    let corners = corner_functions(n);
    let drawn: Vec<IntervalFunction> = (0..samples).map(|_| IntervalFunction::random(&mut rng, n)).collect();
    for f in corners.iter().chain(&drawn) {
        let left = SquareIntervalFunction::tensor(f, &one).expect("same domain");
        let right = SquareIntervalFunction::tensor(&one, f).expect("same domain");
        if diagonal_clone(&left) != *f || diagonal_clone(&right) != *f {
            report.diagonal_unit_failures += 1;
        }
        if product_bimorphism(f, &one).ok().as_ref() != Some(f) || product_bimorphism(&one, f).ok().as_ref() != Some(f) {
            report.product_unit_failures += 1;
        }

        // h(f) = (φ(p_n ⊗ f))_n has n-th coordinate f(n)·χ{n}; the parts
        // recombine to f, and the lifted state agrees with ω
        let coords: Vec<IntervalFunction> = parts.iter().map(|p| product_bimorphism(p, f).expect("same domain")).collect();
        let recovers_values = coords
            .iter()
            .enumerate()
            .all(|(i, c)| *c == IntervalFunction::indicator(n, &[i + 1]).meet(f) && c.at(i + 1) == f.at(i + 1));
        let recombined = coords
            .iter()
            .try_fold(IntervalFunction::zero(n), |acc, c| pointwise_sum(&acc, c).ok());
        let weights = random_state(&mut rng, n);
        let lifted_matches = recombined
            .as_ref()
            .is_some_and(|r| r == f && evaluate(&weights, r) == evaluate(&weights, f));
        let chain_ok = coords.iter().zip(&parts).all(|(c, p)| c.leq(p));
        if !(recovers_values && lifted_matches && chain_ok) {
            report.hidden_variable_failures += 1;
        }
    }

    for _ in 0..samples {
        let f1 = IntervalFunction::random(&mut rng, n);
        let f2 = f1.random_orthogonal(&mut rng);
        let g = IntervalFunction::random(&mut rng, n);
        let sum = pointwise_sum(&f1, &f2).expect("orthogonal by construction");
        let pb = |a: &IntervalFunction, b: &IntervalFunction| product_bimorphism(a, b).expect("same domain");
        let first = pointwise_sum(&pb(&f1, &g), &pb(&f2, &g)).ok() == Some(pb(&sum, &g));
        let second = pointwise_sum(&pb(&g, &f1), &pb(&g, &f2)).ok() == Some(pb(&g, &sum));
        if !(first && second) {
            report.product_biadditivity_failures += 1;
        }
        // h additive: h(f1 ⊕ f2) = h(f1) + h(f2) coordinatewise
        let additive = parts.iter().all(|p| pointwise_sum(&pb(p, &f1), &pb(p, &f2)).ok() == Some(pb(p, &sum)));
        if !additive {
            report.hidden_variable_failures += 1;
        }

        let big = SquareIntervalFunction::random(&mut rng, n);
        let other = big.random_orthogonal(&mut rng);
        let total = big.sum(&other).expect("orthogonal by construction");
        if pointwise_sum(&diagonal_clone(&big), &diagonal_clone(&other)).ok() != Some(diagonal_clone(&total)) {
            report.diagonal_additivity_failures += 1;
        }
    }
    report
}
