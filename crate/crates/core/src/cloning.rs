//! Exhaustive search for cloning bimorphisms `c: P × P → P`.
//!
//! A cloning map on `P ⊗ P` exists iff there is a bimorphism into `P` with
//! `c(p, 1) = c(1, p) = p`, by the universal property of the tensor
//! product. The search therefore works on the n×n table of `c` directly.
//!
//! Every cell `c(p, q)` is a variable. Each defined sum `a ⊕ b = s` and each
//! `q` contribute the two ternary constraints
//!
//! ```text
//! c(s, q) = c(a, q) ⊕ c(b, q)        c(q, s) = c(q, a) ⊕ c(q, b)
//! ```
//!
//! which propagate in all directions through cancellativity: knowing two of
//! the three cells fixes the third. Search branches on atom × atom cells
//! first, in index order with ascending values; in a finite algebra every
//! element is a sum of atoms, so propagation usually completes the table.

use std::fmt;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{ElementId, FiniteEffectAlgebra};
use crate::structure::{Decomposition, Verdict};

pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CloneError {
    #[error("algebra is not Boolean")]
    NotBoolean,
    #[error("algebra is not an orthoalgebra")]
    NotAnOrthoalgebra,
    #[error("witness table violates {0}")]
    InvalidWitness(String),
    #[error("Mackey decomposition of ({p}, {q}) from the witness is inconsistent")]
    DecompositionMismatch { p: String, q: String },
    #[error("malformed witness: {0}")]
    Malformed(String),
}

/// A total table `c(p, q)` standing for the composite of the tensor
/// bimorphism with a cloning morphism.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CloningWitness {
    size: usize,
    table: Vec<ElementId>,
}

impl CloningWitness {
    /// Wraps a row-major table; use [`verify_witness`] to check it.
    pub fn from_table(size: usize, table: Vec<ElementId>) -> Self {
        assert_eq!(table.len(), size * size, "witness table must be square");
        CloningWitness { size, table }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn get(&self, p: ElementId, q: ElementId) -> ElementId {
        self.table[p.index() * self.size + q.index()]
    }

    pub fn table(&self) -> &[ElementId] {
        &self.table
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.size).all(|p| (0..self.size).all(|q| self.get(ElementId(p), ElementId(q)) == self.get(ElementId(q), ElementId(p))))
    }

    pub fn to_file(&self, alg: &FiniteEffectAlgebra) -> WitnessFile {
        let mut rows: Vec<[String; 3]> = alg
            .elements()
            .flat_map(|p| {
                alg.elements().map(move |q| {
                    [
                        alg.label(p).to_string(),
                        alg.label(q).to_string(),
                        alg.label(self.get(p, q)).to_string(),
                    ]
                })
            })
            .collect();
        rows.sort();
        WitnessFile { witness: rows }
    }

    pub fn from_file(alg: &FiniteEffectAlgebra, file: &WitnessFile) -> Result<Self, CloneError> {
        let n = alg.size();
        let mut table: Vec<Option<ElementId>> = vec![None; n * n];
        let lookup = |s: &str| alg.id_of(s).ok_or_else(|| CloneError::Malformed(format!("unknown label `{s}`")));
        for [p, q, c] in &file.witness {
            let (p, q, c) = (lookup(p)?, lookup(q)?, lookup(c)?);
            let slot = &mut table[p.index() * n + q.index()];
            if slot.is_some() {
                return Err(CloneError::Malformed(format!("duplicate row for ({}, {})", alg.label(p), alg.label(q))));
            }
            *slot = Some(c);
        }
        let table = table
            .into_iter()
            .enumerate()
            .map(|(i, c)| c.ok_or_else(|| CloneError::Malformed(format!("missing row for ({}, {})", alg.labels()[i / n], alg.labels()[i % n]))))
            .collect::<Result<_, _>>()?;
        Ok(CloningWitness { size: n, table })
    }
}

/// JSON form `{"witness": [[p, q, c], ...]}`, rows sorted by label.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessFile {
    pub witness: Vec<[String; 3]>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    pub enumerate_all: bool,
    pub node_budget: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { enumerate_all: false, node_budget: DEFAULT_NODE_BUDGET }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchStatus {
    WitnessFound,
    NoWitness,
    Aborted,
}

#[derive(Debug, Clone)]
pub struct SearchOutcome {
    pub status: SearchStatus,
    /// In canonical (lexicographic table) order.
    pub witnesses: Vec<CloningWitness>,
    pub nodes_explored: u64,
    pub wall_time: Duration,
}

impl SearchOutcome {
    /// Equality ignoring timing.
    pub fn same_result(&self, other: &SearchOutcome) -> bool {
        self.status == other.status
            && self.witnesses == other.witnesses
            && self.nodes_explored == other.nodes_explored
    }
}

/// `cell(x) = cell(y) ⊕ cell(z)`.
#[derive(Debug, Clone, Copy)]
struct Constraint {
    x: usize,
    y: usize,
    z: usize,
}

struct Search<'a> {
    alg: &'a FiniteEffectAlgebra,
    n: usize,
    constraints: Vec<Constraint>,
    watches: Vec<Vec<usize>>,
    /// Admissible values per cell: common lower bounds of row and column.
    admissible: Vec<Vec<bool>>,
    domain: Vec<Vec<ElementId>>,
    order: Vec<usize>,
    cells: Vec<Option<ElementId>>,
    trail: Vec<usize>,
    queue: Vec<usize>,
    nodes: u64,
    budget: u64,
    enumerate_all: bool,
    found: Vec<CloningWitness>,
    aborted: bool,
}

impl<'a> Search<'a> {
    fn new(alg: &'a FiniteEffectAlgebra, config: SearchConfig) -> Self {
        let n = alg.size();
        let cell = |p: ElementId, q: ElementId| p.index() * n + q.index();

        let mut constraints = Vec::new();
        for a in alg.elements() {
            for b in alg.elements().filter(|&b| b >= a) {
                let Some(s) = alg.sum(a, b) else { continue };
                for q in alg.elements() {
                    constraints.push(Constraint { x: cell(s, q), y: cell(a, q), z: cell(b, q) });
                    constraints.push(Constraint { x: cell(q, s), y: cell(q, a), z: cell(q, b) });
                }
            }
        }
        let mut watches = vec![Vec::new(); n * n];
        for (i, c) in constraints.iter().enumerate() {
            watches[c.x].push(i);
            watches[c.y].push(i);
            if c.z != c.y {
                watches[c.z].push(i);
            }
        }

        // c(p, q) ≤ p because c(p, 1) = c(p, q) ⊕ c(p, q'); likewise ≤ q
        let mut admissible = vec![vec![false; n]; n * n];
        let mut domain = vec![Vec::new(); n * n];
        for p in alg.elements() {
            for q in alg.elements() {
                for v in alg.lower_bounds(p, q) {
                    admissible[cell(p, q)][v.index()] = true;
                    domain[cell(p, q)].push(v);
                }
            }
        }

        let atoms = alg.atoms();
        let mut order = Vec::with_capacity(n * n);
        for &a in &atoms {
            for &b in &atoms {
                order.push(cell(a, b));
            }
        }
        let mut in_order = vec![false; n * n];
        for &c in &order {
            in_order[c] = true;
        }
        order.extend((0..n * n).filter(|&c| !in_order[c]));

        Search {
            alg,
            n,
            constraints,
            watches,
            admissible,
            domain,
            order,
            cells: vec![None; n * n],
            trail: Vec::new(),
            queue: Vec::new(),
            nodes: 0,
            budget: config.node_budget,
            enumerate_all: config.enumerate_all,
            found: Vec::new(),
            aborted: false,
        }
    }

    fn assign(&mut self, cell: usize, value: ElementId) -> bool {
        match self.cells[cell] {
            Some(v) => v == value,
            None => {
                if !self.admissible[cell][value.index()] {
                    return false;
                }
                self.cells[cell] = Some(value);
                self.trail.push(cell);
                self.queue.push(cell);
                true
            }
        }
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let cell = self.trail.pop().expect("trail entry");
            self.cells[cell] = None;
        }
        self.queue.clear();
    }

    fn propagate(&mut self) -> bool {
        while let Some(cell) = self.queue.pop() {
            for k in 0..self.watches[cell].len() {
                let c = self.constraints[self.watches[cell][k]];
                let (x, y, z) = (self.cells[c.x], self.cells[c.y], self.cells[c.z]);
                let ok = match (x, y, z) {
                    (Some(x), Some(y), Some(z)) => self.alg.sum(y, z) == Some(x),
                    (None, Some(y), Some(z)) => match self.alg.sum(y, z) {
                        Some(s) => self.assign(c.x, s),
                        None => false,
                    },
                    (Some(x), Some(y), None) => match self.alg.minus(x, y) {
                        Some(d) => self.assign(c.z, d),
                        None => false,
                    },
                    (Some(x), None, Some(z)) => match self.alg.minus(x, z) {
                        Some(d) => self.assign(c.y, d),
                        None => false,
                    },
                    _ => true,
                };
                if !ok {
                    self.queue.clear();
                    return false;
                }
            }
        }
        true
    }

    fn seed(&mut self) -> bool {
        let alg = self.alg;
        let n = self.n;
        for p in alg.elements() {
            let fixed = [
                (alg.zero(), p, alg.zero()),
                (p, alg.zero(), alg.zero()),
                (alg.unit(), p, p),
                (p, alg.unit(), p),
            ];
            for (r, c, v) in fixed {
                if !self.assign(r.index() * n + c.index(), v) {
                    return false;
                }
            }
        }
        self.propagate()
    }

    /// Returns false when the search should stop.
    fn solve(&mut self, start: usize) -> bool {
        let Some(pos) = (start..self.order.len()).find(|&i| self.cells[self.order[i]].is_none()) else {
            let table = self.cells.iter().map(|c| c.expect("complete")).collect();
            let witness = CloningWitness { size: self.n, table };
            debug_assert!(verify_witness(self.alg, &witness).holds());
            self.found.push(witness);
            return self.enumerate_all;
        };
        let cell = self.order[pos];
        for k in 0..self.domain[cell].len() {
            let value = self.domain[cell][k];
            self.nodes += 1;
            if self.nodes > self.budget {
                self.aborted = true;
                return false;
            }
            let mark = self.trail.len();
            if self.assign(cell, value) && self.propagate() && !self.solve(pos + 1) {
                self.undo(mark);
                return false;
            }
            self.undo(mark);
        }
        true
    }
}

/// Decides whether `alg` carries a cloning bimorphism. `NoWitness` is only
/// returned after the whole search tree has been exhausted.
pub fn find_cloning_bimorphism(alg: &FiniteEffectAlgebra, config: SearchConfig) -> SearchOutcome {
    let started = Instant::now();
    let mut search = Search::new(alg, config);
    if search.seed() {
        search.solve(0);
    }
    let mut witnesses = search.found;
    witnesses.sort();
    let status = if search.aborted {
        SearchStatus::Aborted
    } else if witnesses.is_empty() {
        SearchStatus::NoWitness
    } else {
        SearchStatus::WitnessFound
    };
    SearchOutcome { status, witnesses, nodes_explored: search.nodes, wall_time: started.elapsed() }
}

/// `c(p, q) = p ∧ q` on a Boolean algebra.
pub fn meet_witness(alg: &FiniteEffectAlgebra) -> Result<CloningWitness, CloneError> {
    if !alg.is_boolean() {
        return Err(CloneError::NotBoolean);
    }
    let table = alg
        .elements()
        .flat_map(|p| alg.elements().map(move |q| alg.meet(p, q).expect("Boolean algebras are lattices")))
        .collect();
    Ok(CloningWitness { size: alg.size(), table })
}

/// First constraint instance a candidate table violates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WitnessViolation {
    WrongSize { expected: usize, got: usize },
    UnitUnit { got: ElementId },
    RightUnit { p: ElementId, got: ElementId },
    LeftUnit { p: ElementId, got: ElementId },
    /// `c(p, a ⊕ b) ≠ c(p, a) ⊕ c(p, b)`
    SecondArgument { p: ElementId, a: ElementId, b: ElementId, lhs: ElementId, rhs: Option<ElementId> },
    /// `c(a ⊕ b, q) ≠ c(a, q) ⊕ c(b, q)`
    FirstArgument { a: ElementId, b: ElementId, q: ElementId, lhs: ElementId, rhs: Option<ElementId> },
}

impl WitnessViolation {
    pub fn describe(&self, alg: &FiniteEffectAlgebra) -> String {
        let l = |x: &ElementId| alg.label(*x).to_string();
        let r = |x: &Option<ElementId>| x.as_ref().map(l).unwrap_or_else(|| "undefined".into());
        match self {
            WitnessViolation::WrongSize { expected, got } => format!("table has {got} cells, expected {expected}"),
            WitnessViolation::UnitUnit { got } => format!("c(1,1) = {} ≠ 1", l(got)),
            WitnessViolation::RightUnit { p, got } => format!("c({0},1) = {1} ≠ {0}", l(p), l(got)),
            WitnessViolation::LeftUnit { p, got } => format!("c(1,{0}) = {1} ≠ {0}", l(p), l(got)),
            WitnessViolation::SecondArgument { p, a, b, lhs, rhs } => format!(
                "c({p},{s}) = c({p},{a}⊕{b}) = {lhs} ≠ c({p},{a})⊕c({p},{b}) = {rhs}",
                p = l(p),
                s = alg.sum(*a, *b).map(|s| alg.label(s).to_string()).unwrap_or_default(),
                a = l(a),
                b = l(b),
                lhs = l(lhs),
                rhs = r(rhs)
            ),
            WitnessViolation::FirstArgument { a, b, q, lhs, rhs } => format!(
                "c({s},{q}) = c({a}⊕{b},{q}) = {lhs} ≠ c({a},{q})⊕c({b},{q}) = {rhs}",
                s = alg.sum(*a, *b).map(|s| alg.label(s).to_string()).unwrap_or_default(),
                a = l(a),
                b = l(b),
                q = l(q),
                lhs = l(lhs),
                rhs = r(rhs)
            ),
        }
    }
}

impl fmt::Display for WitnessViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Checks the unit laws and biadditivity in both arguments exhaustively.
pub fn verify_witness(alg: &FiniteEffectAlgebra, w: &CloningWitness) -> Verdict<WitnessViolation> {
    let n = alg.size();
    if w.size != n || w.table.iter().any(|c| c.index() >= n) {
        return Verdict::Fails(WitnessViolation::WrongSize { expected: n * n, got: w.table.len() });
    }
    let one = alg.unit();
    if w.get(one, one) != one {
        return Verdict::Fails(WitnessViolation::UnitUnit { got: w.get(one, one) });
    }
    for p in alg.elements() {
        if w.get(p, one) != p {
            return Verdict::Fails(WitnessViolation::RightUnit { p, got: w.get(p, one) });
        }
        if w.get(one, p) != p {
            return Verdict::Fails(WitnessViolation::LeftUnit { p, got: w.get(one, p) });
        }
    }
    for a in alg.elements() {
        for b in alg.elements() {
            let Some(s) = alg.sum(a, b) else { continue };
            for q in alg.elements() {
                let lhs = w.get(q, s);
                let rhs = alg.sum(w.get(q, a), w.get(q, b));
                if rhs != Some(lhs) {
                    return Verdict::Fails(WitnessViolation::SecondArgument { p: q, a, b, lhs, rhs });
                }
                let lhs = w.get(s, q);
                let rhs = alg.sum(w.get(a, q), w.get(b, q));
                if rhs != Some(lhs) {
                    return Verdict::Fails(WitnessViolation::FirstArgument { a, b, q, lhs, rhs });
                }
            }
        }
    }
    Verdict::Holds
}

/// Exhaustive check of the two orthoalgebra lemmas on a witness:
/// `c(p, q) = 0 ⇔ p ⊥ q` and `c(p, p) = p`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaReport {
    pub pairs_checked: usize,
    pub zero_iff_orthogonal_violations: Vec<(ElementId, ElementId)>,
    pub idempotence_violations: Vec<ElementId>,
}

impl LemmaReport {
    pub fn passes(&self) -> bool {
        self.zero_iff_orthogonal_violations.is_empty() && self.idempotence_violations.is_empty()
    }
}

pub fn check_witness_lemmas(alg: &FiniteEffectAlgebra, w: &CloningWitness) -> Result<LemmaReport, CloneError> {
    if !alg.is_orthoalgebra() {
        return Err(CloneError::NotAnOrthoalgebra);
    }
    if let Verdict::Fails(v) = verify_witness(alg, w) {
        return Err(CloneError::InvalidWitness(v.describe(alg)));
    }
    let mut report = LemmaReport {
        pairs_checked: 0,
        zero_iff_orthogonal_violations: Vec::new(),
        idempotence_violations: Vec::new(),
    };
    for p in alg.elements() {
        for q in alg.elements() {
            report.pairs_checked += 1;
            if (w.get(p, q) == alg.zero()) != alg.orthogonal(p, q) {
                report.zero_iff_orthogonal_violations.push((p, q));
            }
        }
        if w.get(p, p) != p {
            report.idempotence_violations.push(p);
        }
    }
    Ok(report)
}

/// Mackey decomposition read off a witness: `r = c(p, q)`, `x = c(p, q')`,
/// `y = c(p', q)`, with `p = x ⊕ r` and `q = y ⊕ r`. It must be the only
/// decomposition the algebra admits.
pub fn compatibility_core(
    alg: &FiniteEffectAlgebra,
    w: &CloningWitness,
    p: ElementId,
    q: ElementId,
) -> Result<Decomposition, CloneError> {
    if !alg.is_orthoalgebra() {
        return Err(CloneError::NotAnOrthoalgebra);
    }
    let mismatch = || CloneError::DecompositionMismatch { p: alg.label(p).to_string(), q: alg.label(q).to_string() };
    let r = w.get(p, q);
    let x = w.get(p, alg.supplement(q));
    let y = w.get(alg.supplement(p), q);
    let d = Decomposition { x, y, z: r };
    let pairwise = alg.orthogonal(x, y) && alg.orthogonal(x, r) && alg.orthogonal(y, r);
    if !pairwise || alg.sum(x, r) != Some(p) || alg.sum(y, r) != Some(q) {
        return Err(mismatch());
    }
    if alg.are_compatible(p, q) != [d] {
        return Err(mismatch());
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{boolean_powerset, chain, mo, wright_triangle};

    fn id(alg: &FiniteEffectAlgebra, s: &str) -> ElementId {
        alg.id_of(s).unwrap()
    }

    #[test]
    fn search_examples() {
        let b2 = boolean_powerset(2).unwrap();
        let out = find_cloning_bimorphism(&b2, SearchConfig::default());
        assert_eq!(out.status, SearchStatus::WitnessFound);
        assert!(verify_witness(&b2, &out.witnesses[0]).holds());

        for alg in [mo(2).unwrap(), chain(2).unwrap(), wright_triangle()] {
            let out = find_cloning_bimorphism(&alg, SearchConfig::default());
            assert_eq!(out.status, SearchStatus::NoWitness);
            assert!(out.witnesses.is_empty());
        }
    }

    #[test]
    fn budget_exhaustion_is_an_abort() {
        let b4 = boolean_powerset(4).unwrap();
        let out = find_cloning_bimorphism(&b4, SearchConfig { enumerate_all: false, node_budget: 10 });
        assert_eq!(out.status, SearchStatus::Aborted);
    }

    #[test]
    fn meet_witness_examples() {
        let b2 = boolean_powerset(2).unwrap();
        let w = meet_witness(&b2).unwrap();
        let (a, b) = (id(&b2, "{1}"), id(&b2, "{2}"));
        assert_eq!(w.get(a, b), b2.zero());
        assert_eq!(w.get(a, a), a);
        assert_eq!(w.get(a, b2.unit()), a);

        let b1 = boolean_powerset(1).unwrap();
        let w = meet_witness(&b1).unwrap();
        let (z, o) = (b1.zero(), b1.unit());
        assert_eq!([w.get(z, z), w.get(z, o), w.get(o, z), w.get(o, o)], [z, z, z, o]);

        assert_eq!(meet_witness(&mo(2).unwrap()), Err(CloneError::NotBoolean));
        assert!(verify_witness(&boolean_powerset(3).unwrap(), &meet_witness(&boolean_powerset(3).unwrap()).unwrap()).holds());
    }

    #[test]
    fn verify_names_the_first_violation() {
        let c2 = chain(2).unwrap();
        let h = id(&c2, "1/2");
        let mut table = Vec::new();
        for p in c2.elements() {
            for q in c2.elements() {
                table.push(if p == c2.unit() { q } else if q == c2.unit() { p } else { c2.zero() });
            }
        }
        let w = CloningWitness::from_table(3, table);
        assert_eq!(w.get(h, h), c2.zero());
        let verdict = verify_witness(&c2, &w);
        assert_eq!(
            verdict,
            Verdict::Fails(WitnessViolation::SecondArgument { p: h, a: h, b: h, lhs: h, rhs: Some(c2.zero()) })
        );
        assert_eq!(verdict.counterexample().unwrap().describe(&c2), "c(1/2,1) = c(1/2,1/2⊕1/2) = 1/2 ≠ c(1/2,1/2)⊕c(1/2,1/2) = 0");
    }

    #[test]
    fn lemma_checks() {
        for k in 2..=3 {
            let b = boolean_powerset(k).unwrap();
            let report = check_witness_lemmas(&b, &meet_witness(&b).unwrap()).unwrap();
            assert!(report.passes());
            assert_eq!(report.pairs_checked, b.size() * b.size());
        }
        let c2 = chain(2).unwrap();
        let any = CloningWitness::from_table(3, vec![c2.zero(); 9]);
        assert_eq!(check_witness_lemmas(&c2, &any), Err(CloneError::NotAnOrthoalgebra));
    }

    #[test]
    fn compatibility_core_examples() {
        let b2 = boolean_powerset(2).unwrap();
        let w = meet_witness(&b2).unwrap();
        let (a, b) = (id(&b2, "{1}"), id(&b2, "{2}"));
        assert_eq!(compatibility_core(&b2, &w, a, b), Ok(Decomposition { x: a, y: b, z: b2.zero() }));
        for p in b2.elements() {
            assert_eq!(compatibility_core(&b2, &w, p, p), Ok(Decomposition { x: b2.zero(), y: b2.zero(), z: p }));
        }

        let b3 = boolean_powerset(3).unwrap();
        let w = meet_witness(&b3).unwrap();
        let d = compatibility_core(&b3, &w, id(&b3, "{1,2}"), id(&b3, "{2,3}")).unwrap();
        assert_eq!(d, Decomposition { x: id(&b3, "{1}"), y: id(&b3, "{3}"), z: id(&b3, "{2}") });
    }

    #[test]
    fn witness_file_round_trip() {
        let b2 = boolean_powerset(2).unwrap();
        let w = meet_witness(&b2).unwrap();
        let file = w.to_file(&b2);
        assert_eq!(file.witness.len(), 16);
        assert!(file.witness.windows(2).all(|r| r[0] <= r[1]));
        assert_eq!(CloningWitness::from_file(&b2, &file).unwrap(), w);
        let mut short = file.clone();
        short.witness.pop();
        assert!(matches!(CloningWitness::from_file(&b2, &short), Err(CloneError::Malformed(_))));
    }

    #[test]
    fn search_is_deterministic() {
        let b3 = boolean_powerset(3).unwrap();
        let cfg = SearchConfig { enumerate_all: true, node_budget: DEFAULT_NODE_BUDGET };
        let first = find_cloning_bimorphism(&b3, cfg);
        let second = find_cloning_bimorphism(&b3, cfg);
        assert!(first.same_result(&second));
    }
}
