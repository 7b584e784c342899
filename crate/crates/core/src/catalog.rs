//! Deterministic constructors for the standard small algebras.
//!
//! Labels are fixed per constructor: subsets of `{1..k}` print as `{1,2}`,
//! chain elements as unreduced fractions `2/4`, the `mo(n)` atoms as `a_i`
//! and `a_i'`. The empty subset and the full set print as `0` and `1`.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{validate, AlgebraError, ElementId, FiniteEffectAlgebra, RawAlgebra, DEFAULT_MAX_ELEMENTS};

pub const MAX_POWERSET_RANK: usize = 5;
pub const MAX_CHAIN_LENGTH: usize = 12;
pub const MAX_MO_BLOCKS: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("{name}: parameter {value} outside 1..={max}")]
    BoundExceeded { name: &'static str, value: usize, max: usize },
    #[error("construction would have {size} elements, the cap is {cap}")]
    TooLarge { size: usize, cap: usize },
    #[error("{0} needs at least one component")]
    NoComponents(&'static str),
    #[error("cannot parse catalog spec: {0}")]
    Parse(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

fn check_bound(name: &'static str, value: usize, max: usize) -> Result<(), CatalogError> {
    if value == 0 || value > max {
        return Err(CatalogError::BoundExceeded { name, value, max });
    }
    Ok(())
}

fn build(labels: Vec<String>, zero: usize, unit: usize, sum: impl Fn(usize, usize) -> Option<usize>) -> Result<FiniteEffectAlgebra, CatalogError> {
    let n = labels.len();
    let table = (0..n).map(|a| (0..n).map(|b| sum(a, b)).collect()).collect();
    Ok(validate(RawAlgebra { labels, zero, unit, table })?)
}

fn subset_label(mask: usize, k: usize) -> String {
    if mask == 0 {
        return "0".into();
    }
    if mask == (1 << k) - 1 {
        return "1".into();
    }
    let members: Vec<String> = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| (i + 1).to_string()).collect();
    format!("{{{}}}", members.join(","))
}

/// Subsets of `{1..k}` with disjoint union as the partial sum.
pub fn boolean_powerset(k: usize) -> Result<FiniteEffectAlgebra, CatalogError> {
    check_bound("boolean_powerset", k, MAX_POWERSET_RANK)?;
    let n = 1usize << k;
    build(
        (0..n).map(|m| subset_label(m, k)).collect(),
        0,
        n - 1,
        |a, b| (a & b == 0).then_some(a | b),
    )
}

/// `{0, 1/D, …, 1}` with truncation-free addition.
pub fn chain(d: usize) -> Result<FiniteEffectAlgebra, CatalogError> {
    check_bound("chain", d, MAX_CHAIN_LENGTH)?;
    let labels = (0..=d)
        .map(|i| match i {
            0 => "0".to_string(),
            i if i == d => "1".to_string(),
            i => format!("{i}/{d}"),
        })
        .collect();
    build(labels, 0, d, |a, b| (a + b <= d).then_some(a + b))
}

/// Horizontal sum of `n` four-element Boolean blocks `{0, a_i, a_i', 1}`.
pub fn mo(n: usize) -> Result<FiniteEffectAlgebra, CatalogError> {
    check_bound("mo", n, MAX_MO_BLOCKS)?;
    let mut labels = vec!["0".to_string(), "1".to_string()];
    for i in 1..=n {
        labels.push(format!("a_{i}"));
        labels.push(format!("a_{i}'"));
    }
    build(labels, 0, 1, |a, b| match (a, b) {
        (0, x) | (x, 0) => Some(x),
        (a, b) if a >= 2 && b >= 2 && (a - 2) / 2 == (b - 2) / 2 && a != b => Some(1),
        _ => None,
    })
}

const WRIGHT_LABELS: [&str; 14] = [
    "0", "1", "a", "b", "c", "d", "e", "f", "a'", "b'", "c'", "d'", "e'", "f'",
];

/// Atom sums of the Wright triangle: blocks `{a,b,c}`, `{c,d,e}`, `{e,f,a}`.
const WRIGHT_ATOM_SUMS: [(&str, &str, &str); 9] = [
    ("a", "b", "c'"),
    ("a", "c", "b'"),
    ("b", "c", "a'"),
    ("c", "d", "e'"),
    ("c", "e", "d'"),
    ("d", "e", "c'"),
    ("e", "f", "a'"),
    ("e", "a", "f'"),
    ("f", "a", "e'"),
];

/// Fourteen-element orthoalgebra on three pairwise overlapping 3-atom
/// blocks; `a`, `c`, `e` are pairwise orthogonal but `(a ⊕ c) ⊕ e` is
/// undefined.
pub fn wright_triangle() -> FiniteEffectAlgebra {
    let idx = |s: &str| WRIGHT_LABELS.iter().position(|l| *l == s).expect("wright label");
    let n = WRIGHT_LABELS.len();
    let mut table = vec![vec![None; n]; n];
    let mut put = |a: usize, b: usize, c: usize| {
        table[a][b] = Some(c);
        table[b][a] = Some(c);
    };
    for x in 0..n {
        put(0, x, x);
    }
    for atom in 2..8 {
        put(atom, atom + 6, 1);
    }
    for (a, b, c) in WRIGHT_ATOM_SUMS {
        put(idx(a), idx(b), idx(c));
    }
    validate(RawAlgebra {
        labels: WRIGHT_LABELS.iter().map(|s| s.to_string()).collect(),
        zero: 0,
        unit: 1,
        table,
    })
    .expect("embedded Wright triangle table is valid")
}

/// Glues the components at a shared 0 and 1; no sums across components.
pub fn horizontal_sum(parts: &[FiniteEffectAlgebra]) -> Result<FiniteEffectAlgebra, CatalogError> {
    if parts.is_empty() {
        return Err(CatalogError::NoComponents("horizontal_sum"));
    }
    let size = 2 + parts.iter().map(|p| p.size() - 2).sum::<usize>();
    if size > DEFAULT_MAX_ELEMENTS {
        return Err(CatalogError::TooLarge { size, cap: DEFAULT_MAX_ELEMENTS });
    }
    // global index of each (component, element)
    let mut labels = vec!["0".to_string(), "1".to_string()];
    let mut global: Vec<Vec<usize>> = Vec::with_capacity(parts.len());
    let mut origin: Vec<Option<(usize, ElementId)>> = vec![None, None];
    for (i, part) in parts.iter().enumerate() {
        let mut map = Vec::with_capacity(part.size());
        for p in part.elements() {
            if p == part.zero() {
                map.push(0);
            } else if p == part.unit() {
                map.push(1);
            } else {
                map.push(labels.len());
                labels.push(format!("c{}:{}", i + 1, part.label(p)));
                origin.push(Some((i, p)));
            }
        }
        global.push(map);
    }
    build(labels, 0, 1, |a, b| match (a, b) {
        (0, x) | (x, 0) => Some(x),
        (1, _) | (_, 1) => None,
        (a, b) => {
            let (ia, pa) = origin[a].expect("inner element");
            let (ib, pb) = origin[b].expect("inner element");
            if ia != ib {
                return None;
            }
            parts[ia].sum(pa, pb).map(|c| global[ia][c.index()])
        }
    })
}

/// Cartesian product with componentwise partial sums.
pub fn product(parts: &[FiniteEffectAlgebra]) -> Result<FiniteEffectAlgebra, CatalogError> {
    if parts.is_empty() {
        return Err(CatalogError::NoComponents("product"));
    }
    let size = parts
        .iter()
        .try_fold(1usize, |acc, p| acc.checked_mul(p.size()))
        .unwrap_or(usize::MAX);
    if size > DEFAULT_MAX_ELEMENTS {
        return Err(CatalogError::TooLarge { size, cap: DEFAULT_MAX_ELEMENTS });
    }
    // mixed radix, first component most significant
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
            let names: Vec<&str> = decode(i)
                .iter()
                .zip(parts)
                .map(|(&d, p)| p.label(ElementId(d)))
                .collect();
            format!("({})", names.join(","))
        })
        .collect();
    let zero = encode(&parts.iter().map(|p| p.zero().index()).collect::<Vec<_>>());
    let unit = encode(&parts.iter().map(|p| p.unit().index()).collect::<Vec<_>>());
    build(labels, zero, unit, |a, b| {
        let (da, db) = (decode(a), decode(b));
        let digits: Option<Vec<usize>> = parts
            .iter()
            .zip(da.iter().zip(&db))
            .map(|(p, (&x, &y))| p.sum(ElementId(x), ElementId(y)).map(|c| c.index()))
            .collect();
        digits.map(|d| encode(&d))
    })
}

/// A named catalog construction, possibly nested.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "name", content = "parameters", rename_all = "snake_case")]
pub enum CatalogSpec {
    BooleanPowerset(usize),
    Chain(usize),
    Mo(usize),
    WrightTriangle,
    HorizontalSum(Vec<CatalogSpec>),
    Product(Vec<CatalogSpec>),
}

impl CatalogSpec {
    pub fn build(&self) -> Result<FiniteEffectAlgebra, CatalogError> {
        match self {
            CatalogSpec::BooleanPowerset(k) => boolean_powerset(*k),
            CatalogSpec::Chain(d) => chain(*d),
            CatalogSpec::Mo(n) => mo(*n),
            CatalogSpec::WrightTriangle => Ok(wright_triangle()),
            CatalogSpec::HorizontalSum(parts) => horizontal_sum(&build_all(parts)?),
            CatalogSpec::Product(parts) => product(&build_all(parts)?),
        }
    }

    /// Carrier size without building, saturating on overflow.
    pub fn size(&self) -> usize {
        match self {
            CatalogSpec::BooleanPowerset(k) => 1usize.checked_shl(*k as u32).unwrap_or(usize::MAX),
            CatalogSpec::Chain(d) => d + 1,
            CatalogSpec::Mo(n) => 2 + 2 * n,
            CatalogSpec::WrightTriangle => WRIGHT_LABELS.len(),
            CatalogSpec::HorizontalSum(parts) => {
                2 + parts.iter().map(|p| p.size().saturating_sub(2)).sum::<usize>()
            }
            CatalogSpec::Product(parts) => parts.iter().fold(1usize, |acc, p| acc.saturating_mul(p.size())),
        }
    }
}

fn build_all(parts: &[CatalogSpec]) -> Result<Vec<FiniteEffectAlgebra>, CatalogError> {
    parts.iter().map(CatalogSpec::build).collect()
}

impl fmt::Display for CatalogSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |f: &mut fmt::Formatter<'_>, name: &str, parts: &[CatalogSpec]| {
            write!(f, "{name}(")?;
            for (i, p) in parts.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{p}")?;
            }
            write!(f, ")")
        };
        match self {
            CatalogSpec::BooleanPowerset(k) => write!(f, "boolean_powerset({k})"),
            CatalogSpec::Chain(d) => write!(f, "chain({d})"),
            CatalogSpec::Mo(n) => write!(f, "mo({n})"),
            CatalogSpec::WrightTriangle => write!(f, "wright_triangle()"),
            CatalogSpec::HorizontalSum(parts) => list(f, "horizontal_sum", parts),
            CatalogSpec::Product(parts) => list(f, "product", parts),
        }
    }
}

impl FromStr for CatalogSpec {
    type Err = CatalogError;

    /// Parses expressions such as `product(chain(2),chain(2))`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut parser = SpecParser { input: compact.as_bytes(), pos: 0 };
        let spec = parser.spec()?;
        if parser.pos != parser.input.len() {
            return Err(CatalogError::Parse(format!("trailing input in `{s}`")));
        }
        Ok(spec)
    }
}

struct SpecParser<'a> {
    input: &'a [u8],
    pos: usize,
}

impl SpecParser<'_> {
    fn error(&self, what: &str) -> CatalogError {
        CatalogError::Parse(format!("{what} at offset {}", self.pos))
    }

    fn eat(&mut self, byte: u8) -> bool {
        if self.input.get(self.pos) == Some(&byte) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn ident(&mut self) -> &str {
        let start = self.pos;
        while self.pos < self.input.len() && (self.input[self.pos].is_ascii_alphabetic() || self.input[self.pos] == b'_') {
            self.pos += 1;
        }
        std::str::from_utf8(&self.input[start..self.pos]).expect("ascii")
    }

    fn number(&mut self) -> Result<usize, CatalogError> {
        let start = self.pos;
        while self.pos < self.input.len() && self.input[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.input[start..self.pos])
            .expect("ascii")
            .parse()
            .map_err(|_| self.error("expected a number"))
    }

    fn spec(&mut self) -> Result<CatalogSpec, CatalogError> {
        let name = self.ident().to_string();
        let has_args = self.eat(b'(');
        let spec = match name.as_str() {
            "wright_triangle" => CatalogSpec::WrightTriangle,
            "boolean_powerset" | "chain" | "mo" => {
                if !has_args {
                    return Err(self.error("expected `(`"));
                }
                let n = self.number()?;
                match name.as_str() {
                    "boolean_powerset" => CatalogSpec::BooleanPowerset(n),
                    "chain" => CatalogSpec::Chain(n),
                    _ => CatalogSpec::Mo(n),
                }
            }
            "horizontal_sum" | "product" => {
                if !has_args {
                    return Err(self.error("expected `(`"));
                }
                let mut parts = vec![self.spec()?];
                while self.eat(b',') {
                    parts.push(self.spec()?);
                }
                if name == "product" {
                    CatalogSpec::Product(parts)
                } else {
                    CatalogSpec::HorizontalSum(parts)
                }
            }
            other => return Err(CatalogError::Parse(format!("unknown construction `{other}`"))),
        };
        if has_args && !self.eat(b')') {
            return Err(self.error("expected `)`"));
        }
        Ok(spec)
    }
}

/// A random catalog expression whose carrier has at most `max_size` elements.
pub fn random_spec<R: Rng + ?Sized>(rng: &mut R, max_size: usize, depth: usize) -> CatalogSpec {
    loop {
        let spec = match rng.gen_range(0..if depth == 0 { 3 } else { 5 }) {
            0 => CatalogSpec::BooleanPowerset(rng.gen_range(1..=3)),
            1 => CatalogSpec::Chain(rng.gen_range(1..=6)),
            2 => CatalogSpec::Mo(rng.gen_range(1..=3)),
            3 => CatalogSpec::HorizontalSum(
                (0..rng.gen_range(1..=3)).map(|_| random_spec(rng, max_size, depth - 1)).collect(),
            ),
            _ => CatalogSpec::Product(
                (0..rng.gen_range(1..=2)).map(|_| random_spec(rng, max_size, depth - 1)).collect(),
            ),
        };
        if spec.size() <= max_size {
            return spec;
        }
    }
}

/// A valid algebra of at most `max_size` elements with its carrier shuffled,
/// so that zero and unit sit at arbitrary positions.
pub fn fuzz_algebra<R: Rng + ?Sized>(rng: &mut R, max_size: usize) -> FiniteEffectAlgebra {
    let alg = random_spec(rng, max_size, 2).build().expect("bounded random spec builds");
    let mut perm: Vec<usize> = (0..alg.size()).collect();
    perm.shuffle(rng);
    alg.permuted(&perm).expect("permutation preserves validity")
}
