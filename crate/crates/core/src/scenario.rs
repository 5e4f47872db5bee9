//! The `[n;|α|,|β|]` scenario algebra: validity rules, subset enumeration, and
//! symbolic generation of every probability term in the paradox and inequality.
//!
//! A scenario fixes the party count `n`, the size `ka` of the subsets measured
//! with `b`, the size `kb` of the subsets measured with `b̄`, and the positive
//! rational weights `(x, y)` of the two constraint sums. Constraint terms are
//! projector strings: one symbol from {a, ā, b, b̄} per qubit.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;

use crate::error::{Error, Result};

/// Exact rational used for inequality weights and coefficients.
pub type Rational = num_rational::Ratio<i64>;

/// One per-qubit measurement outcome projector symbol.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    /// Projection onto |a⟩.
    A,
    /// Projection onto the complement of |a⟩.
    ABar,
    /// Projection onto |b⟩.
    B,
    /// Projection onto the complement of |b⟩.
    BBar,
}

impl Symbol {
    /// The unbarred observable this symbol belongs to (`A` or `B`).
    pub fn unbarred(self) -> Symbol {
        match self {
            Symbol::A | Symbol::ABar => Symbol::A,
            Symbol::B | Symbol::BBar => Symbol::B,
        }
    }

    pub fn is_barred(self) -> bool {
        matches!(self, Symbol::ABar | Symbol::BBar)
    }

    /// Rendering with combining overline for barred symbols.
    pub fn unicode(self) -> &'static str {
        match self {
            Symbol::A => "a",
            Symbol::ABar => "a\u{0304}",
            Symbol::B => "b",
            Symbol::BBar => "b\u{0304}",
        }
    }

    /// ASCII fallback: a bar is rendered as a trailing `-`.
    pub fn ascii(self) -> &'static str {
        match self {
            Symbol::A => "a",
            Symbol::ABar => "a-",
            Symbol::B => "b",
            Symbol::BBar => "b-",
        }
    }

    /// Compact single-character form used in data tables and parsing:
    /// `a`, `A` (= ā), `b`, `B` (= b̄).
    pub fn compact(self) -> char {
        match self {
            Symbol::A => 'a',
            Symbol::ABar => 'A',
            Symbol::B => 'b',
            Symbol::BBar => 'B',
        }
    }
}

/// A per-qubit choice among {a, ā, b, b̄}: the symbolic form of every
/// probability term appearing in the paradox and the inequality.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjectorString(Vec<Symbol>);

impl ProjectorString {
    pub fn new(symbols: Vec<Symbol>) -> Self {
        ProjectorString(symbols)
    }

    /// The all-`a` string of length `n`.
    pub fn all_a(n: usize) -> Self {
        ProjectorString(vec![Symbol::A; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    /// ASCII rendering, e.g. `a b- a a`.
    pub fn ascii(&self) -> String {
        self.0.iter().map(|s| s.ascii()).join(" ")
    }

    /// Compact rendering, e.g. `aBaa`; inverse of [`FromStr`].
    pub fn compact(&self) -> String {
        self.0.iter().map(|s| s.compact()).collect()
    }

    /// The detector-port pattern this string selects when measured in its
    /// unbarred bases: `1` = transmitted/unbarred, `0` = reflected/barred,
    /// qubit 1 leftmost.
    pub fn outcome_pattern(&self) -> String {
        self.0
            .iter()
            .map(|s| if s.is_barred() { '0' } else { '1' })
            .collect()
    }
}

impl fmt::Display for ProjectorString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.iter().map(|s| s.unicode()).join(" "))
    }
}

impl FromStr for ProjectorString {
    type Err = Error;

    /// Parses the compact form: one of `a`, `A` (= ā), `b`, `B` (= b̄) per qubit.
    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                'a' => Ok(Symbol::A),
                'A' => Ok(Symbol::ABar),
                'b' => Ok(Symbol::B),
                'B' => Ok(Symbol::BBar),
                other => Err(Error::MalformedCounts {
                    path: "projector string".into(),
                    reason: format!("unknown symbol {other:?}"),
                }),
            })
            .collect::<Result<Vec<_>>>()
            .map(ProjectorString)
    }
}

/// One generalized Hardy paradox instance: `[n;ka,kb]` with weights `(x, y)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scenario {
    n: usize,
    ka: usize,
    kb: usize,
    x: Rational,
    y: Rational,
}

impl Scenario {
    /// Validates the scenario bounds `2 ≤ ka ≤ n`, `1 ≤ kb ≤ ka`,
    /// `ka + kb ≤ n + 1` and the weight positivity `x > 0`, `y > 0`.
    ///
    /// The error names the violated inequality.
    pub fn new(n: usize, ka: usize, kb: usize, x: Rational, y: Rational) -> Result<Self> {
        let invalid = |violated: String| Error::InvalidScenario { n, ka, kb, violated };
        if ka < 2 {
            return Err(invalid(format!("2 <= ka violated: ka = {ka}")));
        }
        if ka > n {
            return Err(invalid(format!("ka <= n violated: {ka} > {n}")));
        }
        if kb < 1 {
            return Err(invalid(format!("1 <= kb violated: kb = {kb}")));
        }
        if kb > ka {
            return Err(invalid(format!("kb <= ka violated: {kb} > {ka}")));
        }
        if ka + kb > n + 1 {
            return Err(invalid(format!(
                "ka + kb <= n + 1 violated: {ka} + {kb} > {n} + 1"
            )));
        }
        if x <= Rational::from_integer(0) || y <= Rational::from_integer(0) {
            return Err(Error::NonPositiveWeight {
                x: x.to_string(),
                y: y.to_string(),
            });
        }
        Ok(Scenario { n, ka, kb, x, y })
    }

    /// Scenario with unit weights `x = y = 1`.
    pub fn unit(n: usize, ka: usize, kb: usize) -> Result<Self> {
        Scenario::new(n, ka, kb, Rational::from_integer(1), Rational::from_integer(1))
    }

    pub fn qubits(&self) -> usize {
        self.n
    }

    /// |α|: size of the subsets measured with `b`.
    pub fn alpha_size(&self) -> usize {
        self.ka
    }

    /// |β|: size of the subsets measured with `b̄`.
    pub fn beta_size(&self) -> usize {
        self.kb
    }

    pub fn x(&self) -> Rational {
        self.x
    }

    pub fn y(&self) -> Rational {
        self.y
    }

    /// Same scenario bounds with different weights.
    pub fn with_weights(&self, x: Rational, y: Rational) -> Result<Self> {
        Scenario::new(self.n, self.ka, self.kb, x, y)
    }

    /// All α-type strings: `b` on a size-`ka` subset, `a` elsewhere.
    /// Subsets are enumerated lexicographically over sorted index tuples.
    pub fn alpha_strings(&self) -> Vec<ProjectorString> {
        subset_strings(self.n, self.ka, Symbol::B)
    }

    /// All β-type strings: `b̄` on a size-`kb` subset, `a` elsewhere.
    pub fn beta_strings(&self) -> Vec<ProjectorString> {
        subset_strings(self.n, self.kb, Symbol::BBar)
    }

    /// All zero-constraint strings: the α-type strings followed by the
    /// β-type strings, each block in lexicographic subset order.
    pub fn constraint_strings(&self) -> Vec<ProjectorString> {
        let mut out = self.alpha_strings();
        out.extend(self.beta_strings());
        out
    }

    /// The success string `a₁a₂⋯aₙ` whose probability the paradox forces
    /// to zero classically.
    pub fn success_string(&self) -> ProjectorString {
        ProjectorString::all_a(self.n)
    }

    /// Weight label `(x=…, y=…)` for reports.
    pub fn weights_label(&self) -> String {
        format!("(x={}, y={})", self.x, self.y)
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{};{},{}]", self.n, self.ka, self.kb)
    }
}

fn subset_strings(n: usize, size: usize, mark: Symbol) -> Vec<ProjectorString> {
    (0..n)
        .combinations(size)
        .map(|subset| {
            let mut symbols = vec![Symbol::A; n];
            for k in subset {
                symbols[k] = mark;
            }
            ProjectorString(symbols)
        })
        .collect()
}
