//! Exhaustive local-hidden-variable analysis: deterministic-strategy
//! enumeration, the exact classical bound of the inequality, the logical
//! paradox check, and the facet (tightness) rank test.
//!
//! A deterministic strategy fixes both outcomes of every party. The LHV set
//! is the convex hull of the 4ⁿ strategies, and the inequality is affine over
//! it, so its classical maximum is attained at a strategy and is computed
//! exactly over rationals. The facet test embeds every strategy as a
//! conditional-probability behavior vector and measures affine dimensions by
//! fraction-free integer elimination.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::inequality::f_coefficient;
use crate::scenario::{ProjectorString, Rational, Scenario, Symbol};

/// Enumeration cap for strategy sweeps (4¹⁰ ≈ 10⁶ strategies).
pub const MAX_ENUM_QUBITS: usize = 10;

/// Cap for the facet rank test, where 4ⁿ vertices of 4ⁿ entries each stay
/// desk-scale exact.
pub const MAX_FACET_QUBITS: usize = 4;

/// A per-party assignment of fixed outcomes to both observables, packed two
/// bits per party: bit 2k is party k's `a` outcome, bit 2k+1 its `b` outcome.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DeterministicStrategy {
    n: usize,
    bits: u32,
}

impl DeterministicStrategy {
    pub fn from_index(n: usize, index: u32) -> Self {
        debug_assert!(n <= 16 && (index as u64) < 1u64 << (2 * n));
        DeterministicStrategy { n, bits: index }
    }

    pub fn index(&self) -> u32 {
        self.bits
    }

    pub fn parties(&self) -> usize {
        self.n
    }

    /// Party k's predetermined outcome for observable `a` (parties count
    /// from 0 here).
    pub fn outcome_a(&self, k: usize) -> u8 {
        (self.bits >> (2 * k) & 1) as u8
    }

    /// Party k's predetermined outcome for observable `b`.
    pub fn outcome_b(&self, k: usize) -> u8 {
        (self.bits >> (2 * k + 1) & 1) as u8
    }

    /// Readable form `a:0110 b:1011` with party 1 leftmost.
    pub fn label(&self) -> String {
        let a: String = (0..self.n).map(|k| char::from(b'0' + self.outcome_a(k))).collect();
        let b: String = (0..self.n).map(|k| char::from(b'0' + self.outcome_b(k))).collect();
        format!("a:{a} b:{b}")
    }
}

/// The satisfaction test of a string against a strategy, as a mask pair:
/// a strategy satisfies the string iff `bits & care == want`.
fn string_masks(string: &ProjectorString) -> (u32, u32) {
    let mut care = 0u32;
    let mut want = 0u32;
    for (k, sym) in string.symbols().iter().enumerate() {
        let bit = match sym.unbarred() {
            Symbol::A => 2 * k,
            _ => 2 * k + 1,
        };
        care |= 1 << bit;
        if !sym.is_barred() {
            want |= 1 << bit;
        }
    }
    (care, want)
}

/// 1 iff every qubit's symbol is met by the strategy's fixed outcomes.
pub fn strategy_probability(d: &DeterministicStrategy, string: &ProjectorString) -> Result<u8> {
    if string.len() != d.n {
        return Err(Error::DimensionMismatch {
            expected: d.n,
            got: string.len(),
        });
    }
    let (care, want) = string_masks(string);
    Ok(u8::from(d.bits & care == want))
}

fn check_enum_cap(s: &Scenario) -> Result<()> {
    if s.qubits() > MAX_ENUM_QUBITS {
        return Err(Error::SizeCap {
            what: "strategy enumeration",
            n: s.qubits(),
            cap: MAX_ENUM_QUBITS,
        });
    }
    Ok(())
}

struct MaskedScenario {
    f: Rational,
    x: Rational,
    y: Rational,
    success: (u32, u32),
    alphas: Vec<(u32, u32)>,
    betas: Vec<(u32, u32)>,
}

impl MaskedScenario {
    fn new(s: &Scenario) -> Self {
        MaskedScenario {
            f: f_coefficient(s),
            x: s.x(),
            y: s.y(),
            success: string_masks(&s.success_string()),
            alphas: s.alpha_strings().iter().map(string_masks).collect(),
            betas: s.beta_strings().iter().map(string_masks).collect(),
        }
    }

    fn satisfied(masks: &[(u32, u32)], bits: u32) -> i64 {
        masks
            .iter()
            .filter(|&&(care, want)| bits & care == want)
            .count() as i64
    }

    fn ivalue(&self, bits: u32) -> Rational {
        let succ = i64::from(bits & self.success.0 == self.success.1);
        self.f * Rational::from_integer(succ)
            - self.x * Rational::from_integer(Self::satisfied(&self.alphas, bits))
            - self.y * Rational::from_integer(Self::satisfied(&self.betas, bits))
    }
}

/// The exact LHV maximum of the inequality and the strategies attaining it.
#[derive(Debug, Clone)]
pub struct ClassicalBound {
    pub max: Rational,
    /// All maximizers, lexicographically ordered by packed index.
    pub maximizers: Vec<DeterministicStrategy>,
}

/// Maximizes the inequality over all 4ⁿ deterministic strategies. Since the
/// inequality is affine over mixtures, this is the LHV bound.
pub fn classical_max(s: &Scenario) -> Result<ClassicalBound> {
    check_enum_cap(s)?;
    let n = s.qubits();
    let masked = MaskedScenario::new(s);
    let total = 1u32 << (2 * n);

    let (max, mut maximizers) = (0..total)
        .into_par_iter()
        .fold(
            || (None::<Rational>, Vec::new()),
            |(mut best, mut arg), bits| {
                let v = masked.ivalue(bits);
                match best {
                    Some(b) if v < b => {}
                    Some(b) if v == b => arg.push(bits),
                    _ => {
                        best = Some(v);
                        arg.clear();
                        arg.push(bits);
                    }
                }
                (best, arg)
            },
        )
        .reduce(
            || (None, Vec::new()),
            |(b1, a1), (b2, a2)| match (b1, b2) {
                (None, _) => (b2, a2),
                (_, None) => (b1, a1),
                (Some(v1), Some(v2)) => {
                    if v1 > v2 {
                        (Some(v1), a1)
                    } else if v2 > v1 {
                        (Some(v2), a2)
                    } else {
                        let mut merged = a1;
                        merged.extend(a2);
                        (Some(v1), merged)
                    }
                }
            },
        );
    maximizers.sort_unstable();
    Ok(ClassicalBound {
        max: max.expect("at least one strategy"),
        maximizers: maximizers
            .into_iter()
            .map(|bits| DeterministicStrategy::from_index(n, bits))
            .collect(),
    })
}

/// Result of the logical paradox check: `holds` iff no strategy satisfies
/// every zero-constraint while also achieving the success event.
#[derive(Debug, Clone)]
pub struct ParadoxCheck {
    pub holds: bool,
    pub witness: Option<DeterministicStrategy>,
}

pub fn logical_paradox_check(s: &Scenario) -> Result<ParadoxCheck> {
    check_enum_cap(s)?;
    let masked = MaskedScenario::new(s);
    let total = 1u32 << (2 * s.qubits());
    let witness = (0..total).find(|&bits| {
        bits & masked.success.0 == masked.success.1
            && MaskedScenario::satisfied(&masked.alphas, bits) == 0
            && MaskedScenario::satisfied(&masked.betas, bits) == 0
    });
    Ok(ParadoxCheck {
        holds: witness.is_none(),
        witness: witness.map(|bits| DeterministicStrategy::from_index(s.qubits(), bits)),
    })
}

/// A strategy embedded as conditional outcome probabilities: for each of the
/// 2ⁿ settings (every party picks `a` or `b`) and each of the 2ⁿ outcome
/// patterns, the probability is 0 or 1, summing to 1 per setting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BehaviorVector {
    n: usize,
    entries: Vec<u8>,
}

impl BehaviorVector {
    /// Embeds a deterministic strategy. Setting bits and pattern bits both
    /// carry party 1 in the most significant position; a setting bit of 1
    /// selects observable `b`.
    pub fn from_strategy(d: &DeterministicStrategy) -> Self {
        let n = d.n;
        let mut entries = vec![0u8; 1 << (2 * n)];
        for setting in 0..(1usize << n) {
            let mut pattern = 0usize;
            for k in 0..n {
                let picks_b = setting >> (n - 1 - k) & 1 == 1;
                let out = if picks_b { d.outcome_b(k) } else { d.outcome_a(k) };
                pattern = pattern << 1 | out as usize;
            }
            entries[(setting << n) | pattern] = 1;
        }
        BehaviorVector { n, entries }
    }

    pub fn entries(&self) -> &[u8] {
        &self.entries
    }

    /// Per-setting outcome distributions must be point masses.
    pub fn is_normalized(&self) -> bool {
        self.entries
            .chunks_exact(1 << self.n)
            .all(|row| row.iter().map(|&e| e as u32).sum::<u32>() == 1)
    }
}

/// Rank of an integer matrix by fraction-free (Bareiss) elimination; exact.
fn integer_rank(mut rows: Vec<Vec<BigInt>>) -> usize {
    let m = rows.len();
    if m == 0 {
        return 0;
    }
    let ncols = rows[0].len();
    let mut rank = 0usize;
    let mut prev = BigInt::one();
    for c in 0..ncols {
        if rank == m {
            break;
        }
        let Some(pivot) = (rank..m).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let (top, rest) = rows.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        let lead = pivot_row[c].clone();
        for row in rest.iter_mut() {
            let factor = std::mem::replace(&mut row[c], BigInt::zero());
            for j in (c + 1)..ncols {
                row[j] = (&lead * &row[j] - &factor * &pivot_row[j]) / &prev;
            }
        }
        prev = lead;
        rank += 1;
    }
    rank
}

/// Affine dimension of a set of lattice points: the rank of the differences
/// against the first point.
fn affine_dimension(points: &[BehaviorVector]) -> usize {
    let Some(first) = points.first() else { return 0 };
    let base = first.entries();
    let rows: Vec<Vec<BigInt>> = points[1..]
        .iter()
        .map(|p| {
            p.entries()
                .iter()
                .zip(base)
                .map(|(&a, &b)| BigInt::from(a as i64 - b as i64))
                .collect()
        })
        .collect();
    integer_rank(rows)
}

/// Outcome of the tightness test: the inequality is a facet iff the
/// strategies saturating it span an affine subspace of dimension one less
/// than the full strategy polytope.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FacetReport {
    pub polytope_dim: usize,
    pub saturating_dim: usize,
    pub saturating_count: usize,
    pub is_facet: bool,
}

pub fn facet_rank(s: &Scenario) -> Result<FacetReport> {
    if s.qubits() > MAX_FACET_QUBITS {
        return Err(Error::SizeCap {
            what: "facet rank test",
            n: s.qubits(),
            cap: MAX_FACET_QUBITS,
        });
    }
    let n = s.qubits();
    let masked = MaskedScenario::new(s);
    let total = 1u32 << (2 * n);

    let mut all = Vec::with_capacity(total as usize);
    let mut saturating = Vec::new();
    for bits in 0..total {
        let d = DeterministicStrategy::from_index(n, bits);
        let v = BehaviorVector::from_strategy(&d);
        if masked.ivalue(bits).is_zero() {
            saturating.push(v.clone());
        }
        all.push(v);
    }
    let polytope_dim = affine_dimension(&all);
    let saturating_dim = affine_dimension(&saturating);
    Ok(FacetReport {
        polytope_dim,
        saturating_dim,
        saturating_count: saturating.len(),
        is_facet: saturating_dim + 1 == polytope_dim,
    })
}
