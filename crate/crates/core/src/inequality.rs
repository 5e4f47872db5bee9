//! The generalized Hardy inequality
//!
//! ```text
//! I[n;ka,kb;x,y] = F·p(a₁⋯aₙ) − x·Σ_α p(b_α a_ᾱ) − y·Σ_β p(b̄_β a_β̄) ≤ 0
//! ```
//!
//! with the combinatorial coefficient
//! `F = min_{0≤m≤n} [x·C(m,ka) + y·C(n−m,kb)]` kept in exact rational
//! arithmetic, evaluated on arbitrary probability tables with uncorrelated
//! quadrature error propagation.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::scenario::{ProjectorString, Rational, Scenario};
use crate::settings::{solve, verify};

/// C(p,q), with the convention C(p,q) = 0 for q > p.
pub fn binomial(p: usize, q: usize) -> i64 {
    if q > p {
        return 0;
    }
    let q = q.min(p - q);
    let mut acc = 1i64;
    for j in 0..q {
        acc = acc * (p - j) as i64 / (j + 1) as i64;
    }
    acc
}

/// `min_{0≤m≤n} [x·C(m,ka) + y·C(n−m,kb)]` over exact rationals. The weights
/// are unconstrained here; [`f_coefficient`] applies it to a validated
/// scenario.
pub fn f_weighted(n: usize, ka: usize, kb: usize, x: Rational, y: Rational) -> Rational {
    (0..=n)
        .map(|m| {
            x * Rational::from_integer(binomial(m, ka))
                + y * Rational::from_integer(binomial(n - m, kb))
        })
        .min()
        .expect("0..=n is never empty")
}

/// The exact F coefficient of a scenario's inequality.
pub fn f_coefficient(s: &Scenario) -> Rational {
    f_weighted(s.qubits(), s.alpha_size(), s.beta_size(), s.x(), s.y())
}

/// A probability value with its standard deviation and, when estimated from
/// detection events, the originating counts `(k, N)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbabilityEstimate {
    pub value: f64,
    pub sigma: f64,
    pub counts: Option<(u64, u64)>,
}

impl ProbabilityEstimate {
    /// A theory value carrying no statistical uncertainty.
    pub fn exact(value: f64) -> Self {
        ProbabilityEstimate {
            value,
            sigma: 0.0,
            counts: None,
        }
    }

    pub fn with_sigma(value: f64, sigma: f64) -> Self {
        ProbabilityEstimate {
            value,
            sigma,
            counts: None,
        }
    }

    /// Estimate `k/N` with the binomial-propagation deviation
    /// `sqrt(k·(N−k)/N³)`.
    pub fn from_counts(k: u64, n: u64) -> Self {
        let value = k as f64 / n as f64;
        let sigma = ((k as f64 * (n - k) as f64) / (n as f64).powi(3)).sqrt();
        ProbabilityEstimate {
            value,
            sigma,
            counts: Some((k, n)),
        }
    }

    /// Degenerate zero-count estimates carry sigma 0 and are flagged so
    /// reports can surface them.
    pub fn is_zero_count(&self) -> bool {
        matches!(self.counts, Some((0, _)))
    }
}

/// Map from projector string to probability estimate; must cover the success
/// string and every constraint string of its scenario before evaluation.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ProbabilityTable {
    entries: BTreeMap<ProjectorString, ProbabilityEstimate>,
}

impl ProbabilityTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, string: ProjectorString, estimate: ProbabilityEstimate) {
        self.entries.insert(string, estimate);
    }

    pub fn get(&self, string: &ProjectorString) -> Option<&ProbabilityEstimate> {
        self.entries.get(string)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&ProjectorString, &ProbabilityEstimate)> {
        self.entries.iter()
    }
}

/// An evaluated inequality value with its propagated deviation and the exact
/// F coefficient it was computed with.
#[derive(Debug, Clone, PartialEq)]
pub struct IValue {
    pub value: f64,
    pub sigma: f64,
    pub f: Rational,
}

impl IValue {
    /// How many standard deviations the value sits above zero
    /// (infinite for sigma = 0).
    pub fn sigmas_above_zero(&self) -> f64 {
        if self.sigma == 0.0 {
            if self.value > 0.0 {
                f64::INFINITY
            } else if self.value < 0.0 {
                f64::NEG_INFINITY
            } else {
                0.0
            }
        } else {
            self.value / self.sigma
        }
    }
}

fn rational_to_f64(r: Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Evaluates `I = F·p_succ − x·Σ_α p_α − y·Σ_β p_β` on a probability table,
/// with the deviation by uncorrelated quadrature
/// `sqrt(F²σ²_succ + x²Σσ²_α + y²Σσ²_β)`.
pub fn evaluate(s: &Scenario, table: &ProbabilityTable) -> Result<IValue> {
    let mut missing = Vec::new();
    let mut lookup = |string: &ProjectorString| -> ProbabilityEstimate {
        match table.get(string) {
            Some(e) => *e,
            None => {
                missing.push(string.ascii());
                ProbabilityEstimate::exact(0.0)
            }
        }
    };

    let succ = lookup(&s.success_string());
    let alphas: Vec<ProbabilityEstimate> =
        s.alpha_strings().iter().map(&mut lookup).collect();
    let betas: Vec<ProbabilityEstimate> =
        s.beta_strings().iter().map(&mut lookup).collect();
    if !missing.is_empty() {
        return Err(Error::IncompleteTable { missing });
    }

    let f = f_coefficient(s);
    let (ff, xf, yf) = (rational_to_f64(f), rational_to_f64(s.x()), rational_to_f64(s.y()));
    let value = ff * succ.value
        - xf * alphas.iter().map(|e| e.value).sum::<f64>()
        - yf * betas.iter().map(|e| e.value).sum::<f64>();
    let variance = (ff * succ.sigma).powi(2)
        + xf * xf * alphas.iter().map(|e| e.sigma * e.sigma).sum::<f64>()
        + yf * yf * betas.iter().map(|e| e.sigma * e.sigma).sum::<f64>();
    Ok(IValue {
        value,
        sigma: variance.sqrt(),
        f,
    })
}

/// The theoretical probability table of a scenario: every paradox term
/// evaluated on the GHZ state under the solved settings.
pub fn theory_table(s: &Scenario) -> Result<ProbabilityTable> {
    let report = verify(s, &solve(s)?)?;
    let mut table = ProbabilityTable::new();
    for (string, p) in report.constraints {
        table.insert(string, ProbabilityEstimate::exact(p));
    }
    table.insert(report.success.0, ProbabilityEstimate::exact(report.success.1));
    Ok(table)
}

/// The quantum prediction for the inequality: `F·(1 + cos(n·θa))/2ⁿ`, since
/// every constraint vanishes on the GHZ state; sigma is 0.
pub fn quantum_value(s: &Scenario) -> Result<IValue> {
    evaluate(s, &theory_table(s)?)
}

/// Paper-style rendering `v(σ)` with the deviation in units of the last
/// shown digit, three decimals: e.g. `0.150(27)`, or bare `0.250` for exact
/// values.
pub fn format_with_deviation(value: f64, sigma: f64) -> String {
    if sigma == 0.0 {
        format!("{value:.3}")
    } else {
        format!("{value:.3}({:.0})", sigma * 1000.0)
    }
}
