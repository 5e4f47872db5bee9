//! White-noise robustness: the inequality value as a function of visibility
//! and the critical visibility where it crosses zero.
//!
//! Under `V·|G⟩⟨G| + (1−V)·𝟙/2ⁿ` every rank-1 projector string has
//! probability 1/2ⁿ at V = 0, so the inequality value is affine in V:
//! `I(V) = V·I(1) + (1−V)·I(0)` with
//! `I(0) = [F − x·C(n,ka) − y·C(n,kb)]/2ⁿ`.

use crate::error::{Error, Result};
use crate::inequality::{
    binomial, evaluate, f_coefficient, quantum_value, IValue, ProbabilityEstimate,
    ProbabilityTable,
};
use crate::qstate::{noisy_joint_probability, NoisyGhz};
use crate::scenario::{Rational, Scenario};
use crate::settings::{realize, solve};

/// The affine visibility response of a scenario's inequality.
#[derive(Debug, Clone, PartialEq)]
pub struct VisibilityCurve {
    pub scenario: Scenario,
    /// Inequality value on the pure GHZ state (V = 1).
    pub i_at_v1: f64,
    /// Inequality value on the maximally mixed state (V = 0).
    pub i_at_v0: f64,
    /// The visibility where I(V) = 0.
    pub v_crit: f64,
}

impl VisibilityCurve {
    /// I(V) from the affine form.
    pub fn value_at(&self, visibility: f64) -> f64 {
        visibility * self.i_at_v1 + (1.0 - visibility) * self.i_at_v0
    }
}

/// Solves the white-noise threshold for a scenario.
pub fn visibility_threshold(s: &Scenario) -> Result<VisibilityCurve> {
    let i_at_v1 = quantum_value(s)?.value;
    let f = f_coefficient(s);
    let n = s.qubits();
    let weighted = f
        - s.x() * Rational::from_integer(binomial(n, s.alpha_size()))
        - s.y() * Rational::from_integer(binomial(n, s.beta_size()));
    let i_at_v0 = (*weighted.numer() as f64 / *weighted.denom() as f64)
        / (1u64 << n) as f64;
    if i_at_v0 >= 0.0 {
        return Err(Error::NoThreshold { i_at_v0 });
    }
    let v_crit = -i_at_v0 / (i_at_v1 - i_at_v0);
    Ok(VisibilityCurve {
        scenario: s.clone(),
        i_at_v1,
        i_at_v0,
        v_crit,
    })
}

/// The probability table of every paradox term on the white-noise state:
/// the explicit-evaluation oracle against the affine form.
pub fn noisy_table(s: &Scenario, visibility: f64) -> Result<ProbabilityTable> {
    let ms = solve(s)?;
    let rho = NoisyGhz::new(s.qubits(), visibility)?;
    let mut table = ProbabilityTable::new();
    for string in s.constraint_strings() {
        let p = noisy_joint_probability(&rho, &realize(&string, &ms))?;
        table.insert(string, ProbabilityEstimate::exact(p));
    }
    let succ = s.success_string();
    let p = noisy_joint_probability(&rho, &realize(&succ, &ms))?;
    table.insert(succ, ProbabilityEstimate::exact(p));
    Ok(table)
}

/// The inequality evaluated on the explicit white-noise table.
pub fn noisy_ivalue(s: &Scenario, visibility: f64) -> Result<IValue> {
    evaluate(s, &noisy_table(s, visibility)?)
}
