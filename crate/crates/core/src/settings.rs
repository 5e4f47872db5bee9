//! Measurement-direction solver: turns a scenario into concrete equatorial
//! settings that zero every constraint string on the GHZ state, realizes
//! symbolic projector strings as projector lists, and converts phases to
//! wave-plate angles.
//!
//! The direction constraints couple the two phases through
//!
//! ```text
//! (n−ka)·θa + ka·θb           = (2·m1 + 1)·π
//! (n−kb)·θa + kb·θb + kb·π    = (2·m2 + 1)·π
//! ```
//!
//! plus two log-linear amplitude relations that force all four amplitudes to
//! 1/√2 whenever the phase system is solvable. For `ka ≠ kb` the phase system
//! is nonsingular and the branch `m1 = m2 = 0` is used. For `ka = kb = k` it
//! is consistent only for even `k` (with `m2 = m1 + k/2`); the canonical
//! representative `θa = 0`, `θb = π/k` is returned. Equal odd subset sizes
//! admit no symmetric solution.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::qstate::{
    equatorial_closed_form, ghz, joint_probability, normalize_phase, orthogonal, QubitProjector,
};
use crate::scenario::{ProjectorString, Scenario, Symbol};

/// Solved equatorial phases and amplitudes realizing a paradox scenario,
/// together with the integer branch pair the phase relations hold for.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasurementSettings {
    pub theta_a: f64,
    pub theta_b: f64,
    pub a_amp_h: f64,
    pub a_amp_v: f64,
    pub b_amp_h: f64,
    pub b_amp_v: f64,
    pub m1: i64,
    pub m2: i64,
}

impl MeasurementSettings {
    /// The projector a given string symbol realizes under these settings.
    pub fn projector(&self, symbol: Symbol) -> QubitProjector {
        let base = match symbol.unbarred() {
            Symbol::A => QubitProjector::equatorial(self.theta_a),
            _ => QubitProjector::equatorial(self.theta_b),
        };
        if symbol.is_barred() {
            orthogonal(&base)
        } else {
            base
        }
    }

    pub fn is_equatorial(&self) -> bool {
        let w = std::f64::consts::FRAC_1_SQRT_2;
        [self.a_amp_h, self.a_amp_v, self.b_amp_h, self.b_amp_v]
            .iter()
            .all(|&a| (a - w).abs() <= 1e-12)
    }

    /// Residuals of the four direction relations for this scenario.
    pub fn residuals(&self, s: &Scenario) -> [f64; 4] {
        let n = s.qubits() as f64;
        let ka = s.alpha_size() as f64;
        let kb = s.beta_size() as f64;
        let r1 = (n - ka) * self.theta_a + ka * self.theta_b - (2 * self.m1 + 1) as f64 * PI;
        let r2 = (n - kb) * self.theta_a + kb * self.theta_b + kb * PI
            - (2 * self.m2 + 1) as f64 * PI;
        let r3 = self.b_amp_h.powf(ka) * self.a_amp_h.powf(n - ka)
            - self.b_amp_v.powf(ka) * self.a_amp_v.powf(n - ka);
        let r4 = self.b_amp_v.powf(kb) * self.a_amp_h.powf(n - kb)
            - self.b_amp_h.powf(kb) * self.a_amp_v.powf(n - kb);
        [r1, r2, r3, r4]
    }
}

/// Solves the direction constraints for a scenario.
pub fn solve(s: &Scenario) -> Result<MeasurementSettings> {
    let n = s.qubits() as i64;
    let ka = s.alpha_size() as i64;
    let kb = s.beta_size() as i64;

    let (theta_a, theta_b) = if ka != kb {
        // Nonsingular 2x2 system on the m1 = m2 = 0 branch; the determinant
        // is the exact integer n(kb - ka).
        let det = (n * (kb - ka)) as f64;
        let r1 = PI;
        let r2 = (1 - kb) as f64 * PI;
        let ta = (r1 * kb as f64 - r2 * ka as f64) / det;
        let tb = ((n - ka) as f64 * r2 - (n - kb) as f64 * r1) / det;
        (ta, tb)
    } else {
        // Degenerate system: consistent only when the common size is even.
        let k = ka;
        if k % 2 != 0 {
            return Err(Error::NoSymmetricSolution {
                n: s.qubits(),
                ka: s.alpha_size(),
                kb: s.beta_size(),
                detail: format!("2·m1 = 2·m2 − {k} has no integer solution"),
            });
        }
        (0.0, PI / k as f64)
    };

    let theta_a = normalize_phase(theta_a);
    let theta_b = normalize_phase(theta_b);
    // Normalization shifts the phases by multiples of 2π; recover the integer
    // branch the relations now hold for.
    let m1 = (((n - ka) as f64 * theta_a + ka as f64 * theta_b) / PI - 1.0) / 2.0;
    let m2 = (((n - kb) as f64 * theta_a + kb as f64 * theta_b + kb as f64 * PI) / PI - 1.0) / 2.0;

    let w = std::f64::consts::FRAC_1_SQRT_2;
    let settings = MeasurementSettings {
        theta_a,
        theta_b,
        a_amp_h: w,
        a_amp_v: w,
        b_amp_h: w,
        b_amp_v: w,
        m1: m1.round() as i64,
        m2: m2.round() as i64,
    };
    debug_assert!(settings
        .residuals(s)
        .iter()
        .all(|r| r.abs() <= 1e-10));
    Ok(settings)
}

/// Realizes a symbolic projector string as one concrete projector per qubit.
pub fn realize(string: &ProjectorString, ms: &MeasurementSettings) -> Vec<QubitProjector> {
    string.symbols().iter().map(|&sym| ms.projector(sym)).collect()
}

/// Quarter/half-wave plate pair realizing one measurement basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveplatePair {
    pub qwp_deg: f64,
    pub hwp_deg: f64,
}

impl WaveplatePair {
    /// The pair (45°, 22.5° − θ/4) realizing the equatorial basis with
    /// phase θ.
    pub fn equatorial(theta: f64) -> Self {
        WaveplatePair {
            qwp_deg: 45.0,
            hwp_deg: 22.5 - theta.to_degrees() / 4.0,
        }
    }

    /// The pair (0°, 0°) measuring in the computational H/V basis.
    pub fn computational() -> Self {
        WaveplatePair {
            qwp_deg: 0.0,
            hwp_deg: 0.0,
        }
    }
}

/// Wave-plate angles for both bases of a solved setting.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveplateSettings {
    pub basis_a: WaveplatePair,
    pub basis_b: WaveplatePair,
}

/// Converts equatorial settings to wave-plate angles; non-equatorial
/// amplitudes are unsupported.
pub fn waveplates(ms: &MeasurementSettings) -> Result<WaveplateSettings> {
    if !ms.is_equatorial() {
        return Err(Error::NonEquatorial);
    }
    Ok(WaveplateSettings {
        basis_a: WaveplatePair::equatorial(ms.theta_a),
        basis_b: WaveplatePair::equatorial(ms.theta_b),
    })
}

/// GHZ probabilities of every constraint string and of the success string
/// under given settings. A report with a non-vanishing constraint is still
/// returned; callers inspect [`VerificationReport::max_constraint`].
#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub scenario: Scenario,
    pub settings: MeasurementSettings,
    pub constraints: Vec<(ProjectorString, f64)>,
    pub success: (ProjectorString, f64),
    /// Closed-form success value `(1 + cos(n·θa))/2ⁿ`.
    pub closed_form_success: f64,
    pub max_constraint: f64,
}

impl VerificationReport {
    pub fn constraints_vanish(&self, tol: f64) -> bool {
        self.max_constraint <= tol
    }
}

/// Evaluates every paradox term of a scenario on the GHZ state.
pub fn verify(s: &Scenario, ms: &MeasurementSettings) -> Result<VerificationReport> {
    let state = ghz(s.qubits())?;
    let mut constraints = Vec::new();
    let mut max_constraint = 0.0f64;
    for string in s.constraint_strings() {
        let p = joint_probability(&state, &realize(&string, ms))?;
        max_constraint = max_constraint.max(p);
        constraints.push((string, p));
    }
    let success_string = s.success_string();
    let success = joint_probability(&state, &realize(&success_string, ms))?;
    let closed_form_success =
        equatorial_closed_form(&vec![ms.theta_a; s.qubits()]);
    Ok(VerificationReport {
        scenario: s.clone(),
        settings: *ms,
        constraints,
        success: (success_string, success),
        closed_form_success,
        max_constraint,
    })
}

/// Whether the solved settings give the success event probability exactly
/// zero on the GHZ state, despite all constraints vanishing.
///
/// For `ka ≠ kb` the phase relations force
/// `n·θa = π·[kb(2m1+1) − ka(2m2+1−kb)]/(kb−ka)`, and when
/// `ka − kb = gcd(ka, kb)` that quotient is an odd integer for every branch
/// `(m1, m2)`, pinning `cos(n·θa) = −1`. Such scenarios (e.g. `[2;2,1]`,
/// `[3;2,1]`, `[4;3,2]`) admit no GHZ-based quantum-classical conflict under
/// the symmetric equatorial ansatz; the demonstrated families `[n;n,1]` with
/// `n ≥ 3` and `[n;2,2]` are unaffected.
pub fn ghz_success_degenerate(s: &Scenario) -> bool {
    let (ka, kb) = (s.alpha_size(), s.beta_size());
    ka != kb && ka - kb == num_integer::gcd(ka, kb)
}

/// Every valid scenario with `2 ≤ n ≤ max_n`, at unit weights. Exercised by
/// property tests and the exhaustive CLI checks.
pub fn valid_unit_scenarios(max_n: usize) -> Vec<Scenario> {
    let mut out = Vec::new();
    for n in 2..=max_n {
        for ka in 2..=n {
            for kb in 1..=ka {
                if ka + kb <= n + 1 {
                    out.push(Scenario::unit(n, ka, kb).expect("bounds checked"));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn solve_standard_three_qubit() {
        let s = Scenario::unit(3, 3, 1).unwrap();
        let ms = solve(&s).unwrap();
        assert_abs_diff_eq!(ms.theta_a, -PI / 6.0, epsilon = 1e-12);
        assert_abs_diff_eq!(ms.theta_b, PI / 3.0, epsilon = 1e-12);
        assert!(ms.is_equatorial());
        assert_eq!((ms.m1, ms.m2), (0, 0));
    }

    #[test]
    fn solve_optimal_scenarios_are_degenerate_branch() {
        for n in [3usize, 4] {
            let s = Scenario::unit(n, 2, 2).unwrap();
            let ms = solve(&s).unwrap();
            assert_abs_diff_eq!(ms.theta_a, 0.0, epsilon = 1e-12);
            assert_abs_diff_eq!(ms.theta_b, PI / 2.0, epsilon = 1e-12);
            assert_eq!((ms.m1, ms.m2), (0, 1));
        }
    }

    #[test]
    fn solve_standard_four_qubit() {
        let s = Scenario::unit(4, 4, 1).unwrap();
        let ms = solve(&s).unwrap();
        assert_abs_diff_eq!(ms.theta_a, -PI / 12.0, epsilon = 1e-12);
        assert_abs_diff_eq!(ms.theta_b, PI / 4.0, epsilon = 1e-12);
    }

    #[test]
    fn solve_rejects_equal_odd_sizes() {
        let s = Scenario::unit(5, 3, 3).unwrap();
        assert!(matches!(solve(&s), Err(Error::NoSymmetricSolution { .. })));
    }

    #[test]
    fn residuals_vanish_for_all_solvable_scenarios() {
        for s in valid_unit_scenarios(6) {
            match solve(&s) {
                Ok(ms) => {
                    for (i, r) in ms.residuals(&s).iter().enumerate() {
                        assert!(r.abs() <= 1e-10, "{s} residual {i} = {r}");
                    }
                }
                Err(Error::NoSymmetricSolution { .. }) => {
                    assert_eq!(s.alpha_size(), s.beta_size());
                    assert_eq!(s.alpha_size() % 2, 1);
                }
                Err(other) => panic!("{s}: unexpected error {other}"),
            }
        }
    }

    #[test]
    fn realize_all_a_is_equatorial_zero() {
        let s = Scenario::unit(3, 2, 2).unwrap();
        let ms = solve(&s).unwrap();
        for p in realize(&s.success_string(), &ms) {
            assert!(p.is_equatorial());
            assert_abs_diff_eq!(p.phase(), 0.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn realize_barred_orthogonal_to_unbarred() {
        let s = Scenario::unit(3, 2, 2).unwrap();
        let ms = solve(&s).unwrap();
        let b = ms.projector(Symbol::B);
        let bbar = ms.projector(Symbol::BBar);
        assert!(b.inner(&bbar).norm() <= 1e-12);
    }

    #[test]
    fn realize_mixed_string_destructive() {
        // a b b under the two-two settings sums phases to π: GHZ probability 0.
        let s = Scenario::unit(3, 2, 2).unwrap();
        let ms = solve(&s).unwrap();
        let string: ProjectorString = "abb".parse().unwrap();
        let phases: Vec<f64> = realize(&string, &ms).iter().map(|p| p.phase()).collect();
        assert_abs_diff_eq!(phases.iter().sum::<f64>(), PI, epsilon = 1e-12);
        assert_abs_diff_eq!(equatorial_closed_form(&phases), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn waveplates_reference_angles() {
        let expect = [
            ((3, 3, 1), 30.0, 7.5),
            ((3, 2, 2), 22.5, 0.0),
            ((4, 4, 1), 26.25, 11.25),
            ((4, 2, 2), 22.5, 0.0),
        ];
        for ((n, ka, kb), hwp_a, hwp_b) in expect {
            let s = Scenario::unit(n, ka, kb).unwrap();
            let wp = waveplates(&solve(&s).unwrap()).unwrap();
            assert_abs_diff_eq!(wp.basis_a.qwp_deg, 45.0, epsilon = 1e-12);
            assert_abs_diff_eq!(wp.basis_b.qwp_deg, 45.0, epsilon = 1e-12);
            assert_abs_diff_eq!(wp.basis_a.hwp_deg, hwp_a, epsilon = 0.01);
            assert_abs_diff_eq!(wp.basis_b.hwp_deg, hwp_b, epsilon = 0.01);
        }
    }

    #[test]
    fn waveplates_zero_phase_is_22_5() {
        let wp = WaveplatePair::equatorial(0.0);
        assert_abs_diff_eq!(wp.hwp_deg, 22.5, epsilon = 1e-12);
        assert_abs_diff_eq!(wp.qwp_deg, 45.0, epsilon = 1e-12);
    }

    #[test]
    fn waveplates_reject_non_equatorial() {
        let mut ms = solve(&Scenario::unit(3, 2, 2).unwrap()).unwrap();
        ms.a_amp_h = 0.6;
        ms.a_amp_v = 0.8;
        assert!(matches!(waveplates(&ms), Err(Error::NonEquatorial)));
    }

    #[test]
    fn verify_reference_success_probabilities() {
        let cases = [((3, 2, 2), 0.25), ((3, 3, 1), 0.125), ((4, 2, 2), 0.125)];
        for ((n, ka, kb), expect) in cases {
            let s = Scenario::unit(n, ka, kb).unwrap();
            let report = verify(&s, &solve(&s).unwrap()).unwrap();
            assert!(report.constraints_vanish(1e-12), "{s}");
            assert_abs_diff_eq!(report.success.1, expect, epsilon = 1e-12);
            assert_abs_diff_eq!(report.closed_form_success, expect, epsilon = 1e-12);
        }
    }

    #[test]
    fn verify_paradox_exists_for_all_solvable_scenarios() {
        for s in valid_unit_scenarios(6) {
            if ghz_success_degenerate(&s) {
                continue;
            }
            let Ok(ms) = solve(&s) else { continue };
            let report = verify(&s, &ms).unwrap();
            assert!(report.constraints_vanish(1e-10), "{s}");
            assert!(report.success.1 > 1e-6, "{s}: {}", report.success.1);
            assert_abs_diff_eq!(
                report.success.1,
                report.closed_form_success,
                epsilon = 1e-12
            );
        }
    }

    #[test]
    fn degenerate_scenarios_have_vanishing_success() {
        // The constraints still vanish, but n·θa lands on an odd multiple of
        // π for every branch, so the success event also has probability zero
        // and no conflict appears. [2;2,1] is the smallest such case: the
        // original two-party paradox needs partial entanglement.
        let mut seen = 0;
        for s in valid_unit_scenarios(6) {
            if !ghz_success_degenerate(&s) {
                continue;
            }
            seen += 1;
            let ms = solve(&s).unwrap();
            let report = verify(&s, &ms).unwrap();
            assert!(report.constraints_vanish(1e-12), "{s}");
            assert!(report.success.1 <= 1e-30, "{s}: {}", report.success.1);
            assert_abs_diff_eq!(report.closed_form_success, 0.0, epsilon = 1e-15);
        }
        assert!(seen >= 4, "expected several degenerate scenarios, saw {seen}");

        let s = Scenario::unit(2, 2, 1).unwrap();
        assert!(ghz_success_degenerate(&s));
        assert_abs_diff_eq!(solve(&s).unwrap().theta_a, -PI / 2.0, epsilon = 1e-12);
    }
}
