//! Exact finite-dimensional quantum state representation: GHZ construction,
//! single-qubit rank-1 projectors, and joint projection probabilities for
//! pure and white-noise-mixed states.
//!
//! Conventions: basis index bit 0 ↔ |H⟩, bit 1 ↔ |V⟩; qubit 1 occupies the
//! most significant bit position of the amplitude index.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Dense amplitude storage cap; the paradox scenarios of interest have n ≤ 6.
pub const MAX_QUBITS: usize = 20;

/// Tolerance on normalization checks at construction.
pub const NORM_TOL: f64 = 1e-12;

/// Normalizes an angle into (−π, π].
pub fn normalize_phase(phi: f64) -> f64 {
    let tau = std::f64::consts::TAU;
    let r = phi.rem_euclid(tau);
    if r > std::f64::consts::PI {
        r - tau
    } else {
        r
    }
}

/// An n-qubit pure state as 2^n complex amplitudes.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// Builds a state from amplitudes, checking the length and the
    /// normalization invariant (squared magnitudes sum to 1 within 1e-12).
    pub fn new(n: usize, amps: Vec<Complex64>) -> Result<Self> {
        if n == 0 || n > MAX_QUBITS {
            return Err(Error::SizeCap {
                what: "state vector",
                n,
                cap: MAX_QUBITS,
            });
        }
        if amps.len() != 1 << n {
            return Err(Error::DimensionMismatch {
                expected: 1 << n,
                got: amps.len(),
            });
        }
        let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized {
                norm,
                tol: NORM_TOL,
            });
        }
        Ok(StateVector { n, amps })
    }

    pub fn qubits(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amplitude(&self, index: usize) -> Complex64 {
        self.amps[index]
    }

    /// ⟨self|other⟩.
    pub fn overlap(&self, other: &StateVector) -> Result<Complex64> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: other.n,
            });
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }
}

/// The n-qubit GHZ state (|H…H⟩ + |V…V⟩)/√2.
pub fn ghz(n: usize) -> Result<StateVector> {
    if n == 0 || n > MAX_QUBITS {
        return Err(Error::SizeCap {
            what: "GHZ state",
            n,
            cap: MAX_QUBITS,
        });
    }
    let dim = 1usize << n;
    let mut amps = vec![Complex64::new(0.0, 0.0); dim];
    let w = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    amps[0] = w;
    amps[dim - 1] = w;
    StateVector::new(n, amps)
}

/// Rank-1 projector onto `ampH|H⟩ + ampV·e^{iφ}|V⟩`, stored in canonical
/// form: both amplitudes non-negative, the relative phase carried entirely
/// in `phase ∈ (−π, π]`, and phase fixed to 0 when either amplitude vanishes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitProjector {
    amp_h: f64,
    amp_v: f64,
    phase: f64,
}

impl QubitProjector {
    pub fn new(amp_h: f64, amp_v: f64, phase: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&amp_h) {
            return Err(Error::AmplitudeOutOfRange { value: amp_h });
        }
        if !(0.0..=1.0).contains(&amp_v) {
            return Err(Error::AmplitudeOutOfRange { value: amp_v });
        }
        let norm = amp_h * amp_h + amp_v * amp_v;
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized {
                norm,
                tol: NORM_TOL,
            });
        }
        let phase = if amp_h == 0.0 || amp_v == 0.0 {
            0.0
        } else {
            normalize_phase(phase)
        };
        Ok(QubitProjector { amp_h, amp_v, phase })
    }

    /// Equatorial projector onto (|H⟩ + e^{iφ}|V⟩)/√2.
    pub fn equatorial(phase: f64) -> Self {
        let w = std::f64::consts::FRAC_1_SQRT_2;
        QubitProjector {
            amp_h: w,
            amp_v: w,
            phase: normalize_phase(phase),
        }
    }

    /// Projector onto |H⟩.
    pub fn horizontal() -> Self {
        QubitProjector {
            amp_h: 1.0,
            amp_v: 0.0,
            phase: 0.0,
        }
    }

    /// Projector onto |V⟩.
    pub fn vertical() -> Self {
        QubitProjector {
            amp_h: 0.0,
            amp_v: 1.0,
            phase: 0.0,
        }
    }

    /// Canonicalizes an arbitrary non-zero pair of complex amplitudes:
    /// the global phase is dropped, magnitudes are normalized.
    pub fn from_amplitudes(c_h: Complex64, c_v: Complex64) -> Result<Self> {
        let norm = (c_h.norm_sqr() + c_v.norm_sqr()).sqrt();
        if norm == 0.0 {
            return Err(Error::ZeroVector);
        }
        let amp_h = c_h.norm() / norm;
        let amp_v = c_v.norm() / norm;
        let phase = if amp_h == 0.0 || amp_v == 0.0 {
            0.0
        } else {
            normalize_phase(c_v.arg() - c_h.arg())
        };
        Ok(QubitProjector { amp_h, amp_v, phase })
    }

    pub fn amp_h(&self) -> f64 {
        self.amp_h
    }

    pub fn amp_v(&self) -> f64 {
        self.amp_v
    }

    pub fn phase(&self) -> f64 {
        self.phase
    }

    pub fn is_equatorial(&self) -> bool {
        let w = std::f64::consts::FRAC_1_SQRT_2;
        (self.amp_h - w).abs() <= NORM_TOL && (self.amp_v - w).abs() <= NORM_TOL
    }

    /// The defining vector's component on basis bit `b` (0 = H, 1 = V).
    pub fn component(&self, bit: u8) -> Complex64 {
        if bit == 0 {
            Complex64::new(self.amp_h, 0.0)
        } else {
            Complex64::from_polar(self.amp_v, self.phase)
        }
    }

    /// ⟨self|other⟩ between the defining vectors.
    pub fn inner(&self, other: &QubitProjector) -> Complex64 {
        self.component(0).conj() * other.component(0)
            + self.component(1).conj() * other.component(1)
    }
}

/// The projector onto the orthogonal complement: `ampV|H⟩ − ampH·e^{iφ}|V⟩`,
/// renormalized into canonical form. Applying it twice recovers the original
/// projector up to the global phase of the defining vector.
pub fn orthogonal(p: &QubitProjector) -> QubitProjector {
    let amp_h = p.amp_v;
    let amp_v = p.amp_h;
    let phase = if amp_h == 0.0 || amp_v == 0.0 {
        0.0
    } else {
        normalize_phase(p.phase + std::f64::consts::PI)
    };
    QubitProjector { amp_h, amp_v, phase }
}

/// |⟨v₁ ⊗ ⋯ ⊗ vₙ | ψ⟩|²: the probability that every per-qubit projection
/// succeeds simultaneously.
pub fn joint_probability(state: &StateVector, projectors: &[QubitProjector]) -> Result<f64> {
    if projectors.len() != state.n {
        return Err(Error::DimensionMismatch {
            expected: state.n,
            got: projectors.len(),
        });
    }
    // Contract one qubit at a time starting from the least significant
    // position (qubit n), halving the vector each step.
    let mut cur = state.amps.clone();
    for p in projectors.iter().rev() {
        let ch = p.component(0).conj();
        let cv = p.component(1).conj();
        cur = cur
            .chunks_exact(2)
            .map(|pair| ch * pair[0] + cv * pair[1])
            .collect();
    }
    Ok(cur[0].norm_sqr())
}

/// White-noise GHZ mixture `V·|Gₙ⟩⟨Gₙ| + (1−V)·𝟙/2ⁿ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoisyGhz {
    n: usize,
    visibility: f64,
}

impl NoisyGhz {
    pub fn new(n: usize, visibility: f64) -> Result<Self> {
        if n == 0 || n > MAX_QUBITS {
            return Err(Error::SizeCap {
                what: "noisy GHZ state",
                n,
                cap: MAX_QUBITS,
            });
        }
        if !(0.0..=1.0).contains(&visibility) {
            return Err(Error::AmplitudeOutOfRange { value: visibility });
        }
        Ok(NoisyGhz { n, visibility })
    }

    pub fn qubits(&self) -> usize {
        self.n
    }

    pub fn visibility(&self) -> f64 {
        self.visibility
    }
}

/// Joint projection probability on the white-noise mixture. For a string of
/// rank-1 projectors the identity term contributes exactly 1/2ⁿ, so the value
/// is `V·p_GHZ + (1−V)/2ⁿ`.
pub fn noisy_joint_probability(rho: &NoisyGhz, projectors: &[QubitProjector]) -> Result<f64> {
    let pure = joint_probability(&ghz(rho.n)?, projectors)?;
    let mixed = 1.0 / (1u64 << rho.n) as f64;
    Ok(rho.visibility * pure + (1.0 - rho.visibility) * mixed)
}

/// Closed form for the GHZ joint probability when every projector is
/// equatorial: `(1 + cos Σφ)/2ⁿ`. Serves as an independent oracle against
/// [`joint_probability`].
pub fn equatorial_closed_form(phases: &[f64]) -> f64 {
    let sum: f64 = phases.iter().sum();
    (1.0 + sum.cos()) / (1u64 << phases.len()) as f64
}
