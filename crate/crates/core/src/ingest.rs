//! Experimental data pipeline: coincidence-count files, probability estimates
//! with binomial counting uncertainties, paradox evaluation on data, and the
//! GHZ witness/fidelity.
//!
//! Counts file schema (JSON, UTF-8):
//!
//! ```json
//! { "n": 3,
//!   "settings": [
//!     { "label": "abb",
//!       "bases": [ {"type": "equatorial", "phase_rad": 0.0},
//!                  {"type": "equatorial", "phase_rad": 1.5707963267948966},
//!                  {"type": "equatorial", "phase_rad": 1.5707963267948966} ],
//!       "counts": { "111": 12, "101": 30 } } ] }
//! ```
//!
//! Pattern bit semantics: `1` = transmitted/unbarred port, `0` =
//! reflected/barred port, qubit 1 leftmost. In the computational basis
//! `1` = H and `0` = V. Patterns absent from a counts map are zero.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::inequality::{evaluate, IValue, ProbabilityEstimate, ProbabilityTable};
use crate::qstate::{
    ghz, joint_probability, noisy_joint_probability, normalize_phase, orthogonal, NoisyGhz,
    QubitProjector, MAX_QUBITS,
};
use crate::scenario::{ProjectorString, Scenario, Symbol};
use crate::settings::{solve, MeasurementSettings};

/// Phase agreement tolerance when matching a recorded basis to a requested one.
const PHASE_MATCH_TOL: f64 = 1e-9;

/// One per-qubit analyzer basis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum BasisSpec {
    /// The H/V basis (pattern bit 1 = H).
    Computational,
    /// Projection onto (|H⟩ ± e^{iφ}|V⟩)/√2 (pattern bit 1 = the `+` port).
    Equatorial { phase_rad: f64 },
}

impl BasisSpec {
    fn matches(&self, other: &BasisSpec) -> bool {
        match (self, other) {
            (BasisSpec::Computational, BasisSpec::Computational) => true,
            (
                BasisSpec::Equatorial { phase_rad: a },
                BasisSpec::Equatorial { phase_rad: b },
            ) => normalize_phase(a - b).abs() <= PHASE_MATCH_TOL,
            _ => false,
        }
    }

    fn describe(&self) -> String {
        match self {
            BasisSpec::Computational => "H/V".to_string(),
            BasisSpec::Equatorial { phase_rad } => format!("eq({phase_rad:.6})"),
        }
    }
}

/// One measurement setting: per-qubit bases and the recorded coincidence
/// pattern counts.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SettingRecord {
    pub label: String,
    pub bases: Vec<BasisSpec>,
    pub counts: BTreeMap<String, u64>,
}

impl SettingRecord {
    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn count(&self, pattern: &str) -> u64 {
        self.counts.get(pattern).copied().unwrap_or(0)
    }
}

/// A validated coincidence-count dataset.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CountsDataset {
    pub n: usize,
    pub settings: Vec<SettingRecord>,
}

#[derive(Deserialize)]
struct RawDocument {
    n: i64,
    settings: Vec<RawSetting>,
}

#[derive(Deserialize)]
struct RawSetting {
    label: String,
    bases: Vec<BasisSpec>,
    counts: BTreeMap<String, i64>,
}

/// Parses and validates a counts document.
pub fn parse_counts(text: &str) -> Result<CountsDataset> {
    let raw: RawDocument = serde_json::from_str(text)?;
    if raw.n < 1 || raw.n as usize > MAX_QUBITS {
        return Err(Error::MalformedCounts {
            path: "n".into(),
            reason: format!("qubit count {} outside 1..={MAX_QUBITS}", raw.n),
        });
    }
    let n = raw.n as usize;
    let mut settings = Vec::with_capacity(raw.settings.len());
    for (i, setting) in raw.settings.into_iter().enumerate() {
        let at = |field: &str| format!("settings[{i}].{field}");
        if setting.bases.len() != n {
            return Err(Error::MalformedCounts {
                path: at("bases"),
                reason: format!("expected {n} bases, got {}", setting.bases.len()),
            });
        }
        let mut counts = BTreeMap::new();
        for (pattern, count) in setting.counts {
            if pattern.len() != n || !pattern.bytes().all(|b| b == b'0' || b == b'1') {
                return Err(Error::MalformedCounts {
                    path: format!("settings[{i}].counts[{pattern:?}]"),
                    reason: format!("pattern must be a length-{n} binary string"),
                });
            }
            if count < 0 {
                return Err(Error::MalformedCounts {
                    path: format!("settings[{i}].counts[{pattern:?}]"),
                    reason: format!("negative count {count}"),
                });
            }
            counts.insert(pattern, count as u64);
        }
        let record = SettingRecord {
            label: setting.label,
            bases: setting.bases,
            counts,
        };
        if record.total() == 0 {
            return Err(Error::MalformedCounts {
                path: at("counts"),
                reason: "setting has no recorded events".into(),
            });
        }
        settings.push(record);
    }
    Ok(CountsDataset { n, settings })
}

impl CountsDataset {
    pub fn to_json_string(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// First setting whose per-qubit bases all match the required list.
    fn find_setting(&self, required: &[BasisSpec]) -> Result<&SettingRecord> {
        self.settings
            .iter()
            .find(|s| {
                s.bases.len() == required.len()
                    && s.bases.iter().zip(required).all(|(a, b)| a.matches(b))
            })
            .ok_or_else(|| Error::MissingSetting {
                required: required
                    .iter()
                    .map(BasisSpec::describe)
                    .collect::<Vec<_>>()
                    .join(" "),
            })
    }
}

/// The per-qubit bases a projector string is measured in: the unbarred basis
/// of each symbol under the given settings.
pub fn required_bases(string: &ProjectorString, ms: &MeasurementSettings) -> Vec<BasisSpec> {
    string
        .symbols()
        .iter()
        .map(|sym| match sym.unbarred() {
            Symbol::A => BasisSpec::Equatorial { phase_rad: ms.theta_a },
            _ => BasisSpec::Equatorial { phase_rad: ms.theta_b },
        })
        .collect()
}

/// Estimates one projector-string probability from the dataset: the setting
/// matching the string's unbarred bases is located and `k/N` is taken over
/// the barring-derived outcome pattern.
pub fn estimate(
    dataset: &CountsDataset,
    string: &ProjectorString,
    ms: &MeasurementSettings,
) -> Result<ProbabilityEstimate> {
    if string.len() != dataset.n {
        return Err(Error::DimensionMismatch {
            expected: dataset.n,
            got: string.len(),
        });
    }
    let setting = dataset.find_setting(&required_bases(string, ms))?;
    let k = setting.count(&string.outcome_pattern());
    Ok(ProbabilityEstimate::from_counts(k, setting.total()))
}

/// Full paradox evaluation of a dataset against a scenario.
#[derive(Debug, Clone)]
pub struct HardyReport {
    pub scenario: Scenario,
    pub settings: MeasurementSettings,
    /// Constraint strings first, success string last.
    pub estimates: Vec<(ProjectorString, ProbabilityEstimate)>,
    pub ivalue: IValue,
    /// `value/sigma`: how many deviations the inequality sits above zero.
    pub sigmas_above_zero: f64,
    pub violated: bool,
}

pub fn hardy_report(dataset: &CountsDataset, s: &Scenario) -> Result<HardyReport> {
    if dataset.n != s.qubits() {
        return Err(Error::DimensionMismatch {
            expected: s.qubits(),
            got: dataset.n,
        });
    }
    let ms = solve(s)?;
    let mut table = ProbabilityTable::new();
    let mut estimates = Vec::new();
    let mut strings = s.constraint_strings();
    strings.push(s.success_string());
    for string in strings {
        let est = estimate(dataset, &string, &ms)?;
        table.insert(string.clone(), est);
        estimates.push((string, est));
    }
    let ivalue = evaluate(s, &table)?;
    Ok(HardyReport {
        scenario: s.clone(),
        settings: ms,
        estimates,
        sigmas_above_zero: ivalue.sigmas_above_zero(),
        violated: ivalue.value > 0.0,
        ivalue,
    })
}

/// GHZ witness measurement: `W = 1/2 − ⟨G|ρ|G⟩` where the overlap combines
/// the H/V population with the `n` equatorial parity settings at φ = kπ/n.
#[derive(Debug, Clone, PartialEq)]
pub struct WitnessResult {
    pub qubits: usize,
    /// Population `p(H…H) + p(V…V)` with its deviation.
    pub population: (f64, f64),
    /// Parity expectations `⟨M_k⟩` with deviations, k = 0..n−1.
    pub m_expectations: Vec<(f64, f64)>,
    pub ghz_overlap: f64,
    pub ghz_overlap_sigma: f64,
    pub w_value: f64,
    pub w_sigma: f64,
}

impl WitnessResult {
    /// The GHZ fidelity, exactly `1/2 − W`.
    pub fn fidelity(&self) -> f64 {
        0.5 - self.w_value
    }

    pub fn fidelity_sigma(&self) -> f64 {
        self.w_sigma
    }
}

/// Parity sign of a pattern: each reflected (0) port contributes −1.
fn pattern_sign(pattern: &str) -> f64 {
    let zeros = pattern.bytes().filter(|&b| b == b'0').count();
    if zeros % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

pub fn witness(dataset: &CountsDataset) -> Result<WitnessResult> {
    let n = dataset.n;

    let computational = dataset.find_setting(&vec![BasisSpec::Computational; n])?;
    let total = computational.total();
    let p_h = ProbabilityEstimate::from_counts(computational.count(&"1".repeat(n)), total);
    let p_v = ProbabilityEstimate::from_counts(computational.count(&"0".repeat(n)), total);
    let population = p_h.value + p_v.value;
    let population_sigma = (p_h.sigma * p_h.sigma + p_v.sigma * p_v.sigma).sqrt();

    let mut m_expectations = Vec::with_capacity(n);
    for k in 0..n {
        let phase = normalize_phase(k as f64 * PI / n as f64);
        let setting =
            dataset.find_setting(&vec![BasisSpec::Equatorial { phase_rad: phase }; n])?;
        let total = setting.total();
        let mut expectation = 0.0;
        let mut variance = 0.0;
        for (pattern, &count) in &setting.counts {
            let est = ProbabilityEstimate::from_counts(count, total);
            expectation += pattern_sign(pattern) * est.value;
            variance += est.sigma * est.sigma;
        }
        m_expectations.push((expectation, variance.sqrt()));
    }

    let alternating: f64 = m_expectations
        .iter()
        .enumerate()
        .map(|(k, (e, _))| if k % 2 == 0 { *e } else { -*e })
        .sum();
    let ghz_overlap = 0.5 * population + alternating / (2.0 * n as f64);
    let m_variance: f64 = m_expectations.iter().map(|(_, s)| s * s).sum();
    let ghz_overlap_sigma = (0.25 * population_sigma * population_sigma
        + m_variance / (4.0 * (n * n) as f64))
        .sqrt();

    Ok(WitnessResult {
        qubits: n,
        population: (population, population_sigma),
        m_expectations,
        ghz_overlap,
        ghz_overlap_sigma,
        w_value: 0.5 - ghz_overlap,
        w_sigma: ghz_overlap_sigma,
    })
}

// ---------------------------------------------------------------------------
// Synthetic dataset generation
// ---------------------------------------------------------------------------

/// The distinct measurement settings a scenario needs: the unbarred basis
/// combination of every constraint string, then of the success string, each
/// listed once in first-appearance order.
pub fn scenario_settings(s: &Scenario, ms: &MeasurementSettings) -> Vec<(String, Vec<BasisSpec>)> {
    let mut seen = Vec::new();
    let mut out = Vec::new();
    let mut strings = s.constraint_strings();
    strings.push(s.success_string());
    for string in strings {
        let label: String = string
            .symbols()
            .iter()
            .map(|sym| match sym.unbarred() {
                Symbol::A => 'a',
                _ => 'b',
            })
            .collect();
        if !seen.contains(&label) {
            seen.push(label.clone());
            out.push((label, required_bases(&string, ms)));
        }
    }
    out
}

/// Per-pattern outcome probabilities of one setting on the white-noise GHZ
/// state (visibility 1 = pure GHZ).
fn pattern_probabilities(
    n: usize,
    bases: &[BasisSpec],
    visibility: f64,
) -> Result<Vec<(String, f64)>> {
    let rho = NoisyGhz::new(n, visibility)?;
    let pure = ghz(n)?;
    let mut out = Vec::with_capacity(1 << n);
    for bits in 0..(1usize << n) {
        let pattern: String = (0..n)
            .map(|k| if bits >> (n - 1 - k) & 1 == 1 { '1' } else { '0' })
            .collect();
        let projectors: Vec<QubitProjector> = bases
            .iter()
            .enumerate()
            .map(|(k, basis)| {
                let base = match basis {
                    BasisSpec::Computational => QubitProjector::horizontal(),
                    BasisSpec::Equatorial { phase_rad } => QubitProjector::equatorial(*phase_rad),
                };
                if bits >> (n - 1 - k) & 1 == 1 {
                    base
                } else {
                    orthogonal(&base)
                }
            })
            .collect();
        let p = if visibility == 1.0 {
            joint_probability(&pure, &projectors)?
        } else {
            noisy_joint_probability(&rho, &projectors)?
        };
        out.push((pattern, p));
    }
    Ok(out)
}

fn sample_multinomial(probs: &[f64], shots: u64, rng: &mut ChaCha8Rng) -> Vec<u64> {
    let mut counts = vec![0u64; probs.len()];
    for _ in 0..shots {
        let u: f64 = rng.random();
        let mut acc = 0.0;
        let mut idx = probs.len() - 1;
        for (i, &p) in probs.iter().enumerate() {
            acc += p;
            if u < acc {
                idx = i;
                break;
            }
        }
        counts[idx] += 1;
    }
    counts
}

/// Samples a synthetic dataset from the GHZ theory predictions of a scenario,
/// one multinomial draw of `shots` events per required setting.
pub fn synthesize_hardy(s: &Scenario, shots: u64, seed: u64) -> Result<CountsDataset> {
    let ms = solve(s)?;
    let n = s.qubits();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut settings = Vec::new();
    for (label, bases) in scenario_settings(s, &ms) {
        let patterns = pattern_probabilities(n, &bases, 1.0)?;
        let probs: Vec<f64> = patterns.iter().map(|(_, p)| *p).collect();
        let sampled = sample_multinomial(&probs, shots, &mut rng);
        let counts: BTreeMap<String, u64> = patterns
            .iter()
            .map(|(pat, _)| pat.clone())
            .zip(sampled)
            .filter(|(_, c)| *c > 0)
            .collect();
        settings.push(SettingRecord { label, bases, counts });
    }
    Ok(CountsDataset { n, settings })
}

/// Deterministic witness dataset from the white-noise state: counts are the
/// exact expected values (shots rounded up to a multiple of 2ⁿ so the ideal
/// probabilities are integral).
pub fn witness_dataset(n: usize, visibility: f64, shots: u64) -> Result<CountsDataset> {
    let dim = 1u64 << n;
    let shots = shots.div_ceil(dim) * dim;
    let mut settings = Vec::new();

    let mut layouts: Vec<(String, Vec<BasisSpec>)> =
        vec![("population".into(), vec![BasisSpec::Computational; n])];
    for k in 0..n {
        let phase = normalize_phase(k as f64 * PI / n as f64);
        layouts.push((
            format!("parity-{k}"),
            vec![BasisSpec::Equatorial { phase_rad: phase }; n],
        ));
    }

    for (label, bases) in layouts {
        let mut counts = BTreeMap::new();
        let mut assigned = 0u64;
        let patterns = pattern_probabilities(n, &bases, visibility)?;
        for (pattern, p) in &patterns {
            let c = (p * shots as f64).round() as u64;
            if c > 0 {
                counts.insert(pattern.clone(), c);
                assigned += c;
            }
        }
        // Rounding drift lands on the most likely pattern.
        if assigned != shots {
            let top = patterns
                .iter()
                .max_by(|a, b| a.1.total_cmp(&b.1))
                .expect("non-empty")
                .0
                .clone();
            let entry = counts.entry(top).or_insert(0);
            *entry = entry.saturating_add(shots).saturating_sub(assigned);
        }
        settings.push(SettingRecord { label, bases, counts });
    }
    Ok(CountsDataset { n, settings })
}
