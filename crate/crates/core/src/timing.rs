//! Pulse-level execution time estimation.
//!
//! Every gate is modeled as a fixed mix of three pulse primitives: frame
//! changes (fc), Gaussian derivatives (gd), and Gaussian flattops (gf).
//! The estimate is a serial sum over the gate list; there is no parallel
//! scheduling. The default durations are configurable placeholders, not
//! calibrated hardware numbers: frame changes are free (software-only on
//! many stacks) and both pulse shapes take 160 ns.

use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};

/// Pulse counts (fc, gd, gf) making up one gate.
pub type PulseCounts = (u32, u32, u32);

/// Durations of the pulse primitives and the coherence budget, all in ns.
#[derive(Debug, Clone, PartialEq)]
pub struct TimingModel {
    pub t_fc: f64,
    pub t_gd: f64,
    pub t_gf: f64,
    pub u3_pulses: PulseCounts,
    pub cx_pulses: PulseCounts,
    pub t_coherence: f64,
}

impl Default for TimingModel {
    fn default() -> Self {
        TimingModel {
            t_fc: 0.0,
            t_gd: 160.0,
            t_gf: 160.0,
            u3_pulses: (2, 2, 0),
            cx_pulses: (1, 2, 2),
            t_coherence: 100_000.0,
        }
    }
}

impl TimingModel {
    /// Parses `key = value` lines; `#` starts a comment and blank lines are
    /// skipped. Unknown keys are errors. Pulse counts are comma-separated
    /// triples, e.g. `cx_pulses = 1, 2, 2`.
    pub fn from_config(text: &str) -> Result<Self> {
        let mut model = TimingModel::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = match raw.find('#') {
                Some(i) => &raw[..i],
                None => raw,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| Error::TimingConfig(
                format!("line {}: expected key = value, got {line:?}", lineno + 1),
            ))?;
            let key = key.trim();
            let value = value.trim();
            let duration = |v: &str| -> Result<f64> {
                let x: f64 = v.parse().map_err(|_| {
                    Error::TimingConfig(format!(
                        "line {}: {v:?} is not a number",
                        lineno + 1
                    ))
                })?;
                if !x.is_finite() || x < 0.0 {
                    return Err(Error::TimingConfig(format!(
                        "line {}: duration must be finite and non-negative, got {v}",
                        lineno + 1
                    )));
                }
                Ok(x)
            };
            let counts = |v: &str| -> Result<PulseCounts> {
                let parts: Vec<&str> = v.split(',').map(str::trim).collect();
                if parts.len() != 3 {
                    return Err(Error::TimingConfig(format!(
                        "line {}: pulse counts need three comma-separated values",
                        lineno + 1
                    )));
                }
                let mut nums = [0u32; 3];
                for (slot, part) in nums.iter_mut().zip(&parts) {
                    *slot = part.parse().map_err(|_| {
                        Error::TimingConfig(format!(
                            "line {}: {part:?} is not a count",
                            lineno + 1
                        ))
                    })?;
                }
                Ok((nums[0], nums[1], nums[2]))
            };
            match key {
                "t_fc" => model.t_fc = duration(value)?,
                "t_gd" => model.t_gd = duration(value)?,
                "t_gf" => model.t_gf = duration(value)?,
                "t_coherence" => model.t_coherence = duration(value)?,
                "u3_pulses" => model.u3_pulses = counts(value)?,
                "cx_pulses" => model.cx_pulses = counts(value)?,
                other => {
                    return Err(Error::TimingConfig(format!(
                        "line {}: unknown key {other:?}",
                        lineno + 1
                    )))
                }
            }
        }
        if model.t_coherence <= 0.0 {
            return Err(Error::TimingConfig(
                "t_coherence must be positive".into(),
            ));
        }
        Ok(model)
    }

    fn pulse_time(&self, counts: PulseCounts) -> f64 {
        counts.0 as f64 * self.t_fc + counts.1 as f64 * self.t_gd + counts.2 as f64 * self.t_gf
    }

    /// Duration of a single gate; barriers and measurements are free.
    pub fn gate_duration(&self, gate: &Gate) -> f64 {
        match gate {
            Gate::U3 { .. } => self.pulse_time(self.u3_pulses),
            Gate::Cx { .. } => self.pulse_time(self.cx_pulses),
            Gate::Measure { .. } | Gate::Barrier { .. } => 0.0,
        }
    }
}

/// Serial-sum execution time of the circuit in ns.
pub fn estimate_time(circuit: &Circuit, model: &TimingModel) -> f64 {
    circuit
        .gates
        .iter()
        .map(|g| model.gate_duration(g))
        .sum()
}

/// Outcome of comparing an estimate against the coherence budget.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Coherence {
    Pass,
    /// Estimated time exceeds the budget by this ratio (> 1).
    Warn(f64),
}

pub fn check_coherence(t_est: f64, model: &TimingModel) -> Coherence {
    if t_est > model.t_coherence {
        Coherence::Warn(t_est / model.t_coherence)
    } else {
        Coherence::Pass
    }
}
