use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CheckKind {
    Positive,
    /// Expected to fail its criterion; the check is OK when it does.
    NegativeControl,
}

/// Where the expected value comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Expected {
    /// A closed form evaluated in floating point.
    ClosedForm,
    /// An independent analytic oracle (hand derivation, symbolic Hessian).
    Oracle,
    /// A statistical criterion on sampled estimates.
    Statistical,
    /// A boundedness or growth criterion with no target value.
    Bound,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Quantity {
    pub name: String,
    pub value: f64,
}

/// Per-radius sup estimates with a least squares fit of ln(value) against
/// ln(radius).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadiusSweep {
    pub radii: Vec<f64>,
    pub values: Vec<f64>,
    pub slope: f64,
    pub r_squared: f64,
}

/// Least squares line through (x, y); returns (slope, intercept, R²).
pub fn linear_fit(x: &[f64], y: &[f64]) -> (f64, f64, f64) {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    let syy: f64 = y.iter().map(|b| (b - my) * (b - my)).sum();
    let slope = sxy / sxx;
    let r2 = if syy == 0.0 { 1.0 } else { sxy * sxy / (sxx * syy) };
    (slope, my - slope * mx, r2)
}

impl RadiusSweep {
    /// R0, R0 ρ, R0 ρ², ... with `levels` entries.
    pub fn geometric(r0: f64, ratio: f64, levels: usize) -> Vec<f64> {
        assert!(levels >= 4 && ratio > 0.0 && ratio < 1.0, "need at least 4 strictly decreasing radii");
        (0..levels).map(|m| r0 * ratio.powi(m as i32)).collect()
    }

    pub fn new(radii: Vec<f64>, values: Vec<f64>) -> Self {
        let lx: Vec<f64> = radii.iter().map(|r| r.ln()).collect();
        let ly: Vec<f64> = values.iter().map(|v| v.abs().max(f64::MIN_POSITIVE).ln()).collect();
        let (slope, _, r_squared) = linear_fit(&lx, &ly);
        RadiusSweep { radii, values, slope, r_squared }
    }

    /// max / min of |values|.
    pub fn spread(&self) -> f64 {
        let a = self.values.iter().map(|v| v.abs());
        a.clone().fold(0.0, f64::max) / a.fold(f64::INFINITY, f64::min)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub id: String,
    pub kind: CheckKind,
    pub description: String,
    pub values: Vec<Quantity>,
    pub expected: Option<f64>,
    pub expected_from: Expected,
    pub tolerance: Option<f64>,
    pub criterion_met: bool,
    pub seed: Option<u64>,
    pub samples: Option<u64>,
    pub sweep: Option<RadiusSweep>,
    pub note: Option<String>,
}

impl CheckReport {
    pub fn new(id: &str, kind: CheckKind, description: &str, expected_from: Expected) -> Self {
        CheckReport {
            id: id.to_string(),
            kind,
            description: description.to_string(),
            values: Vec::new(),
            expected: None,
            expected_from,
            tolerance: None,
            criterion_met: false,
            seed: None,
            samples: None,
            sweep: None,
            note: None,
        }
    }

    pub fn value(mut self, name: &str, value: f64) -> Self {
        self.values.push(Quantity { name: name.to_string(), value });
        self
    }

    pub fn expect(mut self, expected: f64, tolerance: f64) -> Self {
        self.expected = Some(expected);
        self.tolerance = Some(tolerance);
        self
    }

    pub fn seeded(mut self, seed: u64, samples: u64) -> Self {
        self.seed = Some(seed);
        self.samples = Some(samples);
        self
    }

    pub fn with_sweep(mut self, sweep: RadiusSweep) -> Self {
        self.sweep = Some(sweep);
        self
    }

    pub fn note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn met(mut self, met: bool) -> Self {
        self.criterion_met = met;
        self
    }

    /// Sets the criterion from |first value - expected| <= tolerance.
    pub fn met_by_tolerance(mut self) -> Self {
        let v = self.values.first().map(|q| q.value).unwrap_or(f64::NAN);
        self.criterion_met = match (self.expected, self.tolerance) {
            (Some(e), Some(t)) => (v - e).abs() <= t,
            _ => false,
        };
        self
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        self.values.iter().find(|q| q.name == name).map(|q| q.value)
    }

    /// Positive checks must meet their criterion, controls must not.
    pub fn ok(&self) -> bool {
        match self.kind {
            CheckKind::Positive => self.criterion_met,
            CheckKind::NegativeControl => !self.criterion_met,
        }
    }

    /// Report for a check that could not run.
    pub fn errored(id: &str, kind: CheckKind, description: &str, err: &crate::Error) -> Self {
        CheckReport::new(id, kind, description, Expected::Bound).note(format!("error: {err}"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fit_recovers_power_law() {
        let radii = RadiusSweep::geometric(0.1, 0.1, 4);
        let values: Vec<f64> = radii.iter().map(|r| 3.0 * r * r).collect();
        let s = RadiusSweep::new(radii, values);
        assert!((s.slope - 2.0).abs() < 1e-12 && (s.r_squared - 1.0).abs() < 1e-12);
    }

    #[test]
    fn control_semantics() {
        let c = CheckReport::new("x", CheckKind::NegativeControl, "", Expected::Bound).met(false);
        assert!(c.ok());
        let p = CheckReport::new("x", CheckKind::Positive, "", Expected::ClosedForm).value("v", 1.0).expect(1.0, 1e-9).met_by_tolerance();
        assert!(p.ok());
    }
}
