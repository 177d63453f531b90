//! Verification reports: one record per check, merged into bundles with a
//! deterministic layout so identical runs produce identical bytes.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check: String,
    pub samples: usize,
    pub max_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub seed: u64,
}

impl VerificationReport {
    pub fn new(check: &str, samples: usize, max_residual: f64, tolerance: f64, seed: u64) -> Self {
        Self {
            check: check.to_string(),
            samples,
            max_residual,
            tolerance,
            pass: max_residual <= tolerance,
            seed,
        }
    }

    /// For pass/fail facts without a meaningful residual (e.g. exact
    /// combinatorial checks): residual 0 or 1 against tolerance 0.5.
    pub fn from_flag(check: &str, samples: usize, ok: bool, seed: u64) -> Self {
        Self::new(check, samples, if ok { 0.0 } else { 1.0 }, 0.5, seed)
    }

    pub fn summary_line(&self) -> String {
        format!(
            "{:<34} {} (samples {:>4}, max residual {:.3e}, tol {:.1e})",
            self.check,
            if self.pass { "pass" } else { "FAIL" },
            self.samples,
            self.max_residual,
            self.tolerance
        )
    }
}

/// Aggregate of suite reports plus enough context to reproduce the run.
/// Contains no clocks or host info: identical (config, seed) must serialize
/// to identical bytes.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReportBundle {
    pub package: String,
    pub version: String,
    pub config_echo: serde_json::Value,
    pub seed: u64,
    pub suites: Vec<VerificationReport>,
    pub overall_pass: bool,
}

impl ReportBundle {
    pub fn new(config_echo: serde_json::Value, seed: u64, mut suites: Vec<VerificationReport>) -> Self {
        suites.sort_by(|a, b| a.check.cmp(&b.check));
        let overall_pass = suites.iter().all(|s| s.pass);
        Self {
            package: "qham-core".to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            config_echo,
            seed,
            suites,
            overall_pass,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization")
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        out.push_str("# Verification report\n\n");
        out.push_str(&format!("seed: {}\n\n", self.seed));
        out.push_str("| check | samples | max residual | tolerance | pass |\n");
        out.push_str("|---|---|---|---|---|\n");
        for s in &self.suites {
            out.push_str(&format!(
                "| {} | {} | {:.3e} | {:.1e} | {} |\n",
                s.check,
                s.samples,
                s.max_residual,
                s.tolerance,
                if s.pass { "yes" } else { "**NO**" }
            ));
        }
        out.push_str(&format!(
            "\noverall: {}\n",
            if self.overall_pass { "pass" } else { "FAIL" }
        ));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pass_iff_residual_within_tolerance() {
        let r = VerificationReport::new("x", 10, 1e-7, 1e-6, 0);
        assert!(r.pass);
        let r = VerificationReport::new("x", 10, 2e-6, 1e-6, 0);
        assert!(!r.pass);
    }

    #[test]
    fn bundle_sorts_and_aggregates() {
        let b = ReportBundle::new(
            serde_json::json!({}),
            7,
            vec![
                VerificationReport::new("b", 1, 0.0, 1.0, 7),
                VerificationReport::new("a", 1, 2.0, 1.0, 7),
            ],
        );
        assert_eq!(b.suites[0].check, "a");
        assert!(!b.overall_pass);
        // identical inputs serialize identically
        let b2 = ReportBundle::new(
            serde_json::json!({}),
            7,
            vec![
                VerificationReport::new("b", 1, 0.0, 1.0, 7),
                VerificationReport::new("a", 1, 2.0, 1.0, 7),
            ],
        );
        assert_eq!(b.to_json(), b2.to_json());
    }
}
