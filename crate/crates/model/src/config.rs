use serde::{Deserialize, Serialize};

use crate::ModelError;

/// Every tunable threshold used by the detectors, with defaults.
///
/// All durations and windows are in seconds. Loading a profile from JSON or
/// TOML may set any subset of fields; the rest keep their defaults. Unknown
/// keys are rejected.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ThresholdConfig {
    /// Fake stars: maximum starred-repo count for a throwaway account.
    pub x1: u64,
    /// Fake stars: maximum activity events tolerated in the observation window.
    pub epsilon: u64,
    /// Fake stars: observation window after the star event.
    pub window_fake_stars: i64,

    /// Automatic updates: minimum commits within one window.
    pub x2: u64,
    /// Automatic updates: maximum mean lines touched per commit.
    pub y: f64,
    /// Automatic updates: sliding window length.
    pub window_auto_updates: i64,

    /// Keyword stuffing: relevance below this counts a keyword as off-topic.
    pub theta_k: f64,
    /// Keyword stuffing: minimum off-topic keywords to flag.
    pub x3: u64,

    /// Typo squatting: minimum name similarity against a reference.
    pub theta_t1: f64,
    /// Typo squatting: minimum readme similarity against a reference.
    pub theta_t2: f64,
    /// Typo squatting: minimum normalized popularity ratio.
    pub phi_p1: f64,

    /// Spoofed contributor: maximum commits attributed to the suspect.
    pub x4: u64,
    /// Spoofed contributor: maximum normalized popularity of the repository.
    pub phi_p2: f64,
    /// Spoofed contributor: minimum normalized popularity of the suspect.
    pub phi_p3: f64,

    /// Reputation farming: grace delay after closure before an interaction
    /// counts as stale.
    pub delta_t: i64,
    /// Reputation farming: end of the stale window after closure.
    pub window_rep_farming: i64,
    /// Reputation farming: stale interactions required to flag. `1` is the
    /// strict mode that flags on any stale interaction.
    pub farming_min_events: u64,

    /// Fake stats: minimum gap between claimed and actual star totals.
    pub x5: u64,
}

impl Default for ThresholdConfig {
    fn default() -> Self {
        ThresholdConfig {
            x1: 2,
            epsilon: 1,
            window_fake_stars: 30 * 24 * 3600,
            x2: 50,
            y: 3.0,
            window_auto_updates: 7 * 24 * 3600,
            theta_k: 0.10,
            x3: 5,
            theta_t1: 0.80,
            theta_t2: 0.60,
            phi_p1: 10.0,
            x4: 3,
            phi_p2: 0.05,
            phi_p3: 0.50,
            delta_t: 3600,
            window_rep_farming: 90 * 24 * 3600,
            farming_min_events: 3,
            x5: 10,
        }
    }
}

impl ThresholdConfig {
    /// Check that every threshold lies in its meaningful range.
    pub fn validate(&self) -> Result<(), ModelError> {
        let invariant = |msg: &str| Err(ModelError::Invariant(msg.into()));

        if !(self.y.is_finite() && self.y >= 0.0) {
            return invariant("y must be finite and non-negative");
        }
        for (name, v) in [
            ("theta_k", self.theta_k),
            ("theta_t1", self.theta_t1),
            ("theta_t2", self.theta_t2),
            ("phi_p2", self.phi_p2),
            ("phi_p3", self.phi_p3),
        ] {
            if !(v.is_finite() && (0.0..=1.0).contains(&v)) {
                return Err(ModelError::Invariant(format!("{name} must be within [0, 1]")));
            }
        }
        if !(self.phi_p1.is_finite() && self.phi_p1 >= 1.0) {
            return invariant("phi_p1 must be at least 1");
        }
        if self.delta_t < 0 {
            return invariant("delta_t must be non-negative");
        }
        for (name, w) in [
            ("window_fake_stars", self.window_fake_stars),
            ("window_auto_updates", self.window_auto_updates),
            ("window_rep_farming", self.window_rep_farming),
        ] {
            if w <= 0 {
                return Err(ModelError::Invariant(format!("{name} must be positive")));
            }
        }
        if self.window_rep_farming <= self.delta_t {
            return invariant("window_rep_farming must exceed delta_t");
        }
        if self.farming_min_events == 0 {
            return invariant("farming_min_events must be at least 1");
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        ThresholdConfig::default().validate().unwrap();
    }

    #[test]
    fn default_values_match_documented_profile() {
        let cfg = ThresholdConfig::default();
        assert_eq!(cfg.x1, 2);
        assert_eq!(cfg.epsilon, 1);
        assert_eq!(cfg.window_fake_stars, 2_592_000);
        assert_eq!(cfg.x2, 50);
        assert_eq!(cfg.y, 3.0);
        assert_eq!(cfg.window_auto_updates, 604_800);
        assert_eq!(cfg.theta_k, 0.10);
        assert_eq!(cfg.x3, 5);
        assert_eq!(cfg.theta_t1, 0.80);
        assert_eq!(cfg.theta_t2, 0.60);
        assert_eq!(cfg.phi_p1, 10.0);
        assert_eq!(cfg.x4, 3);
        assert_eq!(cfg.phi_p2, 0.05);
        assert_eq!(cfg.phi_p3, 0.50);
        assert_eq!(cfg.delta_t, 3600);
        assert_eq!(cfg.window_rep_farming, 7_776_000);
        assert_eq!(cfg.farming_min_events, 3);
        assert_eq!(cfg.x5, 10);
    }

    #[test]
    fn partial_documents_keep_defaults_elsewhere() {
        let cfg: ThresholdConfig = serde_json::from_str(r#"{"x1": 7, "theta_k": 0.2}"#).unwrap();
        assert_eq!(cfg.x1, 7);
        assert_eq!(cfg.theta_k, 0.2);
        assert_eq!(cfg.x2, 50);
    }

    #[test]
    fn unknown_keys_are_rejected() {
        assert!(serde_json::from_str::<ThresholdConfig>(r#"{"x9": 1}"#).is_err());
    }

    #[test]
    fn out_of_range_values_fail_validation() {
        let mut cfg = ThresholdConfig::default();
        cfg.theta_k = 1.5;
        assert!(cfg.validate().is_err());
        cfg = ThresholdConfig::default();
        cfg.phi_p1 = 0.5;
        assert!(cfg.validate().is_err());
        cfg = ThresholdConfig::default();
        cfg.window_auto_updates = 0;
        assert!(cfg.validate().is_err());
        cfg = ThresholdConfig::default();
        cfg.farming_min_events = 0;
        assert!(cfg.validate().is_err());
    }
}
