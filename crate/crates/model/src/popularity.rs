//! Log-scaled popularity normalization shared by several detectors.

/// Scale cap applied when normalizing repository star counts.
pub const REPO_STAR_SCALE_CAP: u64 = 100_000;

/// Scale cap applied when normalizing user follower counts.
pub const USER_FOLLOWER_SCALE_CAP: u64 = 10_000;

/// Map a raw count onto `[0, 1]` as `min(1, log10(1+raw) / log10(1+scale_cap))`.
///
/// Monotone in `raw` and exactly `1.0` for `raw >= scale_cap`. `scale_cap`
/// must be positive.
pub fn normalized_popularity(raw: u64, scale_cap: u64) -> f64 {
    assert!(scale_cap > 0, "scale_cap must be positive");
    let v = ((1.0 + raw as f64).log10()) / ((1.0 + scale_cap as f64).log10());
    v.min(1.0)
}

/// Normalized popularity of a repository from its star count.
pub fn repo_popularity(star_count: u64) -> f64 {
    normalized_popularity(star_count, REPO_STAR_SCALE_CAP)
}

/// Normalized popularity of a user from their follower count.
pub fn user_popularity(follower_count: u64) -> f64 {
    normalized_popularity(follower_count, USER_FOLLOWER_SCALE_CAP)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_hand_computed_value() {
        // log10(1000) / log10(100001) = 3 / 5.0000043... ~= 0.6
        let v = normalized_popularity(999, 100_000);
        let expected = 3.0 / (100_001f64).log10();
        assert!((v - expected).abs() < 1e-12);
        assert!((v - 0.6).abs() < 1e-3);
    }

    #[test]
    fn zero_maps_to_zero_and_cap_maps_to_one() {
        assert_eq!(normalized_popularity(0, 100_000), 0.0);
        assert_eq!(normalized_popularity(100_000, 100_000), 1.0);
    }

    #[test]
    fn clamps_above_cap() {
        assert_eq!(normalized_popularity(2_000_000, 100_000), 1.0);
    }

    #[test]
    fn monotone_in_raw() {
        let mut prev = -1.0;
        for raw in [0u64, 1, 2, 10, 100, 5_000, 99_999, 100_000] {
            let v = normalized_popularity(raw, 100_000);
            assert!(v >= prev, "popularity must not decrease: {prev} -> {v}");
            prev = v;
        }
    }
}
