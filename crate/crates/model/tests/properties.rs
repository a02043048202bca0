//! Property tests over the snapshot model.

use forgescan_model::{
    normalized_popularity, ActivityEvent, ActivityKind, CommitRecord, OwnedRepo, RepoSnapshot,
    Snapshot, StarEvent, Timestamp, UserSnapshot,
};
use proptest::prelude::*;

fn login_strategy() -> impl Strategy<Value = String> {
    "[a-z][a-z0-9]{1,10}"
}

fn hex_sha(seed: u64) -> String {
    // Stretch a seed into a deterministic 40-char hex string.
    let mut out = String::with_capacity(40);
    let mut state = seed.wrapping_mul(0x9e37_79b9_7f4a_7c15).wrapping_add(1);
    while out.len() < 40 {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        out.push_str(&format!("{:016x}", state));
    }
    out.truncate(40);
    out
}

fn user_strategy() -> impl Strategy<Value = UserSnapshot> {
    (
        login_strategy(),
        0u64..5000,
        prop::collection::vec(0i64..1_000_000, 0..20),
        prop::collection::vec((login_strategy(), 0u64..100), 0..4),
        prop::option::of(0u64..10_000),
    )
        .prop_map(|(login, followers, mut times, owned, claimed)| {
            times.sort_unstable();
            UserSnapshot {
                login: login.clone(),
                follower_count: followers,
                starred_repos: vec![],
                owned_repos: owned
                    .into_iter()
                    .enumerate()
                    .map(|(i, (name, stars))| OwnedRepo {
                        full_name: format!("{login}/{name}{i}"),
                        star_count: stars,
                    })
                    .collect(),
                activity: times
                    .into_iter()
                    .map(|t| ActivityEvent {
                        kind: ActivityKind::IssueComment,
                        timestamp: Timestamp(t),
                        target: "someone/repo#1".into(),
                    })
                    .collect(),
                profile_readme: String::new(),
                stat_widget_urls: vec![],
                claimed_star_count: claimed,
                snapshot_at: Timestamp(2_000_000),
            }
        })
}

fn repo_strategy() -> impl Strategy<Value = RepoSnapshot> {
    (
        login_strategy(),
        login_strategy(),
        prop::collection::vec((login_strategy(), 0i64..1_000_000), 0..10),
        prop::collection::vec((0i64..1_000_000, 0u64..200, 0u64..200), 0..10),
        0u64..10_000,
    )
        .prop_map(|(owner, name, mut stars, mut commits, star_count)| {
            stars.sort_by_key(|(_, t)| *t);
            commits.sort_by_key(|(t, _, _)| *t);
            RepoSnapshot {
                full_name: format!("{owner}/{name}"),
                description: "a test repository".into(),
                readme: "usage and examples".into(),
                keywords: vec!["testing".into(), "example".into()],
                star_count,
                fork_count: 0,
                star_events: stars
                    .into_iter()
                    .enumerate()
                    .map(|(i, (login, t))| StarEvent {
                        login: format!("{login}{i}"),
                        starred_at: Timestamp(t),
                    })
                    .collect(),
                commits: commits
                    .into_iter()
                    .enumerate()
                    .map(|(i, (t, added, deleted))| CommitRecord {
                        sha: hex_sha(i as u64 ^ (t as u64) << 8),
                        author_login: "dev".into(),
                        co_authors: vec![],
                        timestamp: Timestamp(t),
                        lines_added: added,
                        lines_deleted: deleted,
                        touched_paths: vec!["src/main.rs".into()],
                    })
                    .collect(),
                issues: vec![],
                pull_requests: vec![],
                snapshot_at: Timestamp(2_000_000),
            }
        })
}

proptest! {
    #[test]
    fn user_snapshot_documents_round_trip(user in user_strategy()) {
        let snap = Snapshot::User(user);
        snap.validate().unwrap();
        let text = snap.to_json_string().unwrap();
        let back = Snapshot::from_json_str(&text).unwrap();
        prop_assert_eq!(back, snap);
    }

    #[test]
    fn repo_snapshot_documents_round_trip(repo in repo_strategy()) {
        let snap = Snapshot::Repo(repo);
        snap.validate().unwrap();
        let text = snap.to_json_string().unwrap();
        let back = Snapshot::from_json_str(&text).unwrap();
        prop_assert_eq!(back, snap);
    }

    #[test]
    fn activity_count_is_additive_over_adjacent_intervals(
        user in user_strategy(),
        mut cuts in prop::array::uniform3(0i64..1_000_000),
    ) {
        cuts.sort_unstable();
        let [a, b, c] = cuts.map(Timestamp);
        let left = user.activity_count(a, b).unwrap();
        let right = user.activity_count(b, c).unwrap();
        let whole = user.activity_count(a, c).unwrap();
        prop_assert_eq!(left + right, whole);
    }

    #[test]
    fn normalized_popularity_is_clamped_and_monotone(
        raw_a in 0u64..1_000_000,
        raw_b in 0u64..1_000_000,
        cap in 1u64..1_000_000,
    ) {
        let pa = normalized_popularity(raw_a, cap);
        let pb = normalized_popularity(raw_b, cap);
        prop_assert!((0.0..=1.0).contains(&pa));
        if raw_a <= raw_b {
            prop_assert!(pa <= pb);
        }
    }
}
