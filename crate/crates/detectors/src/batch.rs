use forgescan_model::{RepoSnapshot, Snapshot, UserSnapshot};
use forgescan_textkit::{background_documents, tokenize, Corpus, SpamModelFile, TextkitError};

use crate::{DetectorError, PopularReference};

/// Everything a scan runs against: the snapshots under examination plus the
/// shared context detectors need.
///
/// Building a batch tokenizes every repository README into a scoring corpus
/// (together with a deterministic synthetic background of ordinary project
/// texts, so relevance scores are meaningful even for small batches).
/// Reference repositories and a trained spam model are attached separately —
/// they are only required by the detectors that use them.
#[derive(Debug)]
pub struct ScanBatch {
    repos: Vec<RepoSnapshot>,
    users: Vec<UserSnapshot>,
    references: Vec<PopularReference>,
    spam_model: Option<SpamModelFile>,
    corpus: Corpus,
}

impl ScanBatch {
    /// Validates the snapshots, splits them by kind and builds the scoring
    /// corpus. Two repository snapshots with the same `owner/name` are
    /// rejected — the batch could not say which one a verdict refers to.
    pub fn new(snapshots: Vec<Snapshot>) -> Result<Self, DetectorError> {
        let mut repos = Vec::new();
        let mut users = Vec::new();
        for snapshot in snapshots {
            snapshot.validate()?;
            match snapshot {
                Snapshot::Repo(r) => repos.push(r),
                Snapshot::User(u) => users.push(u),
            }
        }

        // Prefix keeps repository ids disjoint from the background ids.
        let mut docs: Vec<(String, Vec<String>)> = repos
            .iter()
            .map(|r| (format!("repo:{}", r.full_name), tokenize(&r.readme)))
            .collect();
        docs.extend(background_documents());
        let corpus = Corpus::build(docs).map_err(|e| match e {
            TextkitError::DuplicateDoc(id) => DetectorError::InvalidInput(format!(
                "batch contains {} twice",
                id.trim_start_matches("repo:")
            )),
            other => DetectorError::Text(other),
        })?;

        Ok(ScanBatch {
            repos,
            users,
            references: Vec::new(),
            spam_model: None,
            corpus,
        })
    }

    /// Attaches reference repositories for typo-squatting comparison. Each
    /// entry must be well formed and clear the given popularity floor.
    pub fn with_references(
        mut self,
        references: Vec<PopularReference>,
        star_floor: u64,
    ) -> Result<Self, DetectorError> {
        for r in &references {
            r.validate(star_floor)?;
        }
        self.references = references;
        Ok(self)
    }

    /// Promotes batch repositories with at least `star_floor` stars to
    /// references, so popular snapshots in the same batch protect their
    /// look-alikes. Repositories already referenced are not added twice.
    pub fn derive_references(&mut self, star_floor: u64) {
        for repo in &self.repos {
            if repo.star_count < star_floor {
                continue;
            }
            let known = self
                .references
                .iter()
                .any(|r| r.full_name.eq_ignore_ascii_case(&repo.full_name));
            if !known {
                self.references.push(PopularReference::from_snapshot(repo));
            }
        }
    }

    /// Attaches the trained model issue-spam scoring requires.
    pub fn with_spam_model(mut self, model: SpamModelFile) -> Self {
        self.spam_model = Some(model);
        self
    }

    pub fn repos(&self) -> &[RepoSnapshot] {
        &self.repos
    }

    pub fn users(&self) -> &[UserSnapshot] {
        &self.users
    }

    pub fn references(&self) -> &[PopularReference] {
        &self.references
    }

    pub fn spam_model(&self) -> Option<&SpamModelFile> {
        self.spam_model.as_ref()
    }

    pub fn corpus(&self) -> &Corpus {
        &self.corpus
    }

    /// Batch users that starred `repo`, in batch order. Only accounts we
    /// hold a snapshot for can be judged.
    pub fn stargazers_of(&self, repo: &RepoSnapshot) -> Vec<&UserSnapshot> {
        self.users
            .iter()
            .filter(|u| repo.star_event_for(&u.login).is_some())
            .collect()
    }

    /// Batch users attributed by at least one commit of `repo`, in batch
    /// order.
    pub fn suspects_of(&self, repo: &RepoSnapshot) -> Vec<&UserSnapshot> {
        self.users
            .iter()
            .filter(|u| repo.commits.iter().any(|c| c.attributes(&u.login)))
            .collect()
    }
}
