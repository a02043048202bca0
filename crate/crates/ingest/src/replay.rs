use std::path::Path;
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use crate::{ApiRequest, ApiResponse, IngestError, Transport};

/// One request/response pair in a transcript.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TranscriptEntry {
    pub request: ApiRequest,
    pub response: ApiResponse,
}

/// Serves responses from a recorded transcript instead of the network.
///
/// Each incoming request consumes the *first unconsumed* entry whose method,
/// path and query match. Matching by content rather than strict position
/// lets concurrent fetch fan-out arrive in any order, while repeated entries
/// for the same request replay retry sequences (a 500 followed by a 200, for
/// example) in recorded order.
pub struct ReplayTransport {
    entries: Vec<TranscriptEntry>,
    consumed: Mutex<Vec<bool>>,
}

impl ReplayTransport {
    pub fn new(entries: Vec<TranscriptEntry>) -> Self {
        let consumed = Mutex::new(vec![false; entries.len()]);
        ReplayTransport { entries, consumed }
    }

    /// Parses a transcript: a JSON array of `{request, response}` objects.
    pub fn from_json_str(text: &str) -> Result<Self, IngestError> {
        let entries: Vec<TranscriptEntry> = serde_json::from_str(text)?;
        Ok(ReplayTransport::new(entries))
    }

    pub fn from_file(path: &Path) -> Result<Self, IngestError> {
        ReplayTransport::from_json_str(&std::fs::read_to_string(path)?)
    }

    /// Entries never consumed; an exhaustive replay should leave none.
    pub fn unconsumed(&self) -> usize {
        self.consumed.lock().unwrap().iter().filter(|c| !**c).count()
    }
}

impl Transport for ReplayTransport {
    fn execute(&self, request: &ApiRequest) -> Result<ApiResponse, IngestError> {
        let mut consumed = self.consumed.lock().unwrap();
        for (i, entry) in self.entries.iter().enumerate() {
            if consumed[i] {
                continue;
            }
            if entry.request.method == request.method
                && entry.request.path == request.path
                && entry.request.query == request.query
            {
                consumed[i] = true;
                return Ok(entry.response.clone());
            }
        }
        Err(IngestError::Replay(format!(
            "transcript has no unconsumed entry for {} {}",
            request.method,
            request.display()
        )))
    }
}

/// Wraps another transport and records every exchange, for producing
/// transcripts from live traffic.
pub struct RecordingTransport<T: Transport> {
    inner: T,
    recorded: Mutex<Vec<TranscriptEntry>>,
}

impl<T: Transport> RecordingTransport<T> {
    pub fn new(inner: T) -> Self {
        RecordingTransport { inner, recorded: Mutex::new(Vec::new()) }
    }

    /// The transcript recorded so far, pretty-printed.
    pub fn transcript_json(&self) -> Result<String, IngestError> {
        let recorded = self.recorded.lock().unwrap();
        Ok(serde_json::to_string_pretty(&*recorded)?)
    }
}

impl<T: Transport> Transport for RecordingTransport<T> {
    fn execute(&self, request: &ApiRequest) -> Result<ApiResponse, IngestError> {
        let response = self.inner.execute(request)?;
        self.recorded.lock().unwrap().push(TranscriptEntry {
            request: request.clone(),
            response: response.clone(),
        });
        Ok(response)
    }
}
