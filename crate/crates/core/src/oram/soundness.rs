use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{oram_access, AccessPattern, ClientState, DataRequest, Op, ServerDb};
use crate::BitString;

#[derive(Debug, Clone)]
pub struct TraceEntry {
    pub request: DataRequest,
    /// Data returned, or the abort message.
    pub outcome: std::result::Result<BitString, String>,
    pub key_retained: bool,
    /// Off-path nodes whose buckets changed.
    pub off_path_changes: Vec<usize>,
    pub leaf: Option<u64>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SoundnessReport {
    pub accesses: usize,
    pub violations: Vec<String>,
}

impl SoundnessReport {
    pub fn is_sound(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Nodes outside the accessed path whose contents differ between snapshots.
pub fn path_locality_violations(ap: &AccessPattern) -> Vec<usize> {
    let path = ap.pre.path(ap.leaf);
    (0..ap.pre.node_count())
        .filter(|i| !path.contains(i) && ap.pre.bucket(*i) != ap.post.bucket(*i))
        .collect()
}

pub fn traced_access(client: &mut ClientState, server: &mut ServerDb, dr: &DataRequest) -> TraceEntry {
    let key = client.key().clone();
    let res = oram_access(client, server, dr);
    let key_retained = *client.key() == key;
    match res {
        Ok((data, ap)) => TraceEntry {
            request: dr.clone(),
            outcome: Ok(data),
            key_retained,
            off_path_changes: path_locality_violations(&ap),
            leaf: Some(ap.leaf),
        },
        Err(e) => TraceEntry {
            request: dr.clone(),
            outcome: Err(e.to_string()),
            key_retained,
            off_path_changes: Vec::new(),
            leaf: None,
        },
    }
}

/// Runs every request, continuing past aborts.
pub fn run_trace(client: &mut ClientState, server: &mut ServerDb, requests: &[DataRequest]) -> Vec<TraceEntry> {
    requests.iter().map(|dr| traced_access(client, server, dr)).collect()
}

/// Key retention, read-returns-stored and write-persists, checked against a
/// plain map model of the database.
pub fn check_minimal_soundness(trace: &[TraceEntry], n_dat: usize) -> SoundnessReport {
    let mut model: HashMap<usize, BitString> = HashMap::new();
    let mut violations = Vec::new();
    for (t, e) in trace.iter().enumerate() {
        if !e.key_retained {
            violations.push(format!("access {t}: client key changed"));
        }
        if !e.off_path_changes.is_empty() {
            violations.push(format!("access {t}: nodes {:?} changed off the path", e.off_path_changes));
        }
        let got = match &e.outcome {
            Ok(d) => d,
            Err(msg) => {
                violations.push(format!("access {t}: aborted ({msg})"));
                continue;
            }
        };
        let id = e.request.id;
        match e.request.op {
            Op::Read => {
                let expected = model.get(&id).cloned().unwrap_or_else(|| BitString::zeros(n_dat));
                if *got != expected {
                    violations.push(format!("access {t}: read of {id} returned {got}, stored {expected}"));
                }
            }
            Op::Write => {
                let data = e.request.data.clone().unwrap_or_else(|| BitString::zeros(n_dat));
                if *got != data {
                    violations.push(format!("access {t}: write of {id} did not persist"));
                }
                model.insert(id, data);
            }
        }
    }
    SoundnessReport {
        accesses: trace.len(),
        violations,
    }
}
