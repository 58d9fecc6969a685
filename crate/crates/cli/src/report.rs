use serde::Serialize;
use wigner::{Report64, Tolerances64};

use crate::format::{Entry, OperatorFile};

#[derive(Debug, Clone, Serialize)]
pub struct TolerancesRecord {
    pub zero: f64,
    pub norm: f64,
    pub eq: f64,
    pub verify: f64,
}

impl From<&Tolerances64> for TolerancesRecord {
    fn from(t: &Tolerances64) -> Self {
        Self {
            zero: t.zero,
            norm: t.norm,
            eq: t.eq,
            verify: t.verify,
        }
    }
}

/// Written by `reconstruct`. Numeric fields are `null` when the pipeline
/// stopped before producing them.
#[derive(Debug, Clone, Serialize)]
pub struct ReconstructionRecord {
    pub command: &'static str,
    pub status: &'static str,
    pub reason: Option<String>,
    pub message: Option<String>,
    pub instance: OperatorFile,
    pub witness: Option<OperatorFile>,
    pub max_gap_residual: Option<f64>,
    pub mean_gap_residual: Option<f64>,
    pub parseval_residual: Option<f64>,
    pub classification_evidence: Option<[f64; 2]>,
    pub phase_relation_residual: Option<f64>,
    pub fixture_residual: Option<f64>,
    pub delta: Option<Vec<Entry>>,
    pub epsilon: Option<Vec<Entry>>,
    pub sample_count: usize,
    pub seed: u64,
    pub tolerances: TolerancesRecord,
    pub timestamp: u64,
}

impl ReconstructionRecord {
    pub fn fill_from(&mut self, r: &Report64) {
        self.witness = Some(OperatorFile::from_witness(&r.witness, Default::default()));
        self.max_gap_residual = Some(r.max_gap_residual);
        self.mean_gap_residual = Some(r.mean_gap_residual);
        self.parseval_residual = Some(r.parseval_residual);
        self.classification_evidence = r.classification_evidence.map(|(a, b)| [a, b]);
        self.phase_relation_residual = Some(r.phase_relation_residual);
        self.fixture_residual = Some(r.fixture_residual);
        self.delta = Some(r.chain.delta.iter().map(|z| [z.re, z.im]).collect());
        self.epsilon = Some(r.chain.epsilon.iter().map(|z| [z.re, z.im]).collect());
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyRecord {
    pub command: &'static str,
    pub status: &'static str,
    pub reason: Option<String>,
    pub instance: OperatorFile,
    pub max_gap_residual: f64,
    pub mean_gap_residual: f64,
    pub sample_count: usize,
    pub seed: u64,
    pub tolerances: TolerancesRecord,
    pub timestamp: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ContradictionRecord {
    pub j: usize,
    pub modulus_before: f64,
    pub modulus_after: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ValidateRecord {
    pub command: &'static str,
    pub status: &'static str,
    pub reason: Option<String>,
    pub instance: OperatorFile,
    pub max_residual: f64,
    pub random_residual: f64,
    pub fixture_residual: f64,
    pub basis_residual: f64,
    pub contradiction_pairs: Vec<ContradictionRecord>,
    pub pair_count: usize,
    pub seed: u64,
    pub tolerances: TolerancesRecord,
    pub timestamp: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ProfileRecord {
    pub moduli_basis: Vec<f64>,
    pub moduli_diff: Vec<f64>,
    pub moduli_idiff: Vec<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ResolveRecord {
    pub command: &'static str,
    pub status: &'static str,
    pub reason: Option<String>,
    pub message: Option<String>,
    pub input: OperatorFile,
    /// Gap distances to the `3N - 2` resolving-set elements, in order.
    pub gap_readings: Vec<f64>,
    pub profile: ProfileRecord,
    pub recovered: Option<OperatorFile>,
    pub residual: Option<f64>,
    pub tolerances: TolerancesRecord,
    pub timestamp: u64,
}
