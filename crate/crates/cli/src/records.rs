//! Serialized output records. Field order here is the field order on disk.

use lpgst_core::{CrossVerification, FidelityTrace, Provenance, Verdict, VertexPair};
use serde::Serialize;
use serde_json::Value;

use crate::output::{int_json, round_sig, SCHEMA_VERSION};

pub fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn rule_id(v: &Verdict) -> String {
    match &v.provenance {
        Provenance::ClosedForm(rule) => rule.id().to_string(),
        other => other.to_string(),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassifyRow {
    pub n: usize,
    pub a: usize,
    pub verdict: String,
    pub rule: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lattice: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub agree: Option<bool>,
}

impl ClassifyRow {
    pub fn same_pair(n: usize, a: usize, cross_check: bool) -> Self {
        Self {
            n,
            a,
            verdict: "invalid".into(),
            rule: "same-pair".into(),
            lattice: cross_check.then(|| "n/a".into()),
            agree: None,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ClassifyRecord {
    schema_version: &'static str,
    command: &'static str,
    records: Vec<ClassifyRow>,
}

impl ClassifyRecord {
    pub fn new(records: Vec<ClassifyRow>) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            command: "classify",
            records,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct DecideInput {
    n: usize,
    a: usize,
    from: String,
    to: String,
}

#[derive(Debug, Serialize)]
pub struct PipelineVerdict {
    has_lpgst: bool,
    provenance: String,
}

impl From<&Verdict> for PipelineVerdict {
    fn from(v: &Verdict) -> Self {
        Self {
            has_lpgst: v.has_lpgst,
            provenance: v.provenance.to_string(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct WitnessRecord {
    case: String,
    half_period: usize,
    sum_zero: bool,
    relation_zero: bool,
    parity_odd: bool,
    supported: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    vector: Option<Vec<Value>>,
}

#[derive(Debug, Serialize)]
pub struct CertificateRecord {
    source: &'static str,
    vector: Vec<Value>,
    sigma_sum: Value,
}

#[derive(Debug, Serialize)]
pub struct DecideRecord {
    schema_version: &'static str,
    command: &'static str,
    input: DecideInput,
    closed_form: PipelineVerdict,
    lattice: PipelineVerdict,
    witness: Option<WitnessRecord>,
    pub agree: bool,
    /// Present only when requested; `null` for positive verdicts.
    #[serde(skip_serializing_if = "Option::is_none")]
    certificate: Option<Option<CertificateRecord>>,
}

impl DecideRecord {
    pub fn new(n: usize, a: usize, cv: &CrossVerification, with_certificate: bool) -> Self {
        let witness = cv
            .witness
            .as_ref()
            .zip(cv.witness_check.as_ref())
            .map(|(w, c)| WitnessRecord {
                case: w.case.id().to_string(),
                half_period: w.half_period,
                sum_zero: c.sum_zero,
                relation_zero: c.relation_zero,
                parity_odd: c.parity_odd,
                supported: c.supported,
                vector: with_certificate.then(|| w.vector.iter().map(int_json).collect()),
            });
        let certificate = with_certificate.then(|| {
            cv.lattice.certificate.as_ref().map(|c| CertificateRecord {
                source: "lattice",
                vector: c.vector.iter().map(int_json).collect(),
                sigma_sum: int_json(&c.sigma_sum),
            })
        });
        Self {
            schema_version: SCHEMA_VERSION,
            command: "decide",
            input: DecideInput {
                n,
                a,
                from: cv.lattice.from_pair.to_string(),
                to: cv.lattice.to_pair.to_string(),
            },
            closed_form: (&cv.closed_form).into(),
            lattice: (&cv.lattice).into(),
            witness,
            agree: cv.agree(),
            certificate,
        }
    }
}

#[derive(Debug, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum SweepSource {
    Path { n: usize },
    Graph { file: String, n: usize },
}

#[derive(Debug, Serialize)]
pub struct SweepInput {
    source: SweepSource,
    from: String,
    to: String,
    tmax: f64,
    steps: usize,
}

#[derive(Debug, Serialize)]
pub struct TraceRecord {
    t: Vec<f64>,
    fidelity: Vec<f64>,
}

#[derive(Debug, Serialize)]
pub struct SweepRecord {
    schema_version: &'static str,
    command: &'static str,
    input: SweepInput,
    sup_estimate: f64,
    argmax_time: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    trace: Option<TraceRecord>,
}

impl SweepRecord {
    pub fn new(
        source: SweepSource,
        (from, to): (VertexPair, VertexPair),
        (tmax, steps): (f64, usize),
        trace: &FidelityTrace,
        summary: bool,
    ) -> Self {
        let round = |v: &[f64]| v.iter().map(|&x| round_sig(x)).collect();
        Self {
            schema_version: SCHEMA_VERSION,
            command: "sweep",
            input: SweepInput {
                source,
                from: from.to_string(),
                to: to.to_string(),
                tmax,
                steps,
            },
            sup_estimate: round_sig(trace.sup_estimate),
            argmax_time: round_sig(trace.argmax_time),
            trace: (!summary).then(|| TraceRecord {
                t: round(&trace.times),
                fidelity: round(&trace.fidelities),
            }),
        }
    }
}
