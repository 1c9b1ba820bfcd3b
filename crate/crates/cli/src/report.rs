//! Serializable report shapes and their CSV/plain renderings.

use pedq_core::classifier::{OracleSweepReport, OracleSweepStatus};
use pedq_core::congruence::{
    AltExponentProbe, AltProbeOutcome, ParityReport, ParityStatus, ParityViolation, SweepBound,
    SweepStatus, VerificationReport,
};
use pedq_core::theta::{IdentityReport, IdentityStatus};
use serde::Serialize;

#[derive(Serialize, Clone, Debug)]
pub struct CounterexampleDto {
    pub alpha: u32,
    pub r: u64,
    pub n: u64,
    pub argument: u64,
    pub residue: u8,
}

#[derive(Serialize, Clone, Debug)]
pub struct FamilyReportDto {
    pub family: String,
    pub target: &'static str,
    pub modulus: u8,
    pub alpha_min: u32,
    pub alpha_max: u32,
    pub bound: String,
    pub r_values: Vec<u64>,
    pub checked: u64,
    pub max_argument: u64,
    pub status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<CounterexampleDto>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u64>,
}

fn bound_text(b: SweepBound) -> String {
    match b {
        SweepBound::NMax(n) => format!("n<={n}"),
        SweepBound::MaxArgument(a) => format!("arg<={a}"),
    }
}

impl From<&VerificationReport> for FamilyReportDto {
    fn from(r: &VerificationReport) -> Self {
        let (status, counterexample) = match r.status {
            SweepStatus::AllHold => ("all-hold", None),
            SweepStatus::Counterexample(ce) => (
                "counterexample",
                Some(CounterexampleDto {
                    alpha: ce.alpha,
                    r: ce.r,
                    n: ce.n,
                    argument: ce.argument,
                    residue: ce.residue,
                }),
            ),
        };
        FamilyReportDto {
            family: r.family_id.clone(),
            target: r.target.name(),
            modulus: r.modulus,
            alpha_min: r.alpha_min,
            alpha_max: r.alpha_max,
            bound: bound_text(r.bound),
            r_values: r.r_values.clone(),
            checked: r.checked,
            max_argument: r.max_argument_checked,
            status,
            counterexample,
            wall_time_ms: r.wall_time_ms,
        }
    }
}

pub const FAMILY_CSV_HEADER: &str = "family,target,modulus,alpha_min,alpha_max,bound,checked,\
max_argument,status,ce_alpha,ce_r,ce_n,ce_argument,ce_residue,wall_time_ms";

pub fn family_csv_row(d: &FamilyReportDto) -> String {
    let ce = d.counterexample.as_ref();
    let opt = |v: Option<String>| v.unwrap_or_default();
    format!(
        "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
        d.family,
        d.target,
        d.modulus,
        d.alpha_min,
        d.alpha_max,
        d.bound,
        d.checked,
        d.max_argument,
        d.status,
        opt(ce.map(|c| c.alpha.to_string())),
        opt(ce.map(|c| c.r.to_string())),
        opt(ce.map(|c| c.n.to_string())),
        opt(ce.map(|c| c.argument.to_string())),
        opt(ce.map(|c| c.residue.to_string())),
        opt(d.wall_time_ms.map(|t| t.to_string())),
    )
}

pub fn family_plain(d: &FamilyReportDto) -> String {
    let mut line = format!(
        "family {} (mod {}): {}; alpha {}..={}, {}, {} checks, max argument {}",
        d.family, d.modulus, d.status, d.alpha_min, d.alpha_max, d.bound, d.checked,
        d.max_argument
    );
    if let Some(ce) = &d.counterexample {
        line.push_str(&format!(
            "\n  counterexample: alpha={} r={} n={} argument={} residue={}",
            ce.alpha, ce.r, ce.n, ce.argument, ce.residue
        ));
    }
    if let Some(ms) = d.wall_time_ms {
        line.push_str(&format!(" ({ms} ms)"));
    }
    line
}

#[derive(Serialize, Clone, Debug)]
pub struct IdentityReportDto {
    pub identity: &'static str,
    pub order: usize,
    pub status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_mismatch: Option<usize>,
}

impl From<&IdentityReport> for IdentityReportDto {
    fn from(r: &IdentityReport) -> Self {
        let (status, first_mismatch) = match r.status {
            IdentityStatus::Match => ("match", None),
            IdentityStatus::Mismatch { first_index } => ("mismatch", Some(first_index)),
        };
        IdentityReportDto { identity: r.id.name(), order: r.order, status, first_mismatch }
    }
}

#[derive(Serialize, Clone, Debug)]
pub struct OracleSweepDto {
    pub n_max: u64,
    pub checked: u64,
    pub status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mismatch: Option<OracleMismatchDto>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u64>,
}

#[derive(Serialize, Clone, Debug)]
pub struct OracleMismatchDto {
    pub n: u64,
    pub classified: &'static str,
    pub series_residue: u8,
}

impl From<&OracleSweepReport> for OracleSweepDto {
    fn from(r: &OracleSweepReport) -> Self {
        let (status, mismatch) = match r.status {
            OracleSweepStatus::AllMatch => ("all-match", None),
            OracleSweepStatus::Mismatch { n, classified, series_residue } => (
                "mismatch",
                Some(OracleMismatchDto { n, classified: classified.name(), series_residue }),
            ),
        };
        OracleSweepDto { n_max: r.n_max, checked: r.checked, status, mismatch, wall_time_ms: r.wall_time_ms }
    }
}

#[derive(Serialize, Clone, Debug)]
pub struct ParityDto {
    pub n_max: u64,
    pub checked: u64,
    pub status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violation: Option<ParityViolationDto>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u64>,
}

#[derive(Serialize, Clone, Debug)]
pub struct ParityViolationDto {
    pub kind: &'static str,
    pub n: u64,
    pub residue: u8,
}

impl From<&ParityReport> for ParityDto {
    fn from(r: &ParityReport) -> Self {
        let (status, violation) = match r.status {
            ParityStatus::AllHold => ("all-hold", None),
            ParityStatus::Violation(v) => (
                "violation",
                Some(match v {
                    ParityViolation::OddNotPronic { n, residue } => {
                        ParityViolationDto { kind: "odd-not-pronic", n, residue }
                    }
                    ParityViolation::NotTriangularSum { n, residue } => {
                        ParityViolationDto { kind: "not-triangular-sum", n, residue }
                    }
                }),
            ),
        };
        ParityDto { n_max: r.n_max, checked: r.checked, status, violation, wall_time_ms: r.wall_time_ms }
    }
}

#[derive(Serialize, Clone, Debug)]
pub struct AltProbeDto {
    pub p: u64,
    pub alpha: u32,
    pub r: u64,
    pub outcome: String,
}

impl From<&AltExponentProbe> for AltProbeDto {
    fn from(p: &AltExponentProbe) -> Self {
        let outcome = match p.outcome {
            AltProbeOutcome::NotDivisible { remainder } => {
                format!("offset-not-divisible (remainder {remainder})")
            }
            AltProbeOutcome::Counterexample { n, argument, residue } => {
                format!("counterexample (n={n} argument={argument} residue={residue})")
            }
            AltProbeOutcome::Holds { n_checked } => format!("holds (n <= {n_checked})"),
        };
        AltProbeDto { p: p.p, alpha: p.alpha, r: p.r, outcome }
    }
}

/// The consolidated verify report; single-family runs leave the sweep and
/// parity sections out.
#[derive(Serialize, Clone, Debug)]
pub struct VerifyRunDto {
    pub families: Vec<FamilyReportDto>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classifier_sweep: Option<OracleSweepDto>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub parity_laws: Option<ParityDto>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub alt_exponent_probes: Vec<AltProbeDto>,
    pub all_hold: bool,
}
