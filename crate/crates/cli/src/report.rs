//! Report structure shared by every subcommand.
//!
//! Reports are serialized deterministically: identical inputs and flags
//! produce byte-identical JSON. Wall-clock timing is therefore opt-in
//! (`--timing`) and absent by default. The schema is versioned through
//! the `schema` field.

use serde::{Deserialize, Serialize};

use qmstab_core::{
    BoundedMonomials, ChainStep, CoveringOutcome, Evidence, StabilityCertificate,
    StabilityStatus, StabilityVerdict, TentacleReport, ZVector,
};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    pub command: String,
    pub config: ConfigEcho,
    pub result: Payload,
    pub timing_ms: Option<u64>,
}

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(default)]
pub struct ConfigEcho {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub file: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub variables: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub z: Option<Vec<ZVector>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub target: Option<ZVector>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_scale: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples_per_scale: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub denom_bound: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub preordering: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambdas: Option<Vec<String>>,
    #[serde(rename = "box", skip_serializing_if = "Option::is_none")]
    pub box_spec: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Payload {
    Verdict { verdict: StabilityVerdict },
    Bounded { outcome: BoundedMonomials },
    Covering { outcome: CoveringOutcome },
    TentacleSample { report: TentacleReport },
    SuggestZ { directions: Vec<ZVector> },
    Examples { runs: Vec<ExampleRun>, all_match: bool },
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ExampleRun {
    pub name: String,
    pub method: String,
    pub expected: StabilityStatus,
    pub status: StabilityStatus,
    pub matched: bool,
}

fn status_str(status: StabilityStatus) -> &'static str {
    match status {
        StabilityStatus::Stable => "stable",
        StabilityStatus::NotTotallyStable => "not-totally-stable",
        StabilityStatus::Unknown => "unknown",
    }
}

impl Report {
    pub fn new(command: &str, config: ConfigEcho, result: Payload) -> Self {
        Self {
            schema: SCHEMA_VERSION,
            command: command.to_string(),
            config,
            result,
            timing_ms: None,
        }
    }

    /// Exit code mapping: 0 for the positive outcome, 2 for unknown,
    /// 3 for a definitive negative.
    pub fn exit_code(&self) -> i32 {
        match &self.result {
            Payload::Verdict { verdict } => match verdict.status {
                StabilityStatus::Stable => 0,
                StabilityStatus::Unknown => 2,
                StabilityStatus::NotTotallyStable => 3,
            },
            Payload::Bounded { outcome } => match outcome {
                BoundedMonomials::OnlyConstants => 0,
                BoundedMonomials::Witness { .. } => 3,
            },
            Payload::Covering { outcome } => match outcome {
                CoveringOutcome::Certified(_) => 0,
                CoveringOutcome::Unknown => 2,
                CoveringOutcome::Infeasible => 3,
            },
            Payload::TentacleSample { report } => {
                if report.violations.is_empty() {
                    0
                } else {
                    3
                }
            }
            Payload::SuggestZ { .. } => 0,
            Payload::Examples { all_match, .. } => {
                if *all_match {
                    0
                } else {
                    3
                }
            }
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("command: {}\n", self.command);
        match &self.result {
            Payload::Verdict { verdict } => render_verdict(&mut out, verdict),
            Payload::Bounded { outcome } => match outcome {
                BoundedMonomials::OnlyConstants => {
                    out.push_str("outcome: only constants are bounded\n")
                }
                BoundedMonomials::Witness { delta } => {
                    let monomial: Vec<String> = delta
                        .entries()
                        .iter()
                        .enumerate()
                        .filter(|(_, &e)| e > 0)
                        .map(|(i, &e)| {
                            if e == 1 {
                                format!("x{}", i + 1)
                            } else {
                                format!("x{}^{}", i + 1, e)
                            }
                        })
                        .collect();
                    out.push_str(&format!(
                        "outcome: bounded monomial witness {}\n",
                        monomial.join("*")
                    ));
                }
            },
            Payload::Covering { outcome } => match outcome {
                CoveringOutcome::Certified(cert) => {
                    out.push_str(&format!(
                        "outcome: covered, r = ({}), t = ({})\n",
                        join_u64(&cert.r),
                        join_u64(&cert.t)
                    ));
                }
                CoveringOutcome::Infeasible => {
                    out.push_str("outcome: no covering exists (relaxation infeasible)\n")
                }
                CoveringOutcome::Unknown => {
                    out.push_str("outcome: unknown (no integer point within the bound)\n")
                }
            },
            Payload::TentacleSample { report } => {
                out.push_str(&format!("points checked: {}\n", report.points_checked));
                out.push_str(&format!("violations: {}\n", report.violations.len()));
                for v in report.violations.iter().take(5) {
                    out.push_str(&format!(
                        "  generator {} at lambda={} point=({}) value={}\n",
                        v.generator,
                        v.lambda,
                        v.point
                            .iter()
                            .map(|x| x.to_string())
                            .collect::<Vec<_>>()
                            .join(", "),
                        v.value
                    ));
                }
            }
            Payload::SuggestZ { directions } => {
                out.push_str(&format!("directions: {}\n", directions.len()));
                for z in directions {
                    out.push_str(&format!("  {z}\n"));
                }
            }
            Payload::Examples { runs, all_match } => {
                for run in runs {
                    out.push_str(&format!(
                        "  {}: {} (expected {}) {}\n",
                        run.name,
                        status_str(run.status),
                        status_str(run.expected),
                        if run.matched { "MATCH" } else { "MISMATCH" }
                    ));
                }
                out.push_str(&format!(
                    "all match: {}\n",
                    if *all_match { "yes" } else { "no" }
                ));
            }
        }
        if let Some(ms) = self.timing_ms {
            out.push_str(&format!("timing: {ms} ms\n"));
        }
        out
    }
}

fn join_u64(values: &[u64]) -> String {
    values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

fn render_verdict(out: &mut String, verdict: &StabilityVerdict) {
    out.push_str(&format!("status: {}\n", status_str(verdict.status)));
    if let Some(scope) = verdict.scope {
        out.push_str(&format!(
            "scope: {}\n",
            match scope {
                qmstab_core::VerdictScope::FiniteFiltration => "finite filtration",
                qmstab_core::VerdictScope::GivenGradingOnly => "given grading only",
            }
        ));
    }
    out.push_str(&format!(
        "closed: {}, fails strong moment property: {}\n",
        verdict.consequences.closed, verdict.consequences.fails_smp
    ));
    let chain: Vec<&str> = verdict.chain.iter().map(ChainStep::name).collect();
    out.push_str(&format!("chain: {}\n", chain.join(" -> ")));
    match &verdict.certificate {
        Some(StabilityCertificate::ZGradings {
            directions,
            multipliers,
        }) => {
            for dir in directions {
                out.push_str(&format!("direction {}:\n", dir.z));
                for class in &dir.classes {
                    out.push_str(&format!(
                        "  class {} (members {:?}): witness point ({}), values ({})\n",
                        class.residue,
                        class.members,
                        class
                            .witness
                            .point
                            .iter()
                            .map(|x| x.to_string())
                            .collect::<Vec<_>>()
                            .join(", "),
                        class
                            .witness
                            .values
                            .iter()
                            .map(|x| x.to_string())
                            .collect::<Vec<_>>()
                            .join(", ")
                    ));
                }
            }
            if let Some(r) = multipliers {
                let rs: Vec<String> = r.iter().map(|v| v.to_string()).collect();
                out.push_str(&format!("multipliers: ({})\n", rs.join(", ")));
            }
        }
        Some(StabilityCertificate::TermOrder { classes, .. }) => {
            for class in classes {
                let coeffs: Vec<String> = class
                    .leading_coefficients
                    .iter()
                    .map(|c| c.to_string())
                    .collect();
                out.push_str(&format!(
                    "  class {} (members {:?}): leading coefficients ({})\n",
                    class.residue,
                    class.members,
                    coeffs.join(", ")
                ));
            }
        }
        None => {}
    }
    match &verdict.evidence {
        Some(Evidence::ViolatingClass { residue, members, .. }) => {
            out.push_str(&format!(
                "violating class: residue {residue}, members {members:?}\n"
            ));
        }
        Some(Evidence::SearchExhausted { z, residue }) => {
            out.push_str(&format!(
                "witness search exhausted for direction {z}, class {residue}\n"
            ));
        }
        Some(Evidence::Obstruction {
            stable_directions,
            unknown_directions,
            farkas,
        }) => {
            if !stable_directions.is_empty() {
                let list: Vec<String> =
                    stable_directions.iter().map(|z| z.to_string()).collect();
                out.push_str(&format!("certified directions: {}\n", list.join("; ")));
            }
            if !unknown_directions.is_empty() {
                let list: Vec<String> =
                    unknown_directions.iter().map(|z| z.to_string()).collect();
                out.push_str(&format!("unknown directions: {}\n", list.join("; ")));
            }
            if let Some(delta) = farkas {
                out.push_str(&format!(
                    "obstruction: bounded monomial exponent {:?}\n",
                    delta.entries()
                ));
            }
        }
        None => {}
    }
}
