//! One-call pipeline: validate the model/action pair, certify
//! quasi-unipotence, measure growth, grade the bounds, and optionally run
//! the filtration, vanishing, and oracle sections.

use serde::Serialize;

use crate::filtration::{
    canonical_candidates, canonical_sequence, filtration_spaces, verify_quasi_nef,
    CandidateEntry, FiltrationReport, QuasiNefReport, VanishingReport,
};
use crate::growth::{self, GrowthReport, OracleReport};
use crate::model::{AutoAction, IntersectionModel, ModelKind, ValidationReport};
use crate::verdict::{bound_report, BoundCheck};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, Default)]
pub struct AnalysisOptions {
    pub filtration: bool,
    pub diagnostics: bool,
    pub oracle: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ModelSummary {
    pub kind: ModelKind,
    pub d: usize,
    pub h: usize,
    pub geometric: bool,
    pub basis: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CertSummary {
    pub order_m: u64,
    pub k: usize,
    pub k_even: bool,
    pub jordan_partition: Vec<usize>,
    pub cyclotomic_factors: Vec<(u64, usize)>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FiltrationSection {
    pub candidates: Vec<CandidateEntry>,
    pub verification: QuasiNefReport,
    /// Absent when the canonical sequence fails its prefix checks; the
    /// filtration is only defined over a quasi-nef sequence.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<FiltrationReport>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AnalysisReport {
    pub d: usize,
    pub k: Option<usize>,
    pub plov: usize,
    pub gkdim: usize,
    pub checks: Vec<BoundCheck>,
    pub model: ModelSummary,
    pub certification: CertSummary,
    pub growth: GrowthReport,
    pub validation: ValidationReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub filtration: Option<FiltrationSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diagnostics: Option<VanishingReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleReport>,
    pub findings: Vec<String>,
    pub status: String,
}

impl AnalysisReport {
    /// Findings on a geometric model contradict proved statements; the
    /// caller should exit nonzero.
    pub fn violates_guarantees(&self) -> bool {
        self.model.geometric && !self.findings.is_empty()
    }
}

pub fn analyze(
    model: &IntersectionModel,
    auto: &AutoAction,
    opts: AnalysisOptions,
) -> Result<AnalysisReport> {
    crate::par::init_threads();

    let validation = model.validate(auto);
    if !validation.all_pass() {
        let detail = validation
            .checks
            .iter()
            .filter(|c| !c.pass)
            .map(|c| {
                let w = c.witness.as_deref().unwrap_or("no witness");
                format!("{}: {w}", c.name)
            })
            .collect::<Vec<_>>()
            .join("; ");
        return Err(Error::Invalid(format!(
            "model/action validation failed ({detail})"
        )));
    }

    // On torus models prefer the witness from the h10 matrix itself: the
    // induced action is quasi-unipotent exactly when the h10 matrix is,
    // and the smaller factor is the one worth reporting.
    let cert = match auto.cert() {
        Ok(c) => c,
        Err(Error::NotQuasiUnipotent(big)) => {
            if let Some(data) = model.torus_data() {
                if let Err(Error::NotQuasiUnipotent(small)) =
                    crate::spectral::certify(&data.a)
                {
                    return Err(Error::NotQuasiUnipotent(small));
                }
            }
            return Err(Error::NotQuasiUnipotent(big));
        }
        Err(e) => return Err(e),
    };
    let certification = CertSummary {
        order_m: cert.order_m,
        k: cert.k,
        k_even: cert.k_even,
        jordan_partition: cert.jordan_partition.clone(),
        cyclotomic_factors: cert.cyclotomic_factors.clone(),
    };

    let growth = growth::plov(model, auto)?;
    let verdict = bound_report(model, auto, &growth)?;

    let mut findings: Vec<String> = verdict
        .failures()
        .iter()
        .map(|c| format!("bound {} failed: {}", c.tag, c.statement))
        .collect();

    let filtration = if opts.filtration {
        let candidates = canonical_candidates(model, auto)?;
        let seq = canonical_sequence(model, auto)?;
        let verification = verify_quasi_nef(model, auto, &seq)?;
        // The canonical ladder is a guess; the theory promises a quasi-nef
        // sequence exists, not that this one is it. When the prefix checks
        // fail there is no filtration to take, and that is not a violation.
        let report = if verification.prefixes_hold() {
            let rep = filtration_spaces(model, auto, &seq)?;
            if !rep.matches_k {
                findings.push(format!(
                    "filtration jump count gives {} but the action has k = {}",
                    rep.k_from_jumps, cert.k
                ));
            }
            Some(rep)
        } else {
            None
        };
        Some(FiltrationSection {
            candidates,
            verification,
            report,
        })
    } else {
        None
    };

    let diagnostics = if opts.diagnostics {
        let rep = crate::filtration::vanishing_diagnostics(model, auto)?;
        findings.extend(
            rep.failures
                .iter()
                .map(|f| format!("vanishing diagnostic failed: {f}")),
        );
        Some(rep)
    } else {
        None
    };

    let oracle = if opts.oracle {
        let rep = growth::oracle_check(model, auto, &growth.poly)?;
        if !rep.agreed {
            return Err(Error::Integrity(
                "interpolated growth polynomial disagrees with the expansion".into(),
            ));
        }
        Some(rep)
    } else {
        None
    };

    let status = if findings.is_empty() {
        "ok".to_string()
    } else {
        "hypothesis-violation".to_string()
    };

    Ok(AnalysisReport {
        d: verdict.d,
        k: verdict.k,
        plov: verdict.plov,
        gkdim: verdict.gkdim,
        checks: verdict.checks,
        model: ModelSummary {
            kind: model.kind(),
            d: model.d(),
            h: model.h(),
            geometric: model.is_geometric(),
            basis: model.basis_labels().to_vec(),
        },
        certification,
        growth,
        validation,
        filtration,
        diagnostics,
        oracle,
        findings,
        status,
    })
}
