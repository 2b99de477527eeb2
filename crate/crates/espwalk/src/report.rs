//! Report assembly: one JSON object per analyzed connection set, carrying
//! the closed-form verdicts and, on request, the numeric-oracle
//! confirmation block with times and residuals.
//!
//! An oracle confirmation is only ever reported together with the residual
//! of the run that produced it; agreement is never asserted without having
//! built the transition matrix.

use serde::Serialize;

use crate::cayley::{ConnectionSet, SpectrumSummary, ValidationResult};
use crate::chartab::projections_for;
use crate::criteria::{
    fr_classify, mixing_check, phi_sets, pst_decision, DyadicPi, FrReport, MixingReport,
    PhiSets, PstReport,
};
use crate::group::{ExtraspecialGroup, IsoType};
use crate::walk::{
    detect_fr, detect_pst, eigenvalue_support_bf, scheme_structure_check,
    strongly_cospectral_bf, transition, Cospectrality, VerdictKind, NEGATIVE_PST_TOL,
};
use crate::{Error, Result};

/// Version of every JSON document this crate emits.
pub const SCHEMA_VERSION: u32 = 1;

/// Options for [`analyze`].
#[derive(Clone, Debug)]
pub struct AnalyzeOptions {
    pub iso_type: IsoType,
    /// Run the numeric oracle and attach a confirmation block.
    pub verify: bool,
    pub tol: f64,
    /// Additional times at which to report the oracle verdict.
    pub extra_times: Vec<DyadicPi>,
    /// Require the connection set to generate the group.
    pub strict: bool,
    /// Largest group order the oracle will build matrices for.
    pub max_order: u64,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        Self {
            iso_type: IsoType::Plus,
            verify: false,
            tol: crate::walk::DEFAULT_VERDICT_TOL,
            extra_times: Vec::new(),
            strict: true,
            max_order: 512,
        }
    }
}

/// Complete analysis of one connection set.
#[derive(Clone, Debug, Serialize)]
pub struct AnalysisReport {
    pub schema: u32,
    pub group: GroupDescriptor,
    pub connection: ConnectionSet,
    pub validation: ValidationResult,
    pub spectrum: SpectrumSummary,
    pub phi: PhiSets,
    pub pst: PstReport,
    pub fr: FrReport,
    pub mixing: MixingReport,
    pub oracle: Option<OracleBlock>,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct GroupDescriptor {
    pub n: u32,
    pub iso_type: IsoType,
    pub order: u64,
}

/// Results of running the numeric oracle against the closed-form verdicts.
#[derive(Clone, Debug, Serialize)]
pub struct OracleBlock {
    pub tol: f64,
    pub confirmations: Vec<Confirmation>,
    pub cospectrality: CospectralityCheck,
    /// Whether the eigenvalue support of the identity vertex equals the
    /// full spectrum.
    pub support_full: bool,
    pub all_agree: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Confirmation {
    pub label: String,
    pub time: DyadicPi,
    pub time_radians: f64,
    pub expected: String,
    pub observed: String,
    pub residual: f64,
    /// For positive PST checks: whether the whole matrix has the
    /// association-scheme form `U = λ·L(z)`.
    pub scheme_form: Option<bool>,
    pub agrees: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CospectralityCheck {
    pub decision: bool,
    pub brute_force: bool,
    pub witness: Option<i64>,
    pub phi_plus_observed: Vec<i64>,
    pub phi_minus_observed: Vec<i64>,
    pub agrees: bool,
}

fn describe_verdict(kind: &VerdictKind) -> String {
    match kind {
        VerdictKind::Pst { target, phase } => {
            format!("pst(target={target}, phase={:.6}{:+.6}i)", phase.re, phase.im)
        }
        VerdictKind::Fr { alpha, beta, balanced } => format!(
            "fr(|alpha|={:.6}, |beta|={:.6}{})",
            alpha.norm(),
            beta.norm(),
            if *balanced { ", balanced" } else { "" }
        ),
        VerdictKind::None => "none".to_string(),
    }
}

/// Runs the full closed-form analysis of a connection set, with numeric
/// oracle confirmations when requested.
///
/// Returns a validation error when the set fails under the given
/// strictness, and a domain error when `verify` is set but the group order
/// exceeds `max_order`.
pub fn analyze(connection: &ConnectionSet, options: &AnalyzeOptions) -> Result<AnalysisReport> {
    let validation = connection.validate(options.strict);
    if !validation.ok {
        let reasons: Vec<String> = validation.failures.iter().map(|f| f.to_string()).collect();
        return Err(Error::Validation(reasons.join("; ")));
    }

    let n = connection.n();
    let order = 1u64 << (2 * n + 1);
    let pst = pst_decision(connection);
    let fr = fr_classify(connection);
    let report = AnalysisReport {
        schema: SCHEMA_VERSION,
        group: GroupDescriptor {
            n,
            iso_type: options.iso_type,
            order,
        },
        connection: connection.clone(),
        validation,
        spectrum: connection.spectrum(),
        phi: phi_sets(connection),
        pst,
        fr,
        mixing: mixing_check(2, n)?,
        oracle: None,
    };

    if !options.verify {
        return Ok(report);
    }
    if order > options.max_order {
        return Err(Error::Domain(format!(
            "group order {order} exceeds the oracle cap {}; raise ESPWALK_MAX_ORDER to override",
            options.max_order
        )));
    }

    let group = ExtraspecialGroup::new(n, options.iso_type)?;
    let projections = projections_for(connection, &group)?;
    let tol = options.tol;
    let mut confirmations = Vec::new();

    // Minimum-time PST check; negatives use the coarser rejection threshold.
    {
        let time = report.pst.min_time;
        let u_matrix = transition(&projections, time.radians())?;
        if report.pst.admits {
            let verdict = detect_pst(&u_matrix, 0, tol);
            let (agrees, scheme_form) = match verdict.kind {
                VerdictKind::Pst { target, .. } if target == 1 => {
                    (true, scheme_structure_check(&u_matrix, &group, tol))
                }
                _ => (false, false),
            };
            confirmations.push(Confirmation {
                label: "pst_min_time".into(),
                time,
                time_radians: time.radians(),
                expected: "pst(target=1)".into(),
                observed: describe_verdict(&verdict.kind),
                residual: verdict.residual,
                scheme_form: Some(scheme_form),
                agrees: agrees && scheme_form,
            });
        } else {
            let verdict = detect_pst(&u_matrix, 0, NEGATIVE_PST_TOL);
            let agrees = matches!(verdict.kind, VerdictKind::None);
            confirmations.push(Confirmation {
                label: "pst_min_time".into(),
                time,
                time_radians: time.radians(),
                expected: "none".into(),
                observed: describe_verdict(&verdict.kind),
                residual: verdict.residual,
                scheme_form: None,
                agrees,
            });
        }
    }

    if let Some(time) = report.fr.fr_min_time {
        let u_matrix = transition(&projections, time.radians())?;
        let verdict = detect_fr(&u_matrix, 0, 1, tol);
        confirmations.push(Confirmation {
            label: "fr_min_time".into(),
            time,
            time_radians: time.radians(),
            expected: "fr".into(),
            observed: describe_verdict(&verdict.kind),
            residual: verdict.residual,
            scheme_form: None,
            agrees: verdict.is_fr(),
        });
    }

    if let Some(time) = report.fr.balanced_time {
        let u_matrix = transition(&projections, time.radians())?;
        let verdict = detect_fr(&u_matrix, 0, 1, tol);
        let agrees = matches!(
            verdict.kind,
            VerdictKind::Fr { balanced: true, .. }
        );
        confirmations.push(Confirmation {
            label: "balanced_time".into(),
            time,
            time_radians: time.radians(),
            expected: "fr(balanced)".into(),
            observed: describe_verdict(&verdict.kind),
            residual: verdict.residual,
            scheme_form: None,
            agrees,
        });
    }

    for &time in &options.extra_times {
        let u_matrix = transition(&projections, time.radians())?;
        let pst_verdict = detect_pst(&u_matrix, 0, tol);
        let verdict = if pst_verdict.is_pst() {
            pst_verdict
        } else {
            detect_fr(&u_matrix, 0, 1, tol)
        };
        confirmations.push(Confirmation {
            label: format!("extra({time})"),
            time,
            time_radians: time.radians(),
            expected: "unspecified".into(),
            observed: describe_verdict(&verdict.kind),
            residual: verdict.residual,
            scheme_form: None,
            agrees: true,
        });
    }

    let cospectrality = {
        let decision = report.pst.strongly_cospectral;
        match strongly_cospectral_bf(&projections, 0, 1, tol) {
            Cospectrality::Yes { mut plus, mut minus } => {
                plus.sort_unstable();
                minus.sort_unstable();
                let observed_sets = plus.iter().copied().collect::<std::collections::BTreeSet<_>>()
                    == report.phi.plus
                    && minus.iter().copied().collect::<std::collections::BTreeSet<_>>()
                        == report.phi.minus;
                CospectralityCheck {
                    decision,
                    brute_force: true,
                    witness: None,
                    phi_plus_observed: plus,
                    phi_minus_observed: minus,
                    agrees: decision && observed_sets,
                }
            }
            Cospectrality::No { witness } => CospectralityCheck {
                decision,
                brute_force: false,
                witness: Some(witness),
                phi_plus_observed: Vec::new(),
                phi_minus_observed: Vec::new(),
                agrees: !decision,
            },
        }
    };

    let support_full = {
        let support = eigenvalue_support_bf(&projections, 0, 1e-9);
        let expected: std::collections::BTreeSet<i64> =
            report.spectrum.eigenvalues.keys().copied().collect();
        support == expected
    };

    let all_agree =
        confirmations.iter().all(|c| c.agrees) && cospectrality.agrees && support_full;
    let mut report = report;
    report.oracle = Some(OracleBlock {
        tol,
        confirmations,
        cospectrality,
        support_full,
        all_agree,
    });
    Ok(report)
}
