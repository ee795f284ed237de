//! Validation, Obs, termination proof, independent check, loop search.

use std::fmt;

use streamwd::engine::{find_loop, standard_seeds, DEFAULT_LOOP_DEPTH, DEFAULT_LOOP_WIDTH};
use streamwd::spec::{
    is_data_independent, validate, StreamSpec, ValidationReport, Verdict as Properness,
};
use streamwd::termination::{
    check_certificate, prove_termination, Certificate, CertificateCheck, ProverConfig,
    ProverOutcome,
};
use streamwd::transform::{obs, rename_observers, unfold_all};

use crate::tpdb::to_tpdb;

#[derive(Clone, Debug, Default)]
pub struct ProveOptions {
    pub prover: ProverConfig,
    /// Apply every unfolding before validating.
    pub unfold: bool,
}

#[derive(Clone, Debug)]
pub enum Verdict {
    /// The certificate has passed [`check_certificate`].
    WellDefined {
        certificate: Certificate,
        data_independent: bool,
        unfolded: Vec<(String, usize)>,
    },
    Unknown {
        reasons: Vec<String>,
        /// Obs(R_s) ∪ R_d for an external prover, when it could be built.
        tpdb: Option<String>,
        loop_witness: Option<String>,
    },
    Improper(ValidationReport),
}

impl Verdict {
    pub fn exit_code(&self) -> i32 {
        match self {
            Verdict::WellDefined { .. } => 0,
            Verdict::Improper(_) => 1,
            Verdict::Unknown { .. } => 2,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::WellDefined {
                certificate,
                data_independent,
                unfolded,
            } => {
                for (g, i) in unfolded {
                    writeln!(f, "unfolded {g} at stream argument {i}")?;
                }
                writeln!(
                    f,
                    "well-defined: Obs(R_s) ∪ R_d terminates (certificate with {} step(s), independently checked)",
                    certificate.steps.len()
                )?;
                if *data_independent {
                    writeln!(
                        f,
                        "data-independent: the model is unique over all streams D^ω, not only over the streams denoted by ground terms"
                    )?;
                }
                Ok(())
            }
            Verdict::Unknown {
                reasons,
                loop_witness,
                ..
            } => {
                writeln!(
                    f,
                    "unknown: termination of Obs(R_s) ∪ R_d was not established"
                )?;
                for r in reasons {
                    writeln!(f, "  {r}")?;
                }
                if let Some(w) = loop_witness {
                    writeln!(f, "infinite reduction found in Obs(R_s) ∪ R_d (non-termination does not imply ill-definedness):")?;
                    for line in w.lines() {
                        writeln!(f, "  {line}")?;
                    }
                }
                Ok(())
            }
            Verdict::Improper(report) => {
                write!(f, "{report}")?;
                writeln!(
                    f,
                    "the specification is not proper; nothing is claimed about its models"
                )
            }
        }
    }
}

/// Never yields `WellDefined` unless the certificate was checked here.
pub fn prove_spec(spec: &StreamSpec, opts: &ProveOptions) -> Verdict {
    let (spec, unfolded) = if opts.unfold {
        match unfold_all(spec) {
            Ok(r) => r,
            Err(e) => {
                return Verdict::Unknown {
                    reasons: vec![format!("unfolding failed: {e}")],
                    tpdb: None,
                    loop_witness: None,
                }
            }
        }
    } else {
        (spec.clone(), Vec::new())
    };
    let report = validate(&spec);
    match report.verdict {
        Properness::Proper => {}
        Properness::Improper => return Verdict::Improper(report),
        Properness::IllFormed => {
            let mut reasons = vec!["properness could not be decided".to_string()];
            reasons.extend(report.errors().map(|e| e.to_string()));
            return Verdict::Unknown {
                reasons,
                tpdb: None,
                loop_witness: None,
            };
        }
    }
    let system = match obs(&spec) {
        Ok(s) => s,
        Err(e) => {
            return Verdict::Unknown {
                reasons: vec![format!("Obs could not be built: {e}")],
                tpdb: None,
                loop_witness: None,
            }
        }
    };
    let trs = system.with_data();
    let mut reasons = Vec::new();
    match prove_termination(&trs, &opts.prover) {
        ProverOutcome::Proved(certificate) => match check_certificate(&trs, &certificate) {
            CertificateCheck::Valid => {
                return Verdict::WellDefined {
                    certificate,
                    data_independent: is_data_independent(&spec),
                    unfolded,
                }
            }
            CertificateCheck::Invalid { step, reason } => {
                let at = step.map(|s| format!(" at step {s}")).unwrap_or_default();
                reasons.push(format!(
                    "the prover's certificate was rejected{at}: {reason}"
                ));
            }
        },
        ProverOutcome::Unknown { reason, open_pairs } => {
            reasons.push(format!(
                "prover gave up ({reason}) with {} open dependency pair(s)",
                open_pairs.len()
            ));
        }
    }
    let renamed = rename_observers(&spec).0;
    let seeds = standard_seeds(renamed.sigma_s());
    let loop_witness = find_loop(&trs, &seeds, DEFAULT_LOOP_DEPTH, DEFAULT_LOOP_WIDTH)
        .filter(|w| w.replay(&trs))
        .map(|w| w.render(&trs));
    Verdict::Unknown {
        reasons,
        tpdb: Some(to_tpdb(&trs)),
        loop_witness,
    }
}
