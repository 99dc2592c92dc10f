use brunnian::construction::{verify_text, ConjectureReport, Verdict, VerifyOptions};
use brunnian::PrimeField;

use crate::error::{CliError, EXIT_NOT_DECIDED, EXIT_TRUE};

pub fn run_verify(p: u64, f_text: &str, group_check: bool, point_budget: u64) -> Result<ConjectureReport, CliError> {
    let field = PrimeField::new(p)?;
    let options = VerifyOptions {
        group_check,
        point_budget,
    };
    Ok(verify_text(f_text, field, &options)?)
}

/// 0 only for a decided instance whose identities (and certificate, when
/// requested) all hold.
pub fn verify_exit_code(report: &ConjectureReport) -> i32 {
    let certified = report.group_certificate.as_ref().is_none_or(|c| c.equal);
    if report.verdict == Verdict::True && report.identities_hold() && certified {
        EXIT_TRUE
    } else {
        EXIT_NOT_DECIDED
    }
}
