use brunnian::construction::{build_instance, verdict_for, Verdict};
use brunnian::perm::{certify_matrix_group, GroupCertificate, PointEncoding};
use brunnian::poly::{first_primitive, parse_poly};
use brunnian::{Matrix, Polynomial, PrimeField};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// Certificates for `<G_1, ..., G_n>` and for `<C, G>`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupCheck {
    pub p: u64,
    pub n: usize,
    pub f: String,
    /// `(p, n)` outside the theorem's hypotheses; the certificates are then
    /// only observations.
    pub exploratory: bool,
    pub conjugates: GroupCertificate,
    pub gill: GroupCertificate,
    pub warnings: Vec<String>,
}

impl GroupCheck {
    pub fn generates(&self) -> bool {
        self.conjugates.equal
    }
}

/// `<C_f, C_g>` against `|GL_n(F_p)|`.
pub fn gill_certificate(f: &Polynomial, g: &Polynomial, point_budget: u64) -> Result<GroupCertificate, CliError> {
    let gens = [Matrix::companion(f)?, Matrix::companion(g)?];
    let (_, cert, _) = certify_matrix_group(&gens, point_budget)?;
    Ok(cert)
}

/// Certifies generation for `f` (or the first primitive polynomial when
/// `f_text` is `None`). The point budget is checked before any search.
pub fn run_group_check(p: u64, n: usize, f_text: Option<&str>, point_budget: u64) -> Result<GroupCheck, CliError> {
    let field = PrimeField::new(p)?;
    let verdict = verdict_for(p, n)?;
    PointEncoding::new(field, n, point_budget)?;
    let mut warnings = Vec::new();
    let f = match f_text {
        Some(text) => {
            let parsed = parse_poly(text, field)?;
            warnings.extend(parsed.warnings);
            if parsed.poly.degree() != Some(n) {
                return Err(CliError::Invalid(format!("{} does not have degree {n}", parsed.poly)));
            }
            parsed.poly
        }
        None => first_primitive(field, n)?,
    };
    let inst = build_instance(&f)?;
    let (_, conjugates, _) = certify_matrix_group(inst.conjugates(), point_budget)?;
    let gill = gill_certificate(&f, &Polynomial::x_pow_minus_one(field, n), point_budget)?;
    let exploratory = verdict != Verdict::True;
    if exploratory {
        warnings.push(format!(
            "p = {p}, n = {n} is outside the theorem's hypotheses; result is exploratory"
        ));
    }
    Ok(GroupCheck {
        p,
        n,
        f: f.to_string(),
        exploratory,
        conjugates,
        gill,
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_case_generates() {
        let check = run_group_check(5, 3, None, 200).unwrap();
        assert!(!check.exploratory);
        assert_eq!(check.conjugates.order, "1488000");
        assert!(check.generates() && check.gill.equal);
    }

    #[test]
    fn collapsed_case_is_exploratory() {
        let check = run_group_check(5, 4, None, 1000).unwrap();
        assert!(check.exploratory);
        assert_eq!(check.conjugates.target_order, "116064000000");
    }

    #[test]
    fn budget_and_input_errors() {
        assert!(matches!(run_group_check(5, 18, None, 200_000), Err(CliError::Infeasible(_))));
        assert!(matches!(run_group_check(5, 3, Some("x^4+x+2"), 200), Err(CliError::Invalid(_))));
        assert!(matches!(run_group_check(5, 3, Some("x^3+1"), 200), Err(CliError::Invalid(_))));
        assert!(matches!(run_group_check(6, 3, None, 200), Err(CliError::Invalid(_))));
    }
}
