use serde::{Deserialize, Serialize};

use super::{condition_check, verdict_for, ConstructionInstance, Verdict};
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::perm::{certify_matrix_group, GroupCertificate, DEFAULT_POINT_BUDGET};
use crate::poly::{parse_poly, Polynomial};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Build a stabilizer chain for `<G_1, ..., G_n>`.
    pub group_check: bool,
    /// Largest `p^n - 1` the group check accepts.
    pub point_budget: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            group_check: false,
            point_budget: DEFAULT_POINT_BUDGET,
        }
    }
}

/// Full verification record for one `(p, n, f)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureReport {
    pub p: u64,
    pub n: usize,
    pub f: String,
    pub primitive: bool,
    pub minus_a0: u64,
    pub minus_a0_pow_n: u64,
    pub cond_a0: bool,
    pub cond_a0n: bool,
    pub k_poly: Option<String>,
    pub k_is_companion: bool,
    pub k_ne_c: bool,
    pub k_const_nonzero: bool,
    pub verdict: Verdict,
    pub warnings: Vec<String>,
    pub group_certificate: Option<GroupCertificate>,
    /// Algebraic identities that failed to hold. Empty on every correct run,
    /// and then omitted from serialized output.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub identity_failures: Vec<String>,
}

impl ConjectureReport {
    pub fn identities_hold(&self) -> bool {
        self.identity_failures.is_empty()
    }
}

/// Parses `text` over `F_p` and verifies it; parse warnings are carried into
/// the report.
pub fn verify_text(text: &str, field: PrimeField, options: &VerifyOptions) -> Result<ConjectureReport> {
    let parsed = parse_poly(text, field)?;
    let mut report = verify_instance(&parsed.poly, options)?;
    let mut warnings = parsed.warnings;
    warnings.append(&mut report.warnings);
    report.warnings = warnings;
    Ok(report)
}

/// Runs the whole pipeline for one polynomial: primitivity, the two
/// conditions, `K` by both routes, companion extraction, `g(0) != 0`,
/// `K != C`, and optionally the stabilizer-chain certificate.
///
/// A non-primitive `f` still gets a report (verdict `NotDecided`, with a
/// warning); `n < 3` or a non-monic `f` is an error.
pub fn verify_instance(f: &Polynomial, options: &VerifyOptions) -> Result<ConjectureReport> {
    let field = f.field();
    let p = field.modulus();
    let inst = ConstructionInstance::assemble(f)?;
    let n = inst.n();
    let mut warnings = Vec::new();
    let mut failures = Vec::new();

    let primitivity = f.primitivity()?;
    let primitive = primitivity.is_primitive();
    if !primitive {
        warnings.push(format!("{f} is not primitive over F_{p}: {primitivity}"));
    }

    let cond = condition_check(field, n, f)?;

    let k = inst.k_product();
    if k != inst.k_closed_form() {
        failures.push("C G_n ... G_1 != C (G^-1 C)^n".to_string());
    }
    if inst.g_inv_c() != inst.expected_g_inv_c() {
        failures.push("G^-1 C does not have the near-identity shape".to_string());
    }
    if cond.cond_a0 && !cond.minus_a0.is_zero() {
        // panics inside eigen_qd would mean Q^-1 (G^-1 C) Q != D
        if let Err(e) = inst.eigen_qd() {
            failures.push(format!("diagonalization failed: {e}"));
        }
    } else if !cond.cond_a0 {
        warnings.push("-a0 = 1: diagonalization branch skipped".to_string());
    }
    if !inst.k_shifts_basis(&k) {
        failures.push("K E_k != E_(k+1) for some k < n".to_string());
    }

    let k_poly = match k.as_companion_poly() {
        Ok(g) => Some(g),
        Err(Error::NotCompanion) => None,
        Err(e) => return Err(e),
    };
    match &k_poly {
        Some(g) if *g != inst.expected_k_poly() => {
            failures.push(format!("K = companion({g}), expected {}", inst.expected_k_poly()))
        }
        None => failures.push("K is not companion-shaped".to_string()),
        _ => {}
    }
    let k_ne_c = k != *inst.c();
    if k_ne_c != cond.cond_a0n {
        failures.push("K != C does not match (-a0)^n != 1".to_string());
    }
    if !k_ne_c {
        warnings.push("K = C: (-a0)^n = 1, so D^n = I and the construction collapses".to_string());
    }
    let k_const_nonzero = k_poly.as_ref().is_some_and(|g| !g.coeff(0).is_zero());

    let decided = verdict_for(p, n)?;
    let verdict = if p >= 5 && primitive && cond.cond_a0 && cond.cond_a0n {
        Verdict::True
    } else {
        Verdict::NotDecided
    };
    if primitive && verdict != decided {
        failures.push(format!(
            "verdict {verdict} disagrees with the (p, n) rule ({decided})"
        ));
    }

    let group_certificate = if options.group_check {
        let (chain, cert, encoding) =
            certify_matrix_group(inst.conjugates(), options.point_budget)?;
        let k_perm = crate::perm::to_permutation(&k, &encoding)?;
        if !chain.contains(&k_perm)? {
            failures.push("K is not a member of <G_1, ..., G_n>".to_string());
        }
        if !cert.equal {
            warnings.push(format!(
                "<G_1, ..., G_n> has order {} < |GL_{n}(F_{p})| = {}",
                cert.order, cert.target_order
            ));
        }
        Some(cert)
    } else {
        None
    };

    Ok(ConjectureReport {
        p,
        n,
        f: f.to_string(),
        primitive,
        minus_a0: cond.minus_a0.value(),
        minus_a0_pow_n: cond.minus_a0_pow_n.value(),
        cond_a0: cond.cond_a0,
        cond_a0n: cond.cond_a0n,
        k_poly: k_poly.map(|g| g.to_string()),
        k_is_companion: k.as_companion_poly().is_ok(),
        k_ne_c,
        k_const_nonzero,
        verdict,
        warnings,
        group_certificate,
        identity_failures: failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn decided_instance() {
        let r = verify_text("x^7+x^6+2", k(5), &VerifyOptions::default()).unwrap();
        assert_eq!(r.verdict, Verdict::True);
        assert!(r.primitive && r.k_is_companion && r.k_ne_c && r.k_const_nonzero);
        assert!(r.identities_hold(), "{:?}", r.identity_failures);
        // g(0) = a0 (-a0)^7 = 2 * 2 = 4
        assert!(r.k_poly.as_deref().unwrap().ends_with("+4"));
    }

    #[test]
    fn collapsed_instance() {
        let r = verify_text("x^8+x^5+x^3+3", k(5), &VerifyOptions::default()).unwrap();
        assert_eq!(r.verdict, Verdict::NotDecided);
        assert!(!r.k_ne_c);
        assert!(r.warnings.iter().any(|w| w.contains("K = C")));
        assert!(r.identities_hold());
    }

    #[test]
    fn group_check_on_small_instance() {
        let f = crate::poly::first_primitive(k(5), 3).unwrap();
        let opts = VerifyOptions {
            group_check: true,
            point_budget: 200,
        };
        let r = verify_instance(&f, &opts).unwrap();
        let cert = r.group_certificate.unwrap();
        assert_eq!(cert.order, "1488000");
        assert!(cert.equal);
        assert!(r.identity_failures.is_empty());
    }

    #[test]
    fn group_check_over_budget_is_infeasible() {
        let opts = VerifyOptions {
            group_check: true,
            point_budget: 100,
        };
        let f = crate::poly::first_primitive(k(5), 3).unwrap();
        assert!(matches!(verify_instance(&f, &opts), Err(Error::Infeasible(_))));
    }

    #[test]
    fn non_primitive_still_reports() {
        // x^3+1 = (x+1)(x^2-x+1) over F_5
        let r = verify_text("x^3+1", k(5), &VerifyOptions::default()).unwrap();
        assert!(!r.primitive);
        assert_eq!(r.verdict, Verdict::NotDecided);
        assert!(r.warnings.iter().any(|w| w.contains("not primitive")));
        assert!(r.identities_hold());
    }

    #[test]
    fn small_degree_is_rejected() {
        assert!(verify_text("x^2+x+2", k(5), &VerifyOptions::default()).is_err());
    }

    #[test]
    fn duplicate_term_warning_is_kept() {
        let r = verify_text("x^3+x^2+x^2+2", k(5), &VerifyOptions::default()).unwrap();
        assert!(r.warnings[0].contains("duplicate"));
    }

    #[test]
    fn json_round_trip() {
        let f = crate::poly::first_primitive(k(7), 3).unwrap();
        let opts = VerifyOptions {
            group_check: true,
            point_budget: 1000,
        };
        let r = verify_instance(&f, &opts).unwrap();
        let text = serde_json::to_string(&r).unwrap();
        assert!(!text.contains("identity_failures"));
        let back: ConjectureReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
        assert_eq!(serde_json::to_string(&back).unwrap(), text);
    }
}
