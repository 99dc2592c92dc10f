//! Parser for the table notation, e.g. `x^8+x^5+x^3+3`.
//!
//! ```text
//! poly  := term ('+' term)*
//! term  := coeff | coeff? '*'? 'x' ('^' nat)?
//! coeff := nat
//! ```
//!
//! Whitespace between tokens is ignored and `X` is accepted for `x`.
//! Repeated exponents are summed mod p and reported as warnings.

use std::collections::BTreeMap;

use super::Polynomial;
use crate::error::{Error, Result};
use crate::field::PrimeField;

/// Largest exponent accepted by the parser.
pub const MAX_EXPONENT: usize = 1 << 16;

/// A parsed polynomial together with any non-fatal diagnostics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedPoly {
    pub poly: Polynomial,
    pub warnings: Vec<String>,
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            position: self.pos,
            message: message.into(),
        })
    }

    /// Reads a run of digits, folding each into `acc` with `step`.
    fn digits<T>(&mut self, init: T, mut step: impl FnMut(T, u8) -> Option<T>) -> Result<Option<T>> {
        self.skip_ws();
        let start = self.pos;
        let mut acc = init;
        while let Some(&b) = self.bytes.get(self.pos) {
            if !b.is_ascii_digit() {
                break;
            }
            acc = match step(acc, b - b'0') {
                Some(v) => v,
                None => {
                    self.pos = start;
                    return self.error("number too large");
                }
            };
            self.pos += 1;
        }
        Ok((self.pos > start).then_some(acc))
    }
}

/// Parses `text` over `F_p`.
pub fn parse_poly(text: &str, field: PrimeField) -> Result<ParsedPoly> {
    let p = field.modulus();
    let mut cur = Cursor {
        bytes: text.as_bytes(),
        pos: 0,
    };
    if cur.peek().is_none() {
        return cur.error("empty polynomial");
    }
    let mut terms: BTreeMap<usize, (u64, usize)> = BTreeMap::new();
    let mut warnings = Vec::new();
    loop {
        let term_start = {
            cur.skip_ws();
            cur.pos
        };
        // coefficients reduce mod p digit by digit, so any length is fine
        let coeff = cur.digits(0u64, |acc, d| Some((acc * 10 + d as u64) % p))?;
        let has_x = matches!(cur.peek(), Some(b'x' | b'X' | b'*'));
        let exponent = if has_x {
            if cur.eat(b'*') && coeff.is_none() {
                return cur.error("'*' must follow a coefficient");
            }
            if !(cur.eat(b'x') || cur.eat(b'X')) {
                return cur.error("expected 'x'");
            }
            if cur.eat(b'^') {
                match cur.digits(0usize, |acc, d| {
                    acc.checked_mul(10)?
                        .checked_add(d as usize)
                        .filter(|&e| e <= MAX_EXPONENT)
                })? {
                    Some(e) => e,
                    None => return cur.error("expected exponent after '^'"),
                }
            } else {
                1
            }
        } else {
            if coeff.is_none() {
                return cur.error("expected a coefficient or 'x'");
            }
            0
        };
        let coeff = coeff.unwrap_or(1 % p);
        match terms.get_mut(&exponent) {
            Some((c, _)) => {
                *c = (*c + coeff) % p;
                warnings.push(format!(
                    "duplicate term for x^{exponent} at position {term_start}; coefficients summed mod {p}"
                ));
            }
            None => {
                terms.insert(exponent, (coeff, term_start));
            }
        }
        match cur.peek() {
            None => break,
            Some(b'+') => {
                cur.pos += 1;
            }
            Some(c) => return cur.error(format!("unexpected character '{}'", c as char)),
        }
    }
    let degree = terms.keys().next_back().copied().unwrap_or(0);
    let mut coeffs = vec![0u64; degree + 1];
    for (e, (c, _)) in terms {
        coeffs[e] = c;
    }
    Ok(ParsedPoly {
        poly: Polynomial::new(field, coeffs),
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn k(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn table_row_parses() {
        let parsed = parse_poly("x^7+x^6+2", k(5)).unwrap();
        assert_eq!(parsed.poly.coeffs(), &[2, 0, 0, 0, 0, 0, 1, 1]);
        assert!(parsed.warnings.is_empty());
    }

    #[test]
    fn zero_parses() {
        let parsed = parse_poly("0", k(5)).unwrap();
        assert!(parsed.poly.is_zero());
    }

    #[test]
    fn duplicate_exponents_are_summed_with_warning() {
        let parsed = parse_poly("x^15+2x^5+4x^5+3x^3+3x^2+4x+3", k(5)).unwrap();
        assert_eq!(parsed.poly.degree(), Some(15));
        assert_eq!(parsed.poly.coeff(5).value(), 1);
        assert_eq!(parsed.poly.coeff(3).value(), 3);
        assert_eq!(parsed.warnings.len(), 1);
        assert!(parsed.warnings[0].contains("x^5"));
    }

    #[test]
    fn accepts_star_and_whitespace() {
        let a = parse_poly(" 3 * x ^ 2 + X + 12 ", k(5)).unwrap().poly;
        assert_eq!(a.coeffs(), &[2, 1, 3]);
    }

    #[test]
    fn errors_carry_positions() {
        let cases = [
            ("", 0),
            ("   ", 3),
            ("x^", 2),
            ("x^7+", 4),
            ("x^7-1", 3),
            ("2y", 1),
            ("*x", 1),
            ("x^99999999999999999999", 2),
            ("x^70000", 2),
        ];
        for (text, pos) in cases {
            match parse_poly(text, k(5)) {
                Err(Error::Parse { position, .. }) => assert_eq!(position, pos, "{text:?}"),
                other => panic!("{text:?}: expected parse error, got {other:?}"),
            }
        }
    }

    fn arb_poly() -> impl Strategy<Value = Polynomial> {
        (prop::sample::select(vec![2u64, 3, 5, 7, 97]), prop::collection::vec(0u64..200, 0..20))
            .prop_map(|(p, c)| Polynomial::new(k(p), c))
    }

    proptest! {
        #[test]
        fn print_parse_round_trip(f in arb_poly()) {
            let text = f.to_string();
            let back = parse_poly(&text, f.field()).unwrap();
            prop_assert_eq!(back.poly, f);
            prop_assert!(back.warnings.is_empty());
        }
    }
}
