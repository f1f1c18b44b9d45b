//! Textual form: terms in descending graded-lex order joined by ` + `, each
//! term `num/den*z1^e1*z2^e2*w1^e3*w2^e4*c^e5` with every variable written
//! out. The zero polynomial is `0`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use super::{Monomial, SparsePoly, Vars};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse polynomial term `{term}`: {reason}")]
pub struct ParsePolyError {
    term: String,
    reason: &'static str,
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms().rev().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{}/{}", c.numer(), c.denom())?;
            for (name, e) in self.vars().iter().zip(m.exponents()) {
                write!(f, "*{name}^{e}")?;
            }
        }
        Ok(())
    }
}

impl SparsePoly {
    /// Parses the textual form written by `Display`.
    pub fn parse(vars: Vars, s: &str) -> Result<SparsePoly, ParsePolyError> {
        let s = s.trim();
        if s == "0" {
            return Ok(SparsePoly::zero(vars));
        }
        let mut terms = Vec::new();
        for term in s.split(" + ") {
            let err = |reason| ParsePolyError {
                term: term.to_string(),
                reason,
            };
            let mut parts = term.split('*');
            let coeff = parts.next().ok_or_else(|| err("empty term"))?;
            let (n, d) = coeff
                .split_once('/')
                .ok_or_else(|| err("coefficient is not num/den"))?;
            let n: BigInt = n.parse().map_err(|_| err("bad numerator"))?;
            let d: BigInt = d.parse().map_err(|_| err("bad denominator"))?;
            if d == BigInt::from(0) {
                return Err(err("zero denominator"));
            }
            let mut exps = Vec::with_capacity(vars.len());
            for name in vars {
                let factor = parts.next().ok_or_else(|| err("missing variable"))?;
                let (v, e) = factor
                    .split_once('^')
                    .ok_or_else(|| err("missing exponent"))?;
                if v != *name {
                    return Err(err("unexpected variable name"));
                }
                exps.push(e.parse::<u16>().map_err(|_| err("bad exponent"))?);
            }
            if parts.next().is_some() {
                return Err(err("trailing factors"));
            }
            terms.push((Monomial::new(exps), BigRational::new(n, d)));
        }
        Ok(SparsePoly::from_terms(vars, terms))
    }
}

#[cfg(test)]
mod tests {
    use super::super::{int, rat, LC_VARS};
    use super::*;

    #[test]
    fn display_format() {
        let z1 = SparsePoly::var(LC_VARS, 0);
        let c = SparsePoly::var(LC_VARS, 4);
        let p = &(&z1.pow(2) * &c).scale(&rat(-3, 2)) + &SparsePoly::constant(LC_VARS, int(1));
        assert_eq!(
            p.to_string(),
            "-3/2*z1^2*z2^0*w1^0*w2^0*c^1 + 1/1*z1^0*z2^0*w1^0*w2^0*c^0"
        );
        assert_eq!(SparsePoly::parse(LC_VARS, &p.to_string()).unwrap(), p);
        assert_eq!(SparsePoly::zero(LC_VARS).to_string(), "0");
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(SparsePoly::parse(LC_VARS, "1/1*z1^0").is_err());
        assert!(SparsePoly::parse(LC_VARS, "1/0*z1^0*z2^0*w1^0*w2^0*c^0").is_err());
        assert!(SparsePoly::parse(LC_VARS, "x/1*z1^0*z2^0*w1^0*w2^0*c^0").is_err());
    }
}
