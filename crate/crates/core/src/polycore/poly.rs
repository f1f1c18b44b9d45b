use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Monomial, Vars};
use crate::error::{Error, Result};

/// Exact polynomial with rational coefficients in canonical form: no stored
/// coefficient is zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparsePoly {
    vars: Vars,
    terms: BTreeMap<Monomial, BigRational>,
}

impl SparsePoly {
    pub fn zero(vars: Vars) -> Self {
        SparsePoly {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(vars: Vars) -> Self {
        Self::constant(vars, BigRational::one())
    }

    pub fn constant(vars: Vars, value: BigRational) -> Self {
        Self::monomial(vars, Monomial::one(vars.len()), value)
    }

    pub fn monomial(vars: Vars, m: Monomial, coeff: BigRational) -> Self {
        assert_eq!(m.nvars(), vars.len(), "monomial arity does not match ring");
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(m, coeff);
        }
        SparsePoly { vars, terms }
    }

    /// The variable `x_i` itself.
    pub fn var(vars: Vars, i: usize) -> Self {
        assert!(i < vars.len(), "variable index {i} out of range");
        Self::monomial(vars, Monomial::var(vars.len(), i, 1), BigRational::one())
    }

    /// Builds a polynomial from arbitrary terms, merging duplicates and
    /// dropping zeros.
    pub fn from_terms(
        vars: Vars,
        terms: impl IntoIterator<Item = (Monomial, BigRational)>,
    ) -> Self {
        let mut p = Self::zero(vars);
        for (m, c) in terms {
            assert_eq!(m.nvars(), vars.len(), "monomial arity does not match ring");
            p.add_term(m, c);
        }
        p
    }

    pub fn vars(&self) -> Vars {
        self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Total degree; the zero polynomial has degree 0.
    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(Monomial::total_degree)
            .max()
            .unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms
            .keys()
            .map(|m| u32::from(m.exponent(var)))
            .max()
            .unwrap_or(0)
    }

    /// Maximum total degree over the given subset of variables.
    pub fn degree_in_vars(&self, vars: &[usize]) -> u32 {
        self.terms
            .keys()
            .map(|m| vars.iter().map(|&v| u32::from(m.exponent(v))).sum())
            .max()
            .unwrap_or(0)
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_ring(&self, other: &SparsePoly) {
        assert_eq!(self.vars, other.vars, "polynomials live in different rings");
    }

    pub fn scale(&self, k: &BigRational) -> SparsePoly {
        if k.is_zero() {
            return Self::zero(self.vars);
        }
        SparsePoly {
            vars: self.vars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> SparsePoly {
        let mut base = self.clone();
        let mut acc = Self::one(self.vars);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact partial derivative with respect to variable `var`.
    pub fn diff(&self, var: usize) -> SparsePoly {
        assert!(var < self.nvars(), "variable index {var} out of range");
        let mut out = Self::zero(self.vars);
        for (m, c) in &self.terms {
            let e = m.exponent(var);
            if e == 0 {
                continue;
            }
            out.add_term(
                m.with_exponent(var, e - 1),
                c * BigRational::from_integer(e.into()),
            );
        }
        out
    }

    /// Exact evaluation at a rational point.
    pub fn eval(&self, point: &[BigRational]) -> BigRational {
        assert_eq!(point.len(), self.nvars(), "point has wrong dimension");
        let powers = self.power_table(point, |x| x.clone(), BigRational::one);
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t *= &powers[v][e as usize];
                }
            }
            acc += t;
        }
        acc
    }

    fn power_table<T: Clone>(
        &self,
        point: &[T],
        conv: impl Fn(&T) -> T,
        one: impl Fn() -> T,
    ) -> Vec<Vec<T>>
    where
        for<'a> &'a T: Mul<&'a T, Output = T>,
    {
        (0..self.nvars())
            .map(|v| {
                let d = self.degree_in(v) as usize;
                let mut row = Vec::with_capacity(d + 1);
                row.push(one());
                for k in 1..=d {
                    let next = &row[k - 1] * &conv(&point[v]);
                    row.push(next);
                }
                row
            })
            .collect()
    }

    /// Substitutes every variable `x_i` by `images[i]`; all images must share
    /// a target ring, which becomes the ring of the result.
    pub fn substitute(&self, images: &[SparsePoly]) -> SparsePoly {
        assert_eq!(
            images.len(),
            self.nvars(),
            "one image per variable required"
        );
        let target = images[0].vars;
        for im in images {
            assert_eq!(im.vars, target, "images live in different rings");
        }
        let mut powers: Vec<Vec<SparsePoly>> = images
            .iter()
            .map(|im| vec![SparsePoly::one(target), im.clone()])
            .collect();
        let mut out = SparsePoly::zero(target);
        for (m, c) in &self.terms {
            let mut t = SparsePoly::constant(target, c.clone());
            for (v, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[v].len() <= e as usize {
                    let next = &powers[v][powers[v].len() - 1] * &images[v];
                    powers[v].push(next);
                }
                t = &t * &powers[v][e as usize];
            }
            out = out + t;
        }
        out
    }

    /// Splits `self = Σ_k coeffs[k] · x_var^k`; the coefficients are free of
    /// `var`.
    pub fn coefficients_in(&self, var: usize) -> Vec<SparsePoly> {
        let d = self.degree_in(var) as usize;
        let mut out = vec![Self::zero(self.vars); d + 1];
        for (m, c) in &self.terms {
            let e = m.exponent(var) as usize;
            out[e].add_term(m.with_exponent(var, 0), c.clone());
        }
        out
    }

    /// Pseudo-remainder of `self` by a divisor that is linear in `var`.
    ///
    /// With `d = d1·x + d0` and `k = deg_x(self)` the result `r` satisfies
    /// `d1^k · self = q · d + r` with `deg_x(r) = 0`, i.e. `r` is
    /// `d1^k · self` evaluated at `x = −d0/d1`.
    pub fn pseudo_rem_linear(&self, d: &SparsePoly, var: usize) -> Result<SparsePoly> {
        self.check_ring(d);
        let degree = d.degree_in(var);
        if degree != 1 {
            return Err(Error::Degree { var, degree });
        }
        let dc = d.coefficients_in(var);
        let (d0, d1) = (&dc[0], &dc[1]);
        let pc = self.coefficients_in(var);
        let k = pc.len() - 1;
        let minus_d0 = -d0;
        let mut d1_pow = SparsePoly::one(self.vars);
        let mut r = pc[k].clone();
        for i in (0..k).rev() {
            d1_pow = &d1_pow * d1;
            r = &(&r * &minus_d0) + &(&pc[i] * &d1_pow);
        }
        Ok(r)
    }

    /// `den^k · self|_{x_var = num/den}` with `k = deg_var(self)`, which is a
    /// polynomial whenever `num` and `den` are.
    pub fn clear_fraction(&self, var: usize, num: &SparsePoly, den: &SparsePoly) -> SparsePoly {
        self.check_ring(num);
        self.check_ring(den);
        let pc = self.coefficients_in(var);
        let k = pc.len() - 1;
        let mut num_pows = vec![SparsePoly::one(self.vars)];
        let mut den_pows = vec![SparsePoly::one(self.vars)];
        for j in 1..=k {
            num_pows.push(&num_pows[j - 1] * num);
            den_pows.push(&den_pows[j - 1] * den);
        }
        let mut out = SparsePoly::zero(self.vars);
        for (j, cj) in pc.iter().enumerate() {
            if cj.is_zero() {
                continue;
            }
            out = out + &(cj * &num_pows[j]) * &den_pows[k - j];
        }
        out
    }

    /// Exact division by a polynomial known to divide `self`.
    ///
    /// Uses multivariate long division under the graded-lex order; returns
    /// `None` if the remainder is nonzero.
    pub fn div_exact(&self, divisor: &SparsePoly) -> Option<SparsePoly> {
        self.check_ring(divisor);
        let (lead_m, lead_c) = divisor.terms.iter().next_back()?;
        let mut rem = self.clone();
        let mut quot = SparsePoly::zero(self.vars);
        while let Some((m, c)) = rem.terms.iter().next_back() {
            let e: Option<Vec<u16>> = m
                .exponents()
                .iter()
                .zip(lead_m.exponents())
                .map(|(a, b)| a.checked_sub(*b))
                .collect();
            let e = Monomial::new(e?);
            let q = c / lead_c;
            let t = SparsePoly::monomial(self.vars, e, q);
            rem = &rem - &(&t * divisor);
            quot = quot + t;
        }
        Some(quot)
    }

    /// Largest absolute coefficient, or zero for the zero polynomial.
    pub fn max_abs_coeff(&self) -> BigRational {
        self.terms
            .values()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(BigRational::zero)
    }
}

impl<'a> Add<&'a SparsePoly> for &'a SparsePoly {
    type Output = SparsePoly;
    fn add(self, rhs: &'a SparsePoly) -> SparsePoly {
        self.check_ring(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Add for SparsePoly {
    type Output = SparsePoly;
    fn add(mut self, rhs: SparsePoly) -> SparsePoly {
        self.check_ring(&rhs);
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl<'a> Sub<&'a SparsePoly> for &'a SparsePoly {
    type Output = SparsePoly;
    fn sub(self, rhs: &'a SparsePoly) -> SparsePoly {
        self.check_ring(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Sub for SparsePoly {
    type Output = SparsePoly;
    fn sub(self, rhs: SparsePoly) -> SparsePoly {
        &self - &rhs
    }
}

impl<'a> Mul<&'a SparsePoly> for &'a SparsePoly {
    type Output = SparsePoly;
    fn mul(self, rhs: &'a SparsePoly) -> SparsePoly {
        self.check_ring(rhs);
        let mut out = SparsePoly::zero(self.vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Mul for SparsePoly {
    type Output = SparsePoly;
    fn mul(self, rhs: SparsePoly) -> SparsePoly {
        &self * &rhs
    }
}

impl Neg for &SparsePoly {
    type Output = SparsePoly;
    fn neg(self) -> SparsePoly {
        SparsePoly {
            vars: self.vars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for SparsePoly {
    type Output = SparsePoly;
    fn neg(self) -> SparsePoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::super::{int, rat, ABC_VARS, C, LC_VARS, W1, W2, Z1, Z2};
    use super::*;

    const X: Vars = &["x"];

    fn x() -> SparsePoly {
        SparsePoly::var(X, 0)
    }

    fn lc(i: usize) -> SparsePoly {
        SparsePoly::var(LC_VARS, i)
    }

    #[test]
    fn cancellation_gives_empty_term_map() {
        let p = &x() + &(-x());
        assert!(p.is_zero());
        assert_eq!(p.num_terms(), 0);
    }

    #[test]
    fn difference_of_squares() {
        let one = SparsePoly::one(X);
        let p = &(&x() + &one) * &(&x() - &one);
        let expected = &x().pow(2) - &one;
        assert_eq!(p, expected);
    }

    #[test]
    fn derivative_of_square() {
        let d = lc(Z1).pow(2).diff(Z1);
        assert_eq!(d, lc(Z1).scale(&int(2)));
    }

    #[test]
    fn derivative_in_energy() {
        let r2 = &(&(&lc(Z1).pow(2) + &lc(Z2).pow(2)) + &lc(W1).pow(2)) + &lc(W2).pow(2);
        let p = &lc(C).scale(&int(-2)) * &r2.pow(2);
        assert_eq!(p.diff(C), r2.pow(2).scale(&int(-2)));
    }

    #[test]
    fn eval_is_exact() {
        // b = w1 z2 − z1 w2 at (1/2, 0, 0, 1/2, ·)
        let b = &(&lc(W1) * &lc(Z2)) - &(&lc(Z1) * &lc(W2));
        let pt = [rat(1, 2), int(0), int(0), rat(1, 2), int(7)];
        assert_eq!(b.eval(&pt), rat(-1, 4));
    }

    #[test]
    fn pseudo_remainder_of_divisor_is_zero() {
        let a = SparsePoly::var(ABC_VARS, 0);
        let b = SparsePoly::var(ABC_VARS, 1);
        let c = SparsePoly::var(ABC_VARS, 2);
        let a2 = a.pow(2);
        let f =
            &(&(&b * &a2).scale(&int(4)) - &(&c * &a2).scale(&int(2))) - &SparsePoly::one(ABC_VARS);
        assert!(f.pseudo_rem_linear(&f, 2).unwrap().is_zero());
        // c·(−2a²) + (4ba² − 1) is f rearranged
        let p = &(&c * &a2.scale(&int(-2)))
            + &(&(&b * &a2).scale(&int(4)) - &SparsePoly::one(ABC_VARS));
        assert!(p.pseudo_rem_linear(&f, 2).unwrap().is_zero());
        // a multiple of f with extra c-powers also reduces to zero
        let m = &(&c.pow(3) + &a) * &f;
        assert!(m.pseudo_rem_linear(&f, 2).unwrap().is_zero());
    }

    #[test]
    fn pseudo_remainder_matches_substitution() {
        // d = 2x − 1 in one variable; p = x² + 1 ⇒ 4p = q d + r, r = 4(1/4 + 1) = 5
        let one = SparsePoly::one(X);
        let d = &x().scale(&int(2)) - &one;
        let p = &x().pow(2) + &one;
        assert_eq!(
            p.pseudo_rem_linear(&d, 0).unwrap(),
            SparsePoly::constant(X, int(5))
        );
    }

    #[test]
    fn pseudo_remainder_rejects_nonlinear_divisor() {
        let d = x().pow(2);
        assert_eq!(
            x().pseudo_rem_linear(&d, 0),
            Err(Error::Degree { var: 0, degree: 2 })
        );
        let d0 = SparsePoly::one(X);
        assert!(matches!(
            x().pseudo_rem_linear(&d0, 0),
            Err(Error::Degree { degree: 0, .. })
        ));
    }

    #[test]
    fn clear_fraction_of_quadratic() {
        // x² + x at x = 1/y … use one var ring with num = 3, den = 2: 4·(9/4 + 3/2) = 15
        let p = &x().pow(2) + &x();
        let r = p.clear_fraction(
            0,
            &SparsePoly::constant(X, int(3)),
            &SparsePoly::constant(X, int(2)),
        );
        assert_eq!(r, SparsePoly::constant(X, int(15)));
    }

    #[test]
    fn exact_division() {
        let one = SparsePoly::one(X);
        let p = &(&x() + &one) * &(&x().pow(3) - &one);
        assert_eq!(p.div_exact(&(&x() + &one)).unwrap(), &x().pow(3) - &one);
        assert!(x().pow(2).div_exact(&(&x() + &one)).is_none());
    }

    #[test]
    fn substitution_composes() {
        // p(x) = x² − 1 with x ↦ z1 + w2
        let p = &x().pow(2) - &SparsePoly::one(X);
        let s = &lc(Z1) + &lc(W2);
        let out = p.substitute(std::slice::from_ref(&s));
        assert_eq!(out, &s.pow(2) - &SparsePoly::one(LC_VARS));
    }
}
