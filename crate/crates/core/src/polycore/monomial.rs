use std::cmp::Ordering;

/// Exponent vector, one entry per ring variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u16>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn new(exponents: Vec<u16>) -> Self {
        Monomial(exponents)
    }

    /// The monomial `x_var^exp`.
    pub fn var(nvars: usize, var: usize, exp: u16) -> Self {
        let mut e = vec![0; nvars];
        e[var] = exp;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    pub fn exponent(&self, var: usize) -> u16 {
        self.0[var]
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&e| u32::from(e)).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.0.len(), other.0.len());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Same monomial with the exponent of `var` replaced.
    pub fn with_exponent(&self, var: usize, exp: u16) -> Monomial {
        let mut e = self.0.clone();
        e[var] = exp;
        Monomial(e)
    }
}

/// Graded lexicographic: total degree first, then the exponent of the
/// earliest variable.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_before_lex() {
        let x2 = Monomial::new(vec![2, 0, 0]);
        let yz2 = Monomial::new(vec![0, 1, 2]);
        let xy = Monomial::new(vec![1, 1, 0]);
        assert!(yz2 > x2);
        assert!(x2 > xy);
        assert_eq!(yz2.total_degree(), 3);
    }

    #[test]
    fn product_adds_exponents() {
        let m = Monomial::new(vec![1, 0, 2]).mul(&Monomial::new(vec![0, 3, 1]));
        assert_eq!(m.exponents(), &[1, 3, 3]);
        assert!(Monomial::one(3).is_one());
    }
}
