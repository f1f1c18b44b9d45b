use num_traits::ToPrimitive;

use super::SparsePoly;

/// Floating-point evaluator built once from an exact polynomial.
#[derive(Debug, Clone)]
pub struct F64Poly {
    nvars: usize,
    max_deg: Vec<usize>,
    terms: Vec<(f64, Vec<u16>)>,
}

impl F64Poly {
    pub fn new(p: &SparsePoly) -> Self {
        let nvars = p.nvars();
        assert!(nvars <= 8, "F64Poly supports at most 8 variables");
        assert!(
            (0..nvars).all(|v| p.degree_in(v) < 32),
            "F64Poly supports per-variable degree below 32"
        );
        let terms: Vec<(f64, Vec<u16>)> = p
            .terms()
            .map(|(m, c)| (c.to_f64().unwrap_or(f64::NAN), m.exponents().to_vec()))
            .collect();
        let max_deg = (0..nvars).map(|v| p.degree_in(v) as usize).collect();
        F64Poly {
            nvars,
            max_deg,
            terms,
        }
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        debug_assert_eq!(x.len(), self.nvars);
        // exponents are small; a stack table covers every polynomial built here
        let mut pow = [[1.0f64; 32]; 8];
        for v in 0..self.nvars {
            for k in 1..=self.max_deg[v] {
                pow[v][k] = pow[v][k - 1] * x[v];
            }
        }
        self.terms
            .iter()
            .map(|(c, e)| {
                e.iter()
                    .enumerate()
                    .fold(*c, |acc, (v, &k)| acc * pow[v][k as usize])
            })
            .sum()
    }
}

impl From<&SparsePoly> for F64Poly {
    fn from(p: &SparsePoly) -> Self {
        F64Poly::new(p)
    }
}

#[cfg(test)]
mod tests {
    use super::super::{int, rat, LC_VARS};
    use super::*;
    use num_traits::ToPrimitive;

    #[test]
    fn matches_exact_evaluation() {
        let x = SparsePoly::var(LC_VARS, 0);
        let c = SparsePoly::var(LC_VARS, 4);
        let p = &(&x.pow(5) * &c).scale(&rat(-3, 7)) + &SparsePoly::constant(LC_VARS, int(2));
        let fp = F64Poly::new(&p);
        let pt = [rat(3, 2), int(0), int(0), int(0), rat(-5, 4)];
        let exact = p.eval(&pt).to_f64().unwrap();
        let xs: Vec<f64> = pt.iter().map(|q| q.to_f64().unwrap()).collect();
        assert!((fp.eval(&xs) - exact).abs() < 1e-12);
    }
}
