use super::{SparsePoly, Vars};

/// 3×3 matrix of polynomials over a common ring.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyMatrix3 {
    entries: [[SparsePoly; 3]; 3],
}

impl PolyMatrix3 {
    pub fn new(entries: [[SparsePoly; 3]; 3]) -> Self {
        let vars = entries[0][0].vars();
        for row in &entries {
            for e in row {
                assert_eq!(e.vars(), vars, "matrix entries live in different rings");
            }
        }
        PolyMatrix3 { entries }
    }

    pub fn diagonal(vars: Vars, d: [SparsePoly; 3]) -> Self {
        let z = || SparsePoly::zero(vars);
        let [p, q, r] = d;
        PolyMatrix3::new([[p, z(), z()], [z(), q, z()], [z(), z(), r]])
    }

    pub fn get(&self, i: usize, j: usize) -> &SparsePoly {
        &self.entries[i][j]
    }

    pub fn is_symmetric(&self) -> bool {
        (0..3).all(|i| (0..i).all(|j| self.entries[i][j] == self.entries[j][i]))
    }

    /// Determinant by cofactor expansion along the first row.
    pub fn det(&self) -> SparsePoly {
        let m = &self.entries;
        let minor = |r1: usize, r2: usize, c1: usize, c2: usize| {
            &(&m[r1][c1] * &m[r2][c2]) - &(&m[r1][c2] * &m[r2][c1])
        };
        let c0 = &m[0][0] * &minor(1, 2, 1, 2);
        let c1 = &m[0][1] * &minor(1, 2, 0, 2);
        let c2 = &m[0][2] * &minor(1, 2, 0, 1);
        &(&c0 - &c1) + &c2
    }
}
