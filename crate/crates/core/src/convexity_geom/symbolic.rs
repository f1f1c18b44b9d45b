//! Exact construction of `F`, its derivatives, the quaternionic frame and the
//! tangential-Hessian determinant `DH`, plus the identity checks around its
//! factorization `DH = 2¹⁹ a⁶ f₁ f₂ f₃ f₄²`.

use std::sync::OnceLock;

use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::polycore::{
    int, rat, Monomial, PolyMatrix3, SparsePoly, ABC_VARS, C, LC_VARS, W1, W2, Z1, Z2,
};

/// `2¹⁹`, the constant of the determinant factorization.
pub const DH_CONSTANT: i64 = 524_288;

fn lc(i: usize) -> SparsePoly {
    SparsePoly::var(LC_VARS, i)
}

fn abc(i: usize) -> SparsePoly {
    SparsePoly::var(ABC_VARS, i)
}

fn konst(vars: crate::polycore::Vars, n: i64) -> SparsePoly {
    SparsePoly::constant(vars, int(n))
}

/// Integer-coefficient polynomial in `(z1, z2, w1, w2, c)` from a term list.
fn lc_poly(terms: &[(i64, [u16; 5])]) -> SparsePoly {
    SparsePoly::from_terms(
        LC_VARS,
        terms
            .iter()
            .map(|(k, e)| (Monomial::new(e.to_vec()), int(*k))),
    )
}

/// `a = ‖w‖² + ‖z‖²` and `b = w1 z2 − z1 w2` in the chart ring.
pub fn lc_invariants() -> (SparsePoly, SparsePoly) {
    let a = &(&(&lc(Z1).pow(2) + &lc(Z2).pow(2)) + &lc(W1).pow(2)) + &lc(W2).pow(2);
    let b = &(&lc(W1) * &lc(Z2)) - &(&lc(Z1) * &lc(W2));
    (a, b)
}

/// `F = −1 + 4ba² − 2ca²`.
pub fn defining_polynomial() -> SparsePoly {
    let (a, b) = lc_invariants();
    let a2 = a.pow(2);
    let four_b_minus_two_c = &b.scale(&int(4)) - &lc(C).scale(&int(2));
    &(&four_b_minus_two_c * &a2) - &konst(LC_VARS, 1)
}

/// The four cubic gradient components `g₁…g₄` as displayed for the surface,
/// ordered `(z1, z2, w1, w2)`. The third component carries `−16 w1 w2 z1`;
/// see [`gradient_display_g3_misprint`].
pub fn gradient_display_polys() -> [SparsePoly; 4] {
    // exponent order: z1 z2 w1 w2 c
    [
        lc_poly(&[
            (-4, [0, 0, 2, 1, 0]),
            (16, [1, 1, 1, 0, 0]),
            (-4, [0, 0, 0, 3, 0]),
            (-20, [2, 0, 0, 1, 0]),
            (-4, [0, 2, 0, 1, 0]),
            (-8, [1, 0, 0, 0, 1]),
        ]),
        lc_poly(&[
            (4, [0, 0, 3, 0, 0]),
            (4, [0, 0, 1, 2, 0]),
            (4, [2, 0, 1, 0, 0]),
            (20, [0, 2, 1, 0, 0]),
            (-16, [1, 1, 0, 1, 0]),
            (-8, [0, 1, 0, 0, 1]),
        ]),
        lc_poly(&[
            (20, [0, 1, 2, 0, 0]),
            (-16, [1, 0, 1, 1, 0]),
            (4, [0, 1, 0, 2, 0]),
            (4, [2, 1, 0, 0, 0]),
            (4, [0, 3, 0, 0, 0]),
            (-8, [0, 0, 1, 0, 1]),
        ]),
        lc_poly(&[
            (-4, [1, 0, 2, 0, 0]),
            (16, [0, 1, 1, 1, 0]),
            (-20, [1, 0, 0, 2, 0]),
            (-4, [3, 0, 0, 0, 0]),
            (-4, [1, 2, 0, 0, 0]),
            (-8, [0, 0, 0, 1, 1]),
        ]),
    ]
}

/// Third component with the cross term written `−16 w1 w2 z2`; it is not
/// `(∂F/∂w1)/a`.
pub fn gradient_display_g3_misprint() -> SparsePoly {
    lc_poly(&[
        (20, [0, 1, 2, 0, 0]),
        (-16, [0, 1, 1, 1, 0]),
        (4, [0, 1, 0, 2, 0]),
        (4, [2, 1, 0, 0, 0]),
        (4, [0, 3, 0, 0, 0]),
        (-8, [0, 0, 1, 0, 1]),
    ])
}

/// Quaternionic frame `(g·i, g·j, g·k)` for a quadruple of ring elements.
pub fn frame_polys(g: &[SparsePoly; 4]) -> [[SparsePoly; 4]; 3] {
    let [g1, g2, g3, g4] = g;
    [
        [-g2, g1.clone(), g4.clone(), -g3],
        [-g3, -g4, g1.clone(), g2.clone()],
        [-g4, g3.clone(), -g2, g1.clone()],
    ]
}

/// The factors `f₁…f₄` in the `(a, b, c)` ring.
pub fn factor_polys() -> [SparsePoly; 4] {
    let (a, b, c) = (abc(0), abc(1), abc(2));
    let f1 = &(&c.scale(&int(-2)) + &a) + &b.scale(&int(4));
    let f2 = &(&c.scale(&int(-2)) - &a) + &b.scale(&int(4));
    let a2 = a.pow(2);
    let f3 = &(&(&(&c.pow(3).scale(&int(-4)) + &(&b * &c.pow(2)).scale(&int(28)))
        - &(&(&b.pow(2).scale(&int(88)) - &a2.scale(&int(7))) * &c))
        + &b.pow(3).scale(&int(96)))
        - &(&a2 * &b).scale(&int(15));
    let f4 = &(&(&c.pow(2).scale(&int(4)) - &(&b * &c).scale(&int(24))) + &a2)
        + &b.pow(2).scale(&int(32));
    [f1, f2, f3, f4]
}

/// `2¹⁹ a⁶ f₁ f₂ f₃ f₄²` in the `(a, b, c)` ring.
pub fn factored_dh_abc() -> SparsePoly {
    let [f1, f2, f3, f4] = factor_polys();
    let a6 = abc(0).pow(6).scale(&int(DH_CONSTANT));
    &(&(&(&a6 * &f1) * &f2) * &f3) * &f4.pow(2)
}

/// Expands a polynomial in `(a, b, c)` into the chart ring.
pub fn expand_abc(p: &SparsePoly) -> SparsePoly {
    assert_eq!(p.vars(), ABC_VARS);
    let (a, b) = lc_invariants();
    p.substitute(&[a, b, lc(C)])
}

/// `N(a, c) = 12c²a⁴ − 2ca⁸ − 15a⁶ + 14ca² + 6`, in the `(a, b, c)` ring.
pub fn onshell_numerator_poly() -> SparsePoly {
    let (a, c) = (abc(0), abc(2));
    let t = |k: i64, ea: u32, ec: u32| (&a.pow(ea) * &c.pow(ec)).scale(&int(k));
    [
        t(12, 4, 2),
        t(-2, 8, 1),
        t(-15, 6, 0),
        t(14, 2, 1),
        t(6, 0, 0),
    ]
    .into_iter()
    .fold(SparsePoly::zero(ABC_VARS), |acc, x| acc + x)
}

/// Everything built from `F`, constructed once.
#[derive(Debug, Clone)]
pub struct SymbolicArtifacts {
    pub f: SparsePoly,
    pub a: SparsePoly,
    pub b: SparsePoly,
    /// `∂F/∂(z1, z2, w1, w2)`
    pub grad: [SparsePoly; 4],
    pub hessian: [[SparsePoly; 4]; 4],
    /// `(∂F/∂xᵢ) / a`
    pub g: [SparsePoly; 4],
    pub frame: [[SparsePoly; 4]; 3],
    /// `vᵢᵀ Hess(F) vⱼ`
    pub tangential: PolyMatrix3,
    pub dh: SparsePoly,
    pub onshell_numerator: SparsePoly,
}

/// Builds all symbolic objects. Fails if `a` does not divide a partial of
/// `F`, which would contradict the factored form of the gradient.
pub fn build_symbolic() -> Result<SymbolicArtifacts> {
    let f = defining_polynomial();
    let (a, b) = lc_invariants();
    let coords = [Z1, Z2, W1, W2];
    let grad = coords.map(|v| f.diff(v));
    let hessian = coords.map(|i| coords.map(|j| grad[i].diff(j)));
    let mut g = Vec::with_capacity(4);
    for (i, d) in grad.iter().enumerate() {
        let q = d
            .div_exact(&a)
            .ok_or_else(|| Error::Construction(format!("a does not divide dF/dx{}", i + 1)))?;
        g.push(q);
    }
    let g: [SparsePoly; 4] = g.try_into().expect("four components");
    let frame = frame_polys(&g);
    let h_frame: Vec<Vec<SparsePoly>> = frame
        .iter()
        .map(|v| {
            (0..4)
                .map(|k| {
                    (0..4).fold(SparsePoly::zero(LC_VARS), |acc, l| {
                        acc + &hessian[k][l] * &v[l]
                    })
                })
                .collect()
        })
        .collect();
    let entry = |i: usize, j: usize| {
        (0..4).fold(SparsePoly::zero(LC_VARS), |acc, k| {
            acc + &frame[i][k] * &h_frame[j][k]
        })
    };
    let tangential = PolyMatrix3::new(std::array::from_fn(|i| {
        std::array::from_fn(|j| entry(i, j))
    }));
    let dh = tangential.det();
    Ok(SymbolicArtifacts {
        f,
        a,
        b,
        grad,
        hessian,
        g,
        frame,
        tangential,
        dh,
        onshell_numerator: onshell_numerator_poly(),
    })
}

/// Shared artifacts, built on first use.
pub fn artifacts() -> &'static SymbolicArtifacts {
    static CELL: OnceLock<SymbolicArtifacts> = OnceLock::new();
    CELL.get_or_init(|| build_symbolic().expect("a divides every partial of F"))
}

/// `a·gᵢ − ∂F/∂xᵢ` for the displayed gradient components.
pub fn gradient_identity_residuals() -> [SparsePoly; 4] {
    let f = defining_polynomial();
    let (a, _) = lc_invariants();
    let g = gradient_display_polys();
    std::array::from_fn(|i| &(&a * &g[i]) - &f.diff([Z1, Z2, W1, W2][i]))
}

/// Outcome of comparing `DH` with its factored form.
#[derive(Debug, Clone, PartialEq)]
pub enum FactorizationOutcome {
    /// The difference is the zero polynomial.
    ExactIdentity,
    /// The difference vanishes after reduction modulo `F` (linear in `c`).
    IdentityModuloF,
    /// A rational point on `F = 0` where the two sides differ.
    Failure {
        witness: [BigRational; 5],
        difference: BigRational,
    },
}

impl FactorizationOutcome {
    pub fn holds(&self) -> bool {
        !matches!(self, FactorizationOutcome::Failure { .. })
    }

    pub fn label(&self) -> &'static str {
        match self {
            FactorizationOutcome::ExactIdentity => "ExactIdentity",
            FactorizationOutcome::IdentityModuloF => "IdentityModuloF",
            FactorizationOutcome::Failure { .. } => "Failure",
        }
    }
}

/// Compares an arbitrary candidate for `DH` (in the chart ring) with the
/// computed determinant.
pub fn compare_with_dh(
    dh: &SparsePoly,
    f: &SparsePoly,
    candidate: &SparsePoly,
) -> FactorizationOutcome {
    let diff = dh - candidate;
    if diff.is_zero() {
        return FactorizationOutcome::ExactIdentity;
    }
    let reduced = diff.pseudo_rem_linear(f, C).expect("F is linear in c");
    if reduced.is_zero() {
        return FactorizationOutcome::IdentityModuloF;
    }
    // on F = 0: c = (4ba² − 1) / (2a²), rational for rational (z, w)
    for n in 1i64.. {
        let z1 = rat(n % 5 - 2, 1 + n % 3);
        let z2 = rat(n % 7 - 3, 2);
        let w1 = rat(n % 3 - 1, 1 + n % 2);
        let w2 = rat(n % 4, 3);
        let a = &z1 * &z1 + &z2 * &z2 + &w1 * &w1 + &w2 * &w2;
        if a.is_zero() {
            continue;
        }
        let b = &w1 * &z2 - &z1 * &w2;
        let c = (int(4) * &b * &a * &a - int(1)) / (int(2) * &a * &a);
        let pt = [z1, z2, w1, w2, c];
        let d = diff.eval(&pt);
        if !d.is_zero() {
            return FactorizationOutcome::Failure {
                witness: pt,
                difference: d,
            };
        }
        if n > 10_000 {
            break;
        }
    }
    FactorizationOutcome::Failure {
        witness: std::array::from_fn(|_| BigRational::zero()),
        difference: BigRational::zero(),
    }
}

/// `DH − 2¹⁹ a⁶ f₁ f₂ f₃ f₄²` checked exactly, then modulo `F`.
pub fn verify_factorization() -> FactorizationOutcome {
    let art = artifacts();
    compare_with_dh(&art.dh, &art.f, &expand_abc(&factored_dh_abc()))
}

/// Deterministic identity test: if `eval` computes a polynomial with
/// per-variable degrees `≤ bounds[v]`, vanishing on the grid
/// `Π {1, …, bounds[v] + 1}` proves it is zero.
pub fn vanishes_on_grid(bounds: &[u32], eval: impl Fn(&[BigRational]) -> BigRational) -> bool {
    let mut idx = vec![0u32; bounds.len()];
    loop {
        let pt: Vec<BigRational> = idx.iter().map(|&k| int(i64::from(k) + 1)).collect();
        if !eval(&pt).is_zero() {
            return false;
        }
        let mut v = 0;
        loop {
            if v == idx.len() {
                return true;
            }
            if idx[v] < bounds[v] {
                idx[v] += 1;
                break;
            }
            idx[v] = 0;
            v += 1;
        }
    }
}

/// One named identity `lhs = rhs` in `(a, b, c)`, after clearing
/// denominators. It is checked twice: by expanding `lhs − rhs`, and by
/// evaluating both sides directly (rational substitution, no expansion) on a
/// grid exceeding the per-variable degrees of either side.
#[derive(Debug, Clone, PartialEq)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub residual: SparsePoly,
    pub grid_zero: bool,
}

impl IdentityCheck {
    fn new(
        name: &'static str,
        lhs: SparsePoly,
        rhs: SparsePoly,
        direct: impl Fn(&BigRational, &BigRational, &BigRational) -> BigRational,
    ) -> Self {
        let bounds: Vec<u32> = (0..3)
            .map(|v| lhs.degree_in(v).max(rhs.degree_in(v)))
            .collect();
        let grid_zero = vanishes_on_grid(&bounds, |p| direct(&p[0], &p[1], &p[2]));
        IdentityCheck {
            name,
            residual: &lhs - &rhs,
            grid_zero,
        }
    }

    pub fn holds(&self) -> bool {
        self.residual.is_zero() && self.grid_zero
    }
}

/// The closed-form identities behind the positivity of `f₃` and `f₄`.
pub fn factor_identities() -> Vec<IdentityCheck> {
    let (a, b, c) = (abc(0), abc(1), abc(2));
    let k = |n: i64| konst(ABC_VARS, n);
    let [_, _, f3, f4] = factor_polys();
    let n = onshell_numerator_poly();
    let a2 = a.pow(2);
    let ev = |p: &SparsePoly, a: &BigRational, b: &BigRational, c: &BigRational| {
        p.eval(&[a.clone(), b.clone(), c.clone()])
    };
    let zero = BigRational::zero;

    // f₄ − 4(3b − c)² = a² − 4b²
    let f4_lhs = &f4 - &(&b.scale(&int(3)) - &c).pow(2).scale(&int(4));
    let f4_rhs = &a2 - &b.pow(2).scale(&int(4));
    let f4_check = IdentityCheck::new("f4 - 4(3b-c)^2 = a^2 - 4b^2", f4_lhs, f4_rhs, |a, b, c| {
        let t = int(3) * b - c;
        ev(&f4, a, b, c) - int(4) * &t * &t - (a * a - int(4) * b * b)
    });

    // (4a²)³ f₃(a, (1 + 2ca²)/(4a²), c) = 16 · 4a⁶ f₃|on-shell = 16 N
    let num = &k(1) + &(&c * &a2).scale(&int(2));
    let den = a2.scale(&int(4));
    let f3_check = IdentityCheck::new(
        "4a^6 f3(b = 1/(4a^2) + c/2) = N(a,c)",
        f3.clear_fraction(1, &num, &den),
        n.scale(&int(16)),
        |a, _, c| {
            let b_on = (int(1) + int(2) * c * a * a) / (int(4) * a * a);
            let d = int(4) * a * a;
            &d * &d * &d * ev(&f3, a, &b_on, c) - int(16) * ev(&n, a, &zero(), c)
        },
    );

    // N(a, −3/2) = 3(a² − 1)³(a² − 2)
    let n_at = n.substitute(&[
        a.clone(),
        b.clone(),
        SparsePoly::constant(ABC_VARS, rat(-3, 2)),
    ]);
    let boundary = (&(&a2 - &k(1)).pow(3) * &(&a2 - &k(2))).scale(&int(3));
    let boundary_check = IdentityCheck::new(
        "N(a,-3/2) = 3(a^2-1)^3(a^2-2)",
        n_at,
        boundary,
        |a, _, _| {
            let s = a * a - int(1);
            ev(&n, a, &zero(), &rat(-3, 2)) - int(3) * &s * &s * &s * (a * a - int(2))
        },
    );

    // (12a²)² N(a, (a⁶ − 7)/(12a²)) = 12a⁴ (−a¹² − 166a⁶ + 23)
    let axis_num = &a.pow(6) - &k(7);
    let axis_den = a2.scale(&int(12));
    let axis_poly = &(&(-&a.pow(12)) - &a.pow(6).scale(&int(166))) + &k(23);
    let axis_check = IdentityCheck::new(
        "12 N(a, -(7-a^6)/(12a^2)) = -a^12 - 166a^6 + 23",
        n.clear_fraction(2, &axis_num, &axis_den),
        &a.pow(4).scale(&int(12)) * &axis_poly,
        |a, _, _| {
            let a2 = a * a;
            let a6 = &a2 * &a2 * &a2;
            let c_star = (&a6 - int(7)) / (int(12) * &a2);
            let d = int(12) * &a2;
            &d * &d * ev(&n, a, &zero(), &c_star)
                - int(12) * &a2 * &a2 * (-(&a6 * &a6) - int(166) * &a6 + int(23))
        },
    );

    vec![f4_check, f3_check, boundary_check, axis_check]
}

/// `(−a¹² − 166a⁶ + 23)/12` at `a² = 7/18`, exactly.
pub fn axis_value_at_case_boundary() -> BigRational {
    let a6 = rat(7, 18) * rat(7, 18) * rat(7, 18);
    (-(&a6 * &a6) - int(166) * &a6 + int(23)) / int(12)
}

pub fn axis_value_at_case_boundary_f64() -> f64 {
    axis_value_at_case_boundary().to_f64().unwrap_or(f64::NAN)
}
