//! Small dense helpers: cyclic Jacobi eigenvalues, closed-form 3×3
//! determinants and central finite differences.

use nalgebra::{DMatrix, Matrix3, SMatrix, SVector};

/// Off-diagonal tolerance of the Jacobi iteration.
pub const JACOBI_TOL: f64 = 1e-12;
pub const JACOBI_MAX_SWEEPS: usize = 50;

/// Eigenvalues of a symmetric matrix by the cyclic Jacobi method, sorted
/// ascending. Only the symmetric part of `m` is used.
pub fn jacobi_eigenvalues<const N: usize>(m: &SMatrix<f64, N, N>) -> SVector<f64, N> {
    let mut a = (m + m.transpose()) * 0.5;
    let scale = a
        .iter()
        .fold(0.0f64, |s, x| s.max(x.abs()))
        .max(f64::MIN_POSITIVE);
    for _ in 0..JACOBI_MAX_SWEEPS {
        let off: f64 = (0..N)
            .flat_map(|i| (0..N).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[(i, j)] * a[(i, j)])
            .sum::<f64>()
            .sqrt();
        if off <= JACOBI_TOL * scale {
            break;
        }
        for p in 0..N {
            for q in p + 1..N {
                let apq = a[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..N {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = c * akp - s * akq;
                    a[(k, q)] = s * akp + c * akq;
                }
                for k in 0..N {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = c * apk - s * aqk;
                    a[(q, k)] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut ev: Vec<f64> = (0..N).map(|i| a[(i, i)]).collect();
    ev.sort_by(f64::total_cmp);
    SVector::from_iterator(ev)
}

pub fn det3(m: &Matrix3<f64>) -> f64 {
    m[(0, 0)] * (m[(1, 1)] * m[(2, 2)] - m[(1, 2)] * m[(2, 1)])
        - m[(0, 1)] * (m[(1, 0)] * m[(2, 2)] - m[(1, 2)] * m[(2, 0)])
        + m[(0, 2)] * (m[(1, 0)] * m[(2, 1)] - m[(1, 1)] * m[(2, 0)])
}

/// Central-difference gradient with step `h`.
pub fn fd_gradient<const N: usize>(
    f: impl Fn(&[f64; N]) -> f64,
    x: &[f64; N],
    h: f64,
) -> SVector<f64, N> {
    SVector::from_fn(|i, _| {
        let mut xp = *x;
        let mut xm = *x;
        xp[i] += h;
        xm[i] -= h;
        (f(&xp) - f(&xm)) / (2.0 * h)
    })
}

/// Central-difference Hessian with step `h`, symmetrized.
pub fn fd_hessian<const N: usize>(
    f: impl Fn(&[f64; N]) -> f64,
    x: &[f64; N],
    h: f64,
) -> SMatrix<f64, N, N> {
    let f0 = f(x);
    let mut hm = SMatrix::<f64, N, N>::zeros();
    for i in 0..N {
        let shifted = |di: f64| {
            let mut y = *x;
            y[i] += di;
            f(&y)
        };
        hm[(i, i)] = (shifted(h) - 2.0 * f0 + shifted(-h)) / (h * h);
        for j in 0..i {
            let at = |di: f64, dj: f64| {
                let mut y = *x;
                y[i] += di;
                y[j] += dj;
                f(&y)
            };
            let v = (at(h, h) - at(h, -h) - at(-h, h) + at(-h, -h)) / (4.0 * h * h);
            hm[(i, j)] = v;
            hm[(j, i)] = v;
        }
    }
    hm
}

/// Central-difference Jacobian of a map ℝⁿ → ℝᵐ; column `j` holds the
/// derivative along the `j`-th input coordinate.
pub fn fd_jacobian<E>(
    f: impl Fn(&[f64]) -> Result<Vec<f64>, E>,
    x: &[f64],
    h: f64,
) -> Result<DMatrix<f64>, E> {
    let mut cols = Vec::with_capacity(x.len());
    for j in 0..x.len() {
        let mut xp = x.to_vec();
        let mut xm = x.to_vec();
        xp[j] += h;
        xm[j] -= h;
        let fp = f(&xp)?;
        let fm = f(&xm)?;
        cols.push(
            fp.iter()
                .zip(&fm)
                .map(|(a, b)| (a - b) / (2.0 * h))
                .collect::<Vec<_>>(),
        );
    }
    let m = cols.first().map_or(0, Vec::len);
    Ok(DMatrix::from_fn(m, x.len(), |i, j| cols[j][i]))
}
