//! Eigenvalues of Hermitian matrices by cyclic complex Jacobi rotations.

use alloc::vec::Vec;

use super::matrix::{CMatrix, C64};
use crate::error::{Error, Result};

/// Eigenvalues in ascending order. The input must be Hermitian; only its
/// Hermitian part is used.
pub fn hermitian_eigenvalues(m: &CMatrix) -> Result<Vec<f64>> {
    let n = m.dim();
    let mut a = CMatrix::from_fn(n, |i, j| (m[(i, j)] + m[(j, i)].conj()) * 0.5);
    let scale = a.max_abs();
    if scale == 0.0 {
        return Ok(alloc::vec![0.0; n]);
    }
    let off = |a: &CMatrix| {
        let mut s = 0.0;
        for i in 0..n {
            for j in i + 1..n {
                s += a[(i, j)].norm_sqr();
            }
        }
        s
    };
    let target = (1e-17 * scale) * (1e-17 * scale);
    let mut sweeps = 0;
    while off(&a) > target {
        sweeps += 1;
        if sweeps > 100 {
            return Err(Error::NotConverged("Jacobi sweeps exhausted".into()));
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, p, q);
            }
        }
    }
    let mut values: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    values.sort_by(f64::total_cmp);
    Ok(values)
}

/// Zeroes `a[p][q]` with `U = D R`, `D = diag(1, e^{-iφ})` on `(p, q)`
/// making the pair real and `R` a real Givens rotation; `a ← U† a U`.
fn rotate(a: &mut CMatrix, p: usize, q: usize) {
    let b = a[(p, q)];
    let mag = b.norm();
    if mag == 0.0 {
        return;
    }
    let phase = b / mag;
    let (app, aqq) = (a[(p, p)].re, a[(q, q)].re);
    let theta = 0.5 * libm::atan2(2.0 * mag, app - aqq);
    let (c, s) = (libm::cos(theta), libm::sin(theta));
    let e = phase.conj();
    let n = a.dim();
    for k in 0..n {
        let (akp, akq) = (a[(k, p)], a[(k, q)]);
        a[(k, p)] = akp * c + akq * e * s;
        a[(k, q)] = -akp * s + akq * e * c;
    }
    let ec = e.conj();
    for k in 0..n {
        let (apk, aqk) = (a[(p, k)], a[(q, k)]);
        a[(p, k)] = apk * c + aqk * ec * s;
        a[(q, k)] = -apk * s + aqk * ec * c;
    }
    a[(p, q)] = C64::new(0.0, 0.0);
    a[(q, p)] = C64::new(0.0, 0.0);
    a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = C64::new(a[(q, q)].re, 0.0);
}
