//! Matrix exponential by scaling and squaring with a degree-13 Padé
//! approximant.

use super::matrix::{CMatrix, C64};
use crate::error::Result;

const THETA_13: f64 = 5.371920351148152;

const B: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];

fn combo(terms: &[(f64, &CMatrix)], n: usize) -> CMatrix {
    let mut out = CMatrix::zeros(n);
    for &(k, m) in terms {
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] += m[(i, j)] * k;
            }
        }
    }
    out
}

pub fn expm(a: &CMatrix) -> Result<CMatrix> {
    let n = a.dim();
    let norm = a.norm_1();
    let s = if norm > THETA_13 {
        libm::ceil(libm::log2(norm / THETA_13)) as i32
    } else {
        0
    };
    let a = a.scale(C64::new(libm::ldexp(1.0, -s), 0.0));
    let id = CMatrix::identity(n);
    let a2 = a.matmul(&a)?;
    let a4 = a2.matmul(&a2)?;
    let a6 = a4.matmul(&a2)?;

    let u_inner = a6.matmul(&combo(&[(B[13], &a6), (B[11], &a4), (B[9], &a2)], n))?;
    let u_sum = u_inner.add(&combo(
        &[(B[7], &a6), (B[5], &a4), (B[3], &a2), (B[1], &id)],
        n,
    ))?;
    let u = a.matmul(&u_sum)?;
    let v_inner = a6.matmul(&combo(&[(B[12], &a6), (B[10], &a4), (B[8], &a2)], n))?;
    let v = v_inner.add(&combo(
        &[(B[6], &a6), (B[4], &a4), (B[2], &a2), (B[0], &id)],
        n,
    ))?;

    let mut r = v.sub(&u)?.solve(&v.add(&u)?)?;
    for _ in 0..s {
        r = r.matmul(&r)?;
    }
    Ok(r)
}
