use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::LaurentPoly;
use crate::{Error, Result};

/// Determinant by Bareiss fraction-free elimination. Every intermediate
/// pivot divides the next step exactly.
fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::from(1);
    }
    let mut sign = false;
    let mut prev = BigInt::from(1);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = !sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign {
        -d
    } else {
        d
    }
}

/// Resultant of two ordinary polynomials given by ascending coefficients,
/// via the Sylvester determinant. Both must have nonzero leading coefficient.
pub fn resultant(f: &[BigInt], g: &[BigInt]) -> BigInt {
    let m = f.len().saturating_sub(1);
    let n = g.len().saturating_sub(1);
    let size = m + n;
    if size == 0 {
        return BigInt::from(1);
    }
    let mut rows = Vec::with_capacity(size);
    for r in 0..n {
        let mut row = vec![BigInt::zero(); size];
        for (k, c) in f.iter().rev().enumerate() {
            row[r + k] = c.clone();
        }
        rows.push(row);
    }
    for r in 0..m {
        let mut row = vec![BigInt::zero(); size];
        for (k, c) in g.iter().rev().enumerate() {
            row[r + k] = c.clone();
        }
        rows.push(row);
    }
    bareiss_det(rows)
}

/// `|Π_{ξ^j = 1} Δ(ξ)|`, as `|Res(T^{-min} Δ, T^j - 1)|`.
pub fn cyclotomic_norm(delta: &LaurentPoly, j: u64) -> Result<BigInt> {
    if delta.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if j == 0 {
        return Err(Error::Invalid("cover order must be positive".into()));
    }
    let (_, f) = delta.to_dense();
    let mut g = vec![BigInt::zero(); j as usize + 1];
    g[0] = BigInt::from(-1);
    g[j as usize] = BigInt::from(1);
    let r = resultant(&f, &g).abs();
    if r.is_zero() {
        return Err(Error::RootOfUnity(j));
    }
    Ok(r)
}
