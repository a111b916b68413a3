use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::block::build_b_block;
use super::centro::centro_decompose;
use crate::error::{Error, Result};
use crate::exact::{factorials, QSqrt2};

/// Two exact kernel vectors of the reduced block `S^{(j)}`, `j ≥ 4`.
///
/// With `m = ⌈j/2⌉` entries from the closed form (0-based `k < m`)
///
/// ```text
/// v_k = 1/(k!(j−k)!),   w_k = k(j−k)·v_k
/// ```
///
/// and, for even `j = 2q`, a border entry `v_q = 1/(√2 q!²)`,
/// `w_q = 1/(√2 (q−1)!²)`.
pub fn null_vectors(j: usize) -> Result<(Vec<QSqrt2>, Vec<QSqrt2>)> {
    if j < 4 {
        return Err(Error::OutOfRange(format!(
            "null vectors are defined for j >= 4 (got {j})"
        )));
    }
    let fact = factorials(j);
    let m = j.div_ceil(2);
    let inv = |d: BigInt| BigRational::new(BigInt::from(1), d);
    let mut v: Vec<QSqrt2> = (0..m)
        .map(|k| QSqrt2::rational(inv(&fact[k] * &fact[j - k])))
        .collect();
    let mut w: Vec<QSqrt2> = (0..m)
        .map(|k| {
            let weight = BigRational::from_integer(BigInt::from(k * (j - k)));
            v[k].scale(&weight)
        })
        .collect();
    if j % 2 == 0 {
        let q = j / 2;
        // 1/(√2 n) = √2/(2n)
        v.push(QSqrt2::sqrt2_multiple(inv(BigInt::from(2) * &fact[q] * &fact[q])));
        w.push(QSqrt2::sqrt2_multiple(inv(BigInt::from(2) * &fact[q - 1] * &fact[q - 1])));
    }
    Ok((v, w))
}

/// Checks `S^{(j)} v = S^{(j)} w = 0` in exact arithmetic.
pub fn verify_null_vectors(j: usize) -> Result<bool> {
    let (v, w) = null_vectors(j)?;
    let s = centro_decompose(&build_b_block(j))?.s;
    Ok(s.mul_vec(&v).iter().all(Zero::is_zero) && s.mul_vec(&w).iter().all(Zero::is_zero))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational;

    #[test]
    fn five() {
        let (v, w) = null_vectors(5).unwrap();
        let want_v = [rational(1, 120), rational(1, 24), rational(1, 12)];
        let want_w = [rational(0, 1), rational(1, 6), rational(1, 2)];
        assert_eq!(v, want_v.map(QSqrt2::rational).to_vec());
        assert_eq!(w, want_w.map(QSqrt2::rational).to_vec());
        assert!(verify_null_vectors(5).unwrap());
    }

    #[test]
    fn small_range() {
        for j in 4..=24 {
            assert!(verify_null_vectors(j).unwrap(), "j = {j}");
        }
        assert!(null_vectors(3).is_err());
    }
}
