use std::cmp::Ordering;
use std::ops::{Add, Div, Mul, Neg, Sub};

use dashu_float::round::mode::HalfEven;
use dashu_float::FBig;
use dashu_int::IBig;
use nalgebra::{DMatrix, SymmetricEigen};
use num_bigint::{BigInt, Sign};
use num_rational::BigRational;

use super::block::BlockMatrix;
use crate::error::{Error, Result};

/// Working precision of [`Hp`], in bits.
pub const HP_BITS: usize = 256;

const MAX_QL_ITERS: usize = 200;

/// Sorted eigenvalues of a real symmetric matrix.
///
/// nalgebra's symmetric QR; the backward error is a small multiple of
/// `ε‖X‖`.
pub fn symmetric_eigenvalues(m: &DMatrix<f64>) -> Result<Vec<f64>> {
    if !m.is_square() {
        return Err(Error::InvalidParameter("matrix must be square".into()));
    }
    if m.nrows() == 0 {
        return Ok(Vec::new());
    }
    let eig = SymmetricEigen::try_new(m.clone(), f64::EPSILON, 100 * m.nrows().max(10))
        .ok_or(Error::NoConvergence)?;
    let mut vals: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    if vals.iter().any(|x| !x.is_finite()) {
        return Err(Error::NoConvergence);
    }
    vals.sort_by(|a, b| a.partial_cmp(b).unwrap_or(Ordering::Equal));
    Ok(vals)
}

/// Real field used by the generic eigenvalue routine.
pub trait Scalar:
    Clone
    + PartialOrd
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_f64(x: f64) -> Self;
    fn to_f64(&self) -> f64;
    fn sqrt(&self) -> Self;
    /// Relative spacing used in deflation tests.
    fn epsilon() -> Self;

    fn zero() -> Self {
        Self::from_f64(0.0)
    }

    fn abs(&self) -> Self {
        if *self < Self::zero() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    fn hypot(&self, other: &Self) -> Self {
        let (a, b) = (self.abs(), other.abs());
        let (big, small) = if a >= b { (a, b) } else { (b, a) };
        if big == Self::zero() {
            return big;
        }
        let r = small / big.clone();
        big * (Self::from_f64(1.0) + r.clone() * r).sqrt()
    }
}

impl Scalar for f64 {
    fn from_f64(x: f64) -> Self {
        x
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn sqrt(&self) -> Self {
        f64::sqrt(*self)
    }
    fn epsilon() -> Self {
        f64::EPSILON
    }
}

/// Binary floating point with [`HP_BITS`] bits of significand.
#[derive(Clone, Debug, PartialEq, PartialOrd)]
pub struct Hp(FBig<HalfEven>);

impl Hp {
    fn wrap(x: FBig<HalfEven>) -> Self {
        Hp(x.with_precision(HP_BITS).value())
    }

    pub fn from_bigint(n: &BigInt) -> Self {
        let (sign, bytes) = n.to_bytes_le();
        let mag = IBig::from(dashu_int::UBig::from_le_bytes(&bytes));
        let signed = if sign == Sign::Minus { -mag } else { mag };
        Hp::wrap(FBig::from(signed))
    }

    pub fn from_ratio(x: &BigRational) -> Self {
        Hp::from_bigint(x.numer()) / Hp::from_bigint(x.denom())
    }
}

macro_rules! hp_binop {
    ($tr:ident, $f:ident) => {
        impl $tr for Hp {
            type Output = Hp;
            fn $f(self, rhs: Hp) -> Hp {
                Hp(self.0.$f(rhs.0))
            }
        }
    };
}
hp_binop!(Add, add);
hp_binop!(Sub, sub);
hp_binop!(Mul, mul);
hp_binop!(Div, div);

impl Neg for Hp {
    type Output = Hp;
    fn neg(self) -> Hp {
        Hp(-self.0)
    }
}

impl Scalar for Hp {
    fn from_f64(x: f64) -> Self {
        Hp::wrap(FBig::try_from(x).expect("finite input"))
    }
    fn to_f64(&self) -> f64 {
        self.0.to_f64().value()
    }
    fn sqrt(&self) -> Self {
        Hp(self.0.sqrt())
    }
    fn epsilon() -> Self {
        Hp::wrap(FBig::from_parts(IBig::from(1), -(HP_BITS as isize) + 2))
    }
}

/// Dense symmetric matrix to `(diagonal, off-diagonal)` by Householder
/// reflections; `off[i]` couples rows `i` and `i + 1`.
pub fn tridiagonalize<S: Scalar>(mut a: Vec<Vec<S>>) -> (Vec<S>, Vec<S>) {
    let n = a.len();
    let zero = S::zero();
    let mut off = vec![zero.clone(); n.saturating_sub(1)];
    for k in 0..n.saturating_sub(2) {
        let norm = (k + 1..n)
            .fold(zero.clone(), |acc, i| acc + a[i][k].clone() * a[i][k].clone())
            .sqrt();
        if norm == zero {
            continue;
        }
        let alpha = if a[k + 1][k] < zero { norm } else { -norm };
        let mut v: Vec<S> = (k + 1..n).map(|i| a[i][k].clone()).collect();
        v[0] = v[0].clone() - alpha.clone();
        let vtv = v.iter().fold(zero.clone(), |acc, x| acc + x.clone() * x.clone());
        if vtv == zero {
            off[k] = a[k + 1][k].clone();
            continue;
        }
        let beta = S::from_f64(2.0) / vtv;
        let m = n - k - 1;
        // p = β A₂₂ v, q = p − (β vᵀp / 2) v, A₂₂ ← A₂₂ − v qᵀ − q vᵀ
        let p: Vec<S> = (0..m)
            .map(|r| {
                (0..m).fold(zero.clone(), |acc, c| acc + a[k + 1 + r][k + 1 + c].clone() * v[c].clone())
                    * beta.clone()
            })
            .collect();
        let vp = v.iter().zip(&p).fold(zero.clone(), |acc, (x, y)| acc + x.clone() * y.clone());
        let half = beta * vp / S::from_f64(2.0);
        let q: Vec<S> = p.iter().zip(&v).map(|(pi, vi)| pi.clone() - half.clone() * vi.clone()).collect();
        for r in 0..m {
            for c in 0..=r {
                let upd = a[k + 1 + r][k + 1 + c].clone()
                    - v[r].clone() * q[c].clone()
                    - q[r].clone() * v[c].clone();
                a[k + 1 + r][k + 1 + c] = upd.clone();
                a[k + 1 + c][k + 1 + r] = upd;
            }
        }
        off[k] = alpha;
        for i in k + 2..n {
            a[i][k] = zero.clone();
            a[k][i] = zero.clone();
        }
    }
    if n >= 2 {
        off[n - 2] = a[n - 1][n - 2].clone();
    }
    let diag = (0..n).map(|i| a[i][i].clone()).collect();
    (diag, off)
}

/// Eigenvalues of a symmetric tridiagonal matrix by implicit QL with
/// Wilkinson-type shifts, sorted ascending.
pub fn tridiagonal_eigenvalues<S: Scalar>(diag: &[S], off: &[S]) -> Result<Vec<S>> {
    let n = diag.len();
    let zero = S::zero();
    let one = S::from_f64(1.0);
    let two = S::from_f64(2.0);
    let mut d = diag.to_vec();
    let mut e: Vec<S> = off.to_vec();
    e.resize(n, zero.clone());
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= S::epsilon() * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > MAX_QL_ITERS {
                return Err(Error::NoConvergence);
            }
            let mut g = (d[l + 1].clone() - d[l].clone()) / (two.clone() * e[l].clone());
            let mut r = g.hypot(&one);
            let signed_r = if g >= zero { r.abs() } else { -r.abs() };
            g = d[m].clone() - d[l].clone() + e[l].clone() / (g + signed_r);
            let (mut s, mut c, mut p) = (one.clone(), one.clone(), zero.clone());
            let mut i = m;
            let mut underflow = false;
            while i > l {
                i -= 1;
                let f = s.clone() * e[i].clone();
                let b = c.clone() * e[i].clone();
                r = f.hypot(&g);
                e[i + 1] = r.clone();
                if r == zero {
                    d[i + 1] = d[i + 1].clone() - p.clone();
                    e[m] = zero.clone();
                    underflow = true;
                    break;
                }
                s = f / r.clone();
                c = g.clone() / r.clone();
                g = d[i + 1].clone() - p.clone();
                r = (d[i].clone() - g.clone()) * s.clone() + two.clone() * c.clone() * b.clone();
                p = s.clone() * r.clone();
                d[i + 1] = g.clone() + p.clone();
                g = c.clone() * r.clone() - b;
            }
            if underflow {
                continue;
            }
            d[l] = d[l].clone() - p;
            e[l] = g;
            e[m] = zero.clone();
        }
    }
    d.sort_by(|a, b| a.partial_cmp(b).unwrap_or(Ordering::Equal));
    Ok(d)
}

/// Sorted eigenvalues of a dense symmetric matrix in any [`Scalar`].
pub fn dense_eigenvalues<S: Scalar>(a: Vec<Vec<S>>) -> Result<Vec<S>> {
    let (d, e) = tridiagonalize(a);
    tridiagonal_eigenvalues(&d, &e)
}

/// Unscaled exact block in [`Hp`]. Irrational entries are rounded once.
pub fn block_to_hp(block: &BlockMatrix) -> Vec<Vec<Hp>> {
    let root2 = Hp::from_f64(2.0).sqrt();
    block
        .rows()
        .map(|row| {
            row.iter()
                .map(|x| {
                    if x.is_rational() {
                        Hp::from_ratio(&x.a)
                    } else {
                        Hp::from_ratio(&x.a) + root2.clone() * Hp::from_ratio(&x.b)
                    }
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn test_matrix(n: usize) -> DMatrix<f64> {
        DMatrix::from_fn(n, n, |i, j| {
            let (i, j) = (i.min(j) as f64, i.max(j) as f64);
            (1.0 + i * 0.7 + j * 0.3).sin() + if i == j { i } else { 0.0 }
        })
    }

    #[test]
    fn diagonal() {
        let m = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![3.0, 1.0, 2.0]));
        assert_eq!(symmetric_eigenvalues(&m).unwrap(), vec![1.0, 2.0, 3.0]);
    }

    #[test]
    fn generic_matches_nalgebra() {
        for n in [1, 2, 5, 17] {
            let m = test_matrix(n);
            let reference = symmetric_eigenvalues(&m).unwrap();
            let rows: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| m[(i, j)]).collect()).collect();
            let ours = dense_eigenvalues(rows.clone()).unwrap();
            let hp_rows = rows.iter().map(|r| r.iter().map(|&x| Hp::from_f64(x)).collect()).collect();
            let hp = dense_eigenvalues::<Hp>(hp_rows).unwrap();
            for ((a, b), c) in reference.iter().zip(&ours).zip(&hp) {
                assert!((a - b).abs() < 1e-12 * (1.0 + a.abs()), "n = {n}");
                assert!((a - c.to_f64()).abs() < 1e-12 * (1.0 + a.abs()), "n = {n}");
            }
        }
    }

    #[test]
    fn hp_resolves_tiny_shift() {
        // Eigenvalues 1e40 and 1: invisible to f64 after a rotation.
        let c = Hp::from_f64(0.6);
        let s = Hp::from_f64(0.8);
        let big = Hp::from_f64(1e40);
        let one = Hp::from_f64(1.0);
        let a = vec![
            vec![c.clone() * c.clone() * big.clone() + s.clone() * s.clone() * one.clone(),
                 c.clone() * s.clone() * (big.clone() - one.clone())],
            vec![c.clone() * s.clone() * (big.clone() - one.clone()),
                 s.clone() * s.clone() * big + c.clone() * c * one],
        ];
        let ev = dense_eigenvalues(a).unwrap();
        assert!((ev[0].to_f64() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn bigint_conversion() {
        let n = BigInt::from(-12345678901234567i64) * BigInt::from(1u64 << 40);
        assert_eq!(Hp::from_bigint(&n).to_f64(), -12345678901234567.0 * 2f64.powi(40));
    }
}
