use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::block::{BlockKind, BlockMatrix};
use crate::error::{Error, Result};
use crate::exact::{factorial, QSqrt2};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Parity {
    Odd,
    Even,
}

impl Parity {
    pub fn of(j: usize) -> Self {
        if j % 2 == 1 {
            Parity::Odd
        } else {
            Parity::Even
        }
    }
}

/// Cantoni–Butler splitting of a symmetric centrosymmetric block of order `n`.
///
/// Writing `m = ⌊n/2⌋`, the block is
/// `[[A, JCJ], [C, JAJ]]` for even `n` and `[[A, x, JCJ], [xᵀ, q, xᵀJ], [C, Jx, JAJ]]`
/// for odd `n`. It is orthogonally similar to `S ⊕ (A − JC)` where
/// `S = A + JC` (even `n`) or `S = [[A + JC, √2 x], [√2 xᵀ, q]]` (odd `n`).
#[derive(Clone, Debug)]
pub struct CentroDecomposition {
    pub j: usize,
    pub parity: Parity,
    pub a: BlockMatrix,
    pub c: BlockMatrix,
    pub x: Option<Vec<QSqrt2>>,
    pub q: Option<QSqrt2>,
    pub s: BlockMatrix,
    /// `A + JC` alone; present for even `j`.
    pub r: Option<BlockMatrix>,
    pub skew: BlockMatrix,
}

pub fn centro_decompose(block: &BlockMatrix) -> Result<CentroDecomposition> {
    if !block.is_symmetric() || !block.is_centrosymmetric() {
        return Err(Error::NotCentrosymmetric);
    }
    let n = block.order();
    let m = n / 2;
    let j = block.j;
    let a = BlockMatrix::from_fn(j, block.kind, m, |k, l| block.get(k, l).clone());
    let c = BlockMatrix::from_fn(j, block.kind, m, |k, l| block.get(n - m + k, l).clone());
    // (JC)_{k,ℓ} = C_{m−1−k, ℓ} = X_{n−1−k, ℓ}
    let jc = BlockMatrix::from_fn(j, block.kind, m, |k, l| block.get(n - 1 - k, l).clone());
    let plus = a.add(&jc, BlockKind::ReducedR);
    let skew = a.sub(&jc, BlockKind::SkewReduced);
    if n % 2 == 0 {
        let s = plus.with_kind(BlockKind::ReducedS);
        return Ok(CentroDecomposition {
            j,
            parity: Parity::of(j),
            a,
            c,
            x: None,
            q: None,
            s,
            r: None,
            skew,
        });
    }
    let x: Vec<QSqrt2> = (0..m).map(|k| block.get(k, m).clone()).collect();
    let q = block.get(m, m).clone();
    let root2 = QSqrt2::sqrt2_multiple(BigRational::one());
    let s = BlockMatrix::from_fn(j, BlockKind::ReducedS, m + 1, |k, l| match (k < m, l < m) {
        (true, true) => plus.get(k, l).clone(),
        (true, false) => &root2 * &x[k],
        (false, true) => &root2 * &x[l],
        (false, false) => q.clone(),
    });
    Ok(CentroDecomposition {
        j,
        parity: Parity::of(j),
        a,
        c,
        x: Some(x),
        q: Some(q),
        s,
        r: Some(plus),
        skew,
    })
}

impl CentroDecomposition {
    /// Rebuilds the full block from `A`, `C` (and `x`, `q`).
    pub fn reassemble(&self, kind: BlockKind) -> BlockMatrix {
        let m = self.a.order();
        let n = if self.x.is_some() { 2 * m + 1 } else { 2 * m };
        BlockMatrix::from_fn(self.j, kind, n, |k, l| {
            let mirror = |i: usize| n - 1 - i;
            let in_top = |i: usize| i < m;
            let in_bottom = |i: usize| i >= n - m;
            match (in_top(k), in_bottom(k), in_top(l), in_bottom(l)) {
                (true, _, true, _) => self.a.get(k, l).clone(),
                (_, true, true, _) => self.c.get(k - (n - m), l).clone(),
                (true, _, _, true) => self.c.get(m - 1 - k, mirror(l)).clone(),
                (_, true, _, true) => self.a.get(mirror(k), mirror(l)).clone(),
                _ => {
                    let x = self.x.as_ref().expect("middle row only exists for odd order");
                    if k == m && l == m {
                        self.q.clone().unwrap()
                    } else if k == m {
                        x[l.min(mirror(l))].clone()
                    } else {
                        x[k.min(mirror(k))].clone()
                    }
                }
            }
        })
    }
}

/// Output of [`rank_one_split`]: `reduced = T + K` with `T` tridiagonal and
/// `K = (j!/2^j)·𝟙𝟙ᵀ`, whose only nonzero eigenvalue is `δ = tr K`.
#[derive(Clone, Debug)]
pub struct RankOneSplit {
    pub t: BlockMatrix,
    pub k: BlockMatrix,
    pub delta: BigRational,
}

/// Splits `S^{(j)}` (odd `j`) or `R^{(j)}` (even `j`).
pub fn rank_one_split(decomp: &CentroDecomposition) -> Result<RankOneSplit> {
    let reduced = match decomp.parity {
        Parity::Odd => &decomp.s,
        Parity::Even => decomp.r.as_ref().ok_or(Error::WrongParityInput(decomp.j))?,
    };
    let j = decomp.j;
    let c = BigRational::new(factorial(j), BigInt::from(2).pow(j as u32));
    let order = reduced.order();
    let k = BlockMatrix::from_fn(j, BlockKind::RankOneK, order, |_, _| QSqrt2::rational(c.clone()));
    let t = reduced.sub(&k, BlockKind::TridiagonalT);
    if !t.is_tridiagonal() {
        return Err(Error::WrongParityInput(j));
    }
    let delta = c * BigRational::from_integer(order.into());
    debug_assert!(!delta.is_zero() || order == 0);
    Ok(RankOneSplit { t, k, delta })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational;
    use crate::spectra::build_b_block;

    #[test]
    fn reassembly_is_exact() {
        for j in 0..20 {
            let b = build_b_block(j);
            let d = centro_decompose(&b).unwrap();
            assert_eq!(d.reassemble(BlockKind::FullB), b, "j = {j}");
        }
    }

    #[test]
    fn rejects_non_centrosymmetric() {
        let m = BlockMatrix::from_fn(1, BlockKind::FullB, 2, |k, l| QSqrt2::from((k + 2 * l) as i64));
        assert!(matches!(centro_decompose(&m), Err(Error::NotCentrosymmetric)));
    }

    #[test]
    fn seven_has_known_delta() {
        let d = centro_decompose(&build_b_block(7)).unwrap();
        assert_eq!(rank_one_split(&d).unwrap().delta, rational(315, 2));
    }
}
