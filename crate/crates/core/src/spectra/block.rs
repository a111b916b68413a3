use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::exact::{factorials, QSqrt2};

/// What a [`BlockMatrix`] holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BlockKind {
    FullB,
    FullE,
    ReducedS,
    ReducedR,
    SkewReduced,
    TridiagonalT,
    RankOneK,
}

/// Dense exact symmetric matrix tagged with its block index `j`.
///
/// All indices are 0-based. Entry `(k, ℓ)` of a full block couples the
/// products `a_k a_{j−k}` and `a_ℓ a_{j−ℓ}`.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockMatrix {
    pub j: usize,
    pub kind: BlockKind,
    order: usize,
    entries: Vec<QSqrt2>,
}

impl BlockMatrix {
    pub fn from_fn(j: usize, kind: BlockKind, order: usize, f: impl FnMut(usize, usize) -> QSqrt2) -> Self {
        let mut f = f;
        let mut entries = Vec::with_capacity(order * order);
        for k in 0..order {
            for l in 0..order {
                entries.push(f(k, l));
            }
        }
        BlockMatrix { j, kind, order, entries }
    }

    pub fn with_kind(mut self, kind: BlockKind) -> Self {
        self.kind = kind;
        self
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, k: usize, l: usize) -> &QSqrt2 {
        &self.entries[k * self.order + l]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[QSqrt2]> {
        self.entries.chunks(self.order.max(1))
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.order).all(|k| (0..k).all(|l| self.get(k, l) == self.get(l, k)))
    }

    /// `X_{k,ℓ} = X_{n−1−k, n−1−ℓ}`.
    pub fn is_centrosymmetric(&self) -> bool {
        let n = self.order;
        (0..n).all(|k| (0..n).all(|l| self.get(k, l) == self.get(n - 1 - k, n - 1 - l)))
    }

    pub fn is_tridiagonal(&self) -> bool {
        (0..self.order).all(|k| {
            (0..self.order).all(|l| k.abs_diff(l) <= 1 || self.get(k, l).is_zero())
        })
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn trace(&self) -> QSqrt2 {
        (0..self.order).fold(QSqrt2::zero(), |acc, k| &acc + self.get(k, k))
    }

    pub fn mul_vec(&self, v: &[QSqrt2]) -> Vec<QSqrt2> {
        assert_eq!(v.len(), self.order, "vector length must match matrix order");
        self.rows()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .filter(|(x, y)| !x.is_zero() && !y.is_zero())
                    .fold(QSqrt2::zero(), |acc, (x, y)| &acc + &(x * y))
            })
            .collect()
    }

    pub fn sub(&self, other: &BlockMatrix, kind: BlockKind) -> BlockMatrix {
        assert_eq!(self.order, other.order);
        BlockMatrix {
            j: self.j,
            kind,
            order: self.order,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn add(&self, other: &BlockMatrix, kind: BlockKind) -> BlockMatrix {
        assert_eq!(self.order, other.order);
        BlockMatrix {
            j: self.j,
            kind,
            order: self.order,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect(),
        }
    }

    /// Every entry multiplied by `k`.
    pub fn scaled(&self, k: &BigRational) -> BlockMatrix {
        BlockMatrix {
            entries: self.entries.iter().map(|x| x.scale(k)).collect(),
            ..self.clone()
        }
    }

    /// `(g, X/g)` with `g > 0` the largest rational making every rational and
    /// `√2` part of `X/g` an integer.
    pub fn common_factor(&self) -> (BigRational, BlockMatrix) {
        let parts = self
            .entries
            .iter()
            .flat_map(|x| [&x.a, &x.b])
            .filter(|r| !r.is_zero());
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for r in parts {
            num = num.gcd(r.numer());
            den = den.lcm(r.denom());
        }
        if num.is_zero() {
            return (BigRational::one(), self.clone());
        }
        let g = BigRational::new(num.abs(), den);
        let inv = g.recip();
        (g, self.scaled(&inv))
    }

    /// Entries as `"p/q"` strings, with a `·√2` suffix on irrational ones.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        self.rows().map(|r| r.iter().map(ToString::to_string).collect()).collect()
    }
}

/// `j!/2^{j+1}`, the constant part of every entry.
fn base_entry(j: usize, fact: &[BigInt]) -> BigRational {
    BigRational::new(fact[j].clone(), BigInt::from(2).pow(j as u32 + 1))
}

fn eighth(x: BigInt) -> BigRational {
    BigRational::new(x, BigInt::from(8))
}

/// Block `B^{(j)}` of the quadratic form `B`.
///
/// ```text
/// B_{k,k}   = j!/2^{j+1} + (j−4) k!(j−k)!/8
/// B_{k,k+1} = j!/2^{j+1} − (k+1)!(j−k)!/8
/// B_{k,ℓ}   = j!/2^{j+1}                    otherwise
/// ```
pub fn build_b_block(j: usize) -> BlockMatrix {
    build(j, BlockKind::FullB, true)
}

/// Block `E^{(j)}`: the same as `B^{(j)}` without the `|Q|²` coupling on the
/// first off-diagonal.
pub fn build_e_block(j: usize) -> BlockMatrix {
    build(j, BlockKind::FullE, false)
}

fn build(j: usize, kind: BlockKind, with_q: bool) -> BlockMatrix {
    let fact = factorials(j + 1);
    let base = base_entry(j, &fact);
    let jm4 = BigInt::from(j as i64 - 4);
    BlockMatrix::from_fn(j, kind, j + 1, |k, l| {
        let entry = if k == l {
            &base + eighth(&jm4 * &fact[k] * &fact[j - k])
        } else if with_q && k.abs_diff(l) == 1 {
            let lo = k.min(l);
            &base - eighth(&fact[lo + 1] * &fact[j - lo])
        } else {
            base.clone()
        };
        QSqrt2::rational(entry)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational;

    fn from_ints(j: usize, scale: BigRational, rows: &[&[i64]]) -> Vec<Vec<QSqrt2>> {
        let _ = j;
        rows.iter()
            .map(|r| r.iter().map(|&x| QSqrt2::rational(&scale * BigRational::from_integer(x.into()))).collect())
            .collect()
    }

    fn as_rows(m: &BlockMatrix) -> Vec<Vec<QSqrt2>> {
        m.rows().map(|r| r.to_vec()).collect()
    }

    #[test]
    fn small_blocks() {
        assert_eq!(as_rows(&build_b_block(1)), from_ints(1, rational(1, 8), &[&[-1, 1], &[1, -1]]));
        assert_eq!(
            as_rows(&build_b_block(2)),
            from_ints(2, rational(1, 4), &[&[-1, 0, 1], &[0, 0, 0], &[1, 0, -1]])
        );
        assert_eq!(build_e_block(0).get(0, 0), &QSqrt2::zero());
        assert_eq!(build_b_block(0).get(0, 0), &QSqrt2::zero());
    }

    #[test]
    fn factored_five() {
        let (g, m) = build_b_block(5).common_factor();
        assert_eq!(g, rational(3, 8));
        assert!(m.rows().flatten().all(|x| x.is_rational() && x.a.is_integer()));
        assert_eq!(m.get(0, 0), &QSqrt2::from(45));
    }

    #[test]
    fn structure() {
        for j in 0..30 {
            let b = build_b_block(j);
            assert!(b.is_symmetric() && b.is_centrosymmetric(), "j = {j}");
        }
        let diff = build_e_block(2).sub(&build_b_block(2), BlockKind::FullE);
        assert!(diff.is_tridiagonal());
        assert!((0..3).all(|k| diff.get(k, k).is_zero()));
    }
}
