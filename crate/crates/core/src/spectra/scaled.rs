use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_rational::BigRational;

use super::block::BlockMatrix;
use crate::exact::{factorials, ratio_to_f64};

/// Congruence `X ↦ D⁻¹ X D⁻¹` with `D = diag(√(k!(j−k)!))`.
///
/// The same weights apply to full blocks and to every reduced block, since
/// `k!(j−k)!` is symmetric under `k ↦ j − k` (the border index `q = j/2` gets
/// `q!²`). Entries become ratios of binomials and stay `O(j)`; inertia is
/// unchanged.
pub fn scaled_block(block: &BlockMatrix) -> DMatrix<f64> {
    let j = block.j;
    let fact = factorials(j);
    let weights: Vec<BigInt> = (0..block.order()).map(|k| &fact[k] * &fact[j - k]).collect();
    DMatrix::from_fn(block.order(), block.order(), |k, l| {
        // Evaluate the upper triangle only so the result is exactly symmetric.
        let (k, l) = (k.min(l), k.max(l));
        let x = block.get(k, l);
        // X/w_k is bounded; √(w_k/w_l) is a ratio of moderate size.
        let head = x.scale(&BigRational::new(1.into(), weights[k].clone())).to_f64();
        let ratio = ratio_to_f64(&BigRational::new(weights[k].clone(), weights[l].clone()));
        head * ratio.sqrt()
    })
}
