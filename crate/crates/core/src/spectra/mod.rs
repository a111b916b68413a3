//! Exact blocks of the quartic quadratic form and their spectral structure.

mod block;
mod centro;
mod eigen;
mod interlace;
mod null;
mod scaled;

pub use block::{build_b_block, build_e_block, BlockKind, BlockMatrix};
pub use centro::{centro_decompose, rank_one_split, CentroDecomposition, Parity, RankOneSplit};
pub use eigen::{
    block_to_hp, dense_eigenvalues, symmetric_eigenvalues, tridiagonal_eigenvalues,
    tridiagonalize, Hp, Scalar, HP_BITS,
};
pub use interlace::{interlacing_check, InterlacingReport};
pub use null::{null_vectors, verify_null_vectors};
pub use scaled::scaled_block;
