pub mod certify;
pub mod error;
pub mod exact;
pub mod fock;
pub mod minimize;
pub mod spectra;
pub mod sturm;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/fock.md")]
    mod fock {}
    #[doc = include_str!("../../../book/src/blocks.md")]
    mod blocks {}
    #[doc = include_str!("../../../book/src/sturm.md")]
    mod sturm {}
    #[doc = include_str!("../../../book/src/minimize.md")]
    mod minimize {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
