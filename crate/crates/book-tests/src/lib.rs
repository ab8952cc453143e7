//! Every chapter of the guide as a module, so `cargo test --doc` runs its listings.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/tableaux.md")]
pub mod tableaux {}
#[doc = include_str!("../../../book/src/group-algebra.md")]
pub mod group_algebra {}
#[doc = include_str!("../../../book/src/schur-weyl.md")]
pub mod schur_weyl {}
#[doc = include_str!("../../../book/src/moments.md")]
pub mod moments {}
#[doc = include_str!("../../../book/src/oracles.md")]
pub mod oracles {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
#[doc = include_str!("../../../README.md")]
pub mod readme {}
