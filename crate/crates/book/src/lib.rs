//! The guide's chapters, compiled so `cargo test` runs their code blocks.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/wiring.md")]
pub mod wiring {}
#[doc = include_str!("../../../book/src/faces.md")]
pub mod faces {}
#[doc = include_str!("../../../book/src/enumeration.md")]
pub mod enumeration {}
#[doc = include_str!("../../../book/src/necklaces.md")]
pub mod necklaces {}
#[doc = include_str!("../../../book/src/stretching.md")]
pub mod stretching {}
#[doc = include_str!("../../../book/src/verification.md")]
pub mod verification {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
