//! Every listing in the guide under `book/` runs here as a doctest.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/paths.md")]
pub mod paths {}

#[doc = include_str!("../../../book/src/partitions.md")]
pub mod partitions {}

#[doc = include_str!("../../../book/src/membership.md")]
pub mod membership {}

#[doc = include_str!("../../../book/src/sieving.md")]
pub mod sieving {}

#[doc = include_str!("../../../book/src/parking.md")]
pub mod parking {}

#[doc = include_str!("../../../book/src/configurations.md")]
pub mod configurations {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}

#[doc = include_str!("../../../README.md")]
pub mod readme {}
