//! Runs the guide's code blocks as doc-tests.

#[doc = include_str!("../../../book/src/introduction.md")]
mod introduction {}

#[doc = include_str!("../../../book/src/channel.md")]
mod channel {}

#[doc = include_str!("../../../book/src/metrics.md")]
mod metrics {}

#[doc = include_str!("../../../book/src/series.md")]
mod series {}

#[doc = include_str!("../../../book/src/high-snr.md")]
mod high_snr {}

#[doc = include_str!("../../../book/src/validation.md")]
mod validation {}

#[doc = include_str!("../../../book/src/cli.md")]
mod cli {}
