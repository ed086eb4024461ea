//! Capacitated fault-tolerant k-center: approximation algorithms for the
//! conservative and non-conservative variants, the LP and flow machinery
//! they rely on, and exact brute-force oracles for checking them.

pub mod bottleneck;
pub mod clustering;
pub mod conservative;
pub mod error;
pub mod flow;
pub mod generate;
pub mod graph;
pub mod instance;
pub mod lp;
pub mod numeric;
pub mod oracle;
pub mod pipeline;
pub mod report;
pub mod rounding;

pub use error::{Error, Result};
pub use graph::ThresholdGraph;
pub use instance::{MetricInstance, Variant};
pub use numeric::{Length, Rational};
