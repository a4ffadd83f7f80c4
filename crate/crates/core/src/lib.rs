pub mod agent;
pub mod graph;
pub mod interval;
pub mod rational;
pub mod pure_eq;
pub mod bne;
#[cfg(feature = "oracle")]
pub mod oracle;
#[cfg(feature = "oracle")]
pub mod cli;
