//! Rough sets on fuzzy approximation spaces with ordering rules and
//! information entropy, and a multi-level performance evaluation built on
//! them.
//!
//! The flow for one level of attributes:
//!
//! 1. [`proximity::build_proximity`] turns each attribute into a fuzzy
//!    proximity matrix, and [`proximity::alpha_partition`] cuts it at α and
//!    closes transitively.
//! 2. [`ordering::order_classes`] ranks the classes and
//!    [`ordering::assign_grades`] maps them onto comment grades.
//! 3. [`entropy::weight_report`] measures the drop-one significance of each
//!    attribute and turns it into weights.
//! 4. [`pipeline::run_level`] combines grades and weights into a score per
//!    object.

pub mod cli;
pub mod config;
pub mod entropy;
pub mod error;
pub mod ism;
pub mod ordering;
pub mod pipeline;
pub mod proximity;
pub mod report;
pub mod roughset;

pub use error::{EvalError, Result};
pub use ism::{
    load_information_system, validate_config, AttributeKind, AttributeSpec, EvaluationConfig, InformationSystem,
    LevelConfig, Polarity, Value,
};
pub use proximity::{alpha_partition, build_proximity, Partition, ProximityMatrix};
