//! Gap-fill multiple-choice question generation from concept-tagged text.
//!
//! The library turns a directory of plain-text documents, a concept map, and
//! a term glossary into reviewed multiple-choice questions in three steps:
//! corpus ingestion and term classification ([`corpus`]), sentence selection
//! ([`selector`]), and question assembly with distractor analysis
//! ([`generator`]). [`analytics`] summarizes a generated pool and
//! [`pipeline`] wires the steps together behind one configuration.

pub mod analytics;
pub mod corpus;
pub mod error;
pub mod generator;
pub mod knowledge;
pub mod pipeline;
pub mod selector;
pub mod textproc;

pub use error::{Error, Result};
