//! The `sierpdom` command-line tool and its theorem-verification harness.

pub mod app;
pub mod harness;
pub mod input;
pub mod report;
