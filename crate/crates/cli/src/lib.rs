//! Parser, loader and task runner for `.kcat` workspace files.

pub mod ast;
pub mod load;
pub mod parse;
pub mod report;
pub mod run;

pub use ast::WorkspaceFile;
pub use load::{load, LoadError, LoadOptions, Workspace};
pub use parse::{parse, ParseError};
pub use report::{Report, Status};
pub use run::{parse_field, run_source, Outcome, RunOptions};
