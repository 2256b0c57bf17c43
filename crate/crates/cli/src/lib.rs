//! File format and report rendering behind the `cotilt` binary, exposed as a
//! library so integration tests and fixture generators can reuse them.

pub mod format;
pub mod report;
