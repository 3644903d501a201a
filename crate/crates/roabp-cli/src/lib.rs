//! Library surface of the batch tool: the on-disk formats, shared by the
//! binary and its integration tests.

pub mod format;
