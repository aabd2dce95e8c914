//! File formats shared by the command-line tool and the tests.

pub mod csv;
pub mod svg;
