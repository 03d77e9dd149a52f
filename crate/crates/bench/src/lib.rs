//! Shared inputs for the kernel benchmarks.

use std::path::PathBuf;

use paramod_core::paramod::JacobiFormData;

/// Loads a shipped Jacobi table, e.g. `level5/g6.jf`.
pub fn table(rel: &str) -> JacobiFormData {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(rel);
    JacobiFormData::from_file(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}
