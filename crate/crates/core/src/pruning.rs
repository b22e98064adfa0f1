//! placeholder
pub struct PruneReport;
impl std::fmt::Debug for PruneReport { fn fmt(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result { write!(f, "PruneReport") } }
