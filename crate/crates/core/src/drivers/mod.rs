//! Desingularization drivers.

pub mod curve;
pub mod loci;
pub mod marked;
pub mod pair;
pub mod report;
pub mod surface;

pub use curve::{floc_curve, resolve_curve};
pub use marked::{bm_resolve_marked, MarkedState};
pub use pair::resolve_pair;
pub use report::{Checks, DriverReport, LogEntry, Tag};
pub use surface::{floc_surface, fvar_surface};
