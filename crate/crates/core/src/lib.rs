pub mod apps;
pub mod charpoly;
pub mod fixtures;
pub mod graph;
pub mod reduce;
pub mod regions;
pub mod wfield;
