pub mod analysis;
pub mod canon;
pub mod complex;
pub mod embedding;
pub mod enumerate;
pub mod error;
pub mod lines;
pub mod necklace;
pub mod realize;
pub mod render;
pub mod verify;
pub mod wiring;
