pub mod grid;
pub mod metric;
pub mod moments;
pub mod table;
pub mod verify;
