pub mod error;
pub mod linalg;
pub mod matrix;
pub mod modular;
pub mod rational;
pub mod lattice;
pub mod enumerate;
pub mod hull;
pub mod delaunay;
pub mod catalog;
pub mod analysis;
pub mod leech;
pub mod laminate;
