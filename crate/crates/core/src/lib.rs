pub mod annihilator;
pub mod bspline;
pub mod charmod;
pub mod dirimage;
pub mod geometry;
pub mod homology;
pub mod io;
pub mod linalg;
pub mod rational;
pub mod samples;
pub mod weyl;
