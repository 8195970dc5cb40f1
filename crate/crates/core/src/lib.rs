pub mod check;
pub mod cli;
pub mod convex_sep;
pub mod extreal;
pub mod finspace;
pub mod functionals;
pub mod interpolate;
pub mod lp;
pub mod sample;
pub mod valuations;
