//! Logarithmic Tjurina invariants, equisingular ideals and embedded
//! resolution of plane curve germs `F = y·f + x^w·u` relative to the
//! smooth divisor `y = 0`.

pub mod exactnum;
pub mod series2;
pub mod groebner;
pub mod germ;
pub mod resolution;
pub mod branches;
pub mod logideals;
pub mod catalog;
pub mod cli;
