//! Exact computation of Markov-type spectra for billiards in the modular
//! triangle: quadratic surds, continued fractions, binary quadratic forms,
//! billiard folding, spectra and SVG figures.

pub mod billiard;
pub mod cfrac;
pub mod exact;
pub mod forms;
pub mod literal;
pub mod render;
pub mod spectra;
pub mod verify;
