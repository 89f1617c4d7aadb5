//! Polytopal ball packings in the Lorentzian model.

pub mod apollonian;
pub mod descartes;
pub mod lorentz;
pub mod numeric;
pub mod packing;
pub mod polytope;
pub mod shell;
