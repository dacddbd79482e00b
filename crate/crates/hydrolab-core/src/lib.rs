//! Numerical laboratory for the rotating hydrostatic channel: blowup-profile
//! construction, a reduced solver on the symmetry line, shear-flow dispersion
//! analysis, and a full 2D pseudo-spectral solver with ill-posedness
//! diagnostics.

pub mod blowup;
pub mod chebyshev;
pub mod profile;
pub mod reduced;
pub mod specfun;

pub use chebyshev::ChebyshevGrid;
