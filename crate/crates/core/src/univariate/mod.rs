//! Univariate orthogonal polynomial families defined by three-term
//! recurrences, the classical catalog, and adjacent-family connection
//! coefficients.

pub mod adjacent;
pub mod classical;
pub mod family;
pub mod tabulated;

pub use adjacent::{adjacent_down, adjacent_up, AdjacentDown, AdjacentUp};
pub use classical::{bessel, jacobi_shift, jacobi_std, laguerre};
pub use family::{LeadingPair, Recurrence, RecurrenceFamily};
pub use tabulated::Ladder;
