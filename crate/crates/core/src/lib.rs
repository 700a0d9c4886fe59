//! Colorings of knot and link diagrams by linear Alexander quandles, the
//! reduced Alexander polynomial, and lower/upper bounds on the minimum
//! number of colors.

pub mod bounds;
pub mod coloring;
pub mod diagram;
pub mod families;
pub mod laurent;
pub mod linalg;
pub mod primes;
pub mod registry;
mod serde_big;

pub use coloring::{Coloring, QuandleParams};
pub use diagram::{build_diagram, parse_pd, Diagram, PdCode};
pub use laurent::LaurentPoly;
