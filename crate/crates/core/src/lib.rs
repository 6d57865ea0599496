//! Degree-4 Vassiliev invariants of links computed from Gauss diagrams,
//! checked against a HOMFLY skein solver.

pub mod corpus;
pub mod gaussdiag;
pub mod homfly;
pub mod invariants;
pub mod linkcode;
pub mod matchcount;
pub mod polyalg;
pub mod surgery;
pub mod verify;
pub mod weightcheck;

pub use gaussdiag::{gauss, GaussDiagram, GaussSum};
pub use homfly::{homfly, substitute, HomflyPoly};
pub use invariants::{all_invariants, Evaluator, InvariantReport};
pub use linkcode::{LinkCode, LinkError, Pass, Sign, Strand};
pub use matchcount::{pair, Catalog, Configuration};
pub use polyalg::{homfly_series, NPoly, XSeries};
