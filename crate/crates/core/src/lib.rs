pub mod complex;
pub mod error;
pub mod fixtures;
pub mod geom;
pub mod lp;
pub mod rdel;
pub mod represent;
pub mod sample;
pub mod tdsystem;
pub mod witness;

pub use complex::{close_downward, Face, SimplicialComplex, VertexId};
pub use error::{Error, Result};
pub use geom::{format_rational, homothety_decompose, parse_rational, PointConfiguration, Rational, SimplexCorner};
pub use rdel::PlanarPointSet;
pub use represent::{standardness_from_complex, NonfaceCertificate, Representation, StandardnessReport};
pub use tdsystem::{
    build_system, check_multiflow, decide, find_multiflow, realize, verify_multiflow, FeasibilityVerdict, FlowDefect,
    MultiFlow, TdSystem,
};
pub use witness::{counterexample_representation, enumerate_candidates, verify_counterexample, CounterexampleReport};
