//! Exact rational geometry of convex polytopes: mixed volumes, surface area
//! measures, Wulff shapes and inequality checks.

pub mod corpus;
pub mod decomposition;
pub mod error;
pub mod halfspace;
pub mod hull;
pub mod inequality;
pub mod io;
pub mod linalg;
pub mod measure;
pub mod mixed;
pub mod polytope;
pub mod scalar;
pub mod wulff;

pub use error::{GeometryError, Result};
pub use halfspace::Halfspace;
pub use inequality::{InequalityForm, InequalityReport, Verdict};
pub use measure::DiscreteSphereMeasure;
pub use polytope::{convex_hull, Facet, Polytope};
pub use scalar::{format_scalar, parse_scalar, Direction, Point, Scalar};
pub use wulff::{PerturbationSpec, Side, SupportSpec};
