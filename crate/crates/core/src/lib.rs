//! Approximate minimum-width annuli whose shells are homothets of a convex polytope.
//!
//! Given a point cloud `S` and a convex polytope `C` containing the origin in its interior,
//! an annulus centred at `c` is the region between `c + r·C` and `c + R·C`. The solvers find
//! placements whose width `R - r` is within a factor `1 + ε` of optimal, either over
//! translations only ([`mwa_translation`]) or over translations and rotations
//! ([`mwa_rigid`]).

pub mod annulus;
pub mod bench;
pub mod error;
pub mod io;
pub mod linalg;
pub mod lp;
pub mod minball;
pub mod oracle;
pub mod planar;
pub mod polytope;
pub mod rotation;
pub mod sampler;
pub mod shapes;
pub mod svg;
pub mod translation;

pub use annulus::{annulus_at, fatness_stats, radii_at, AnnulusSolution, PointCloud, SolveMeta, SolveMode};
pub use error::{Error, Result};
pub use minball::{maxball_at, minball, Placement};
pub use oracle::{brute_force_oracle, OracleConfig, OracleMode, OracleReport};
pub use polytope::{ConvexPolytope, Cube, Facet, Rotation};
pub use rotation::{mwa_rigid, mwa_rotation_only};
pub use sampler::{sample_boundary, GeneratorSpec, GroundTruth};
pub use translation::{mwa_translation, SolverConfig};
