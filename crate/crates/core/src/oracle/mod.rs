//! First-principles computations in A-grmod, A-grstab and the orbit category.

pub mod algebra;
pub mod hom;
pub mod module;
pub mod orbit;
pub mod stable;
pub mod star_modules;
pub mod syzygy;

pub use algebra::{build_kronecker_algebra, build_star_algebra, Algebra, AlgebraPresentation, Arrow, Path, Relation, Side};
pub use hom::hom_grmod;
pub use module::{GradedModule, GradedMorphism, Slot};
pub use orbit::{les_cone_hom_dim, orbit_compose, orbit_hom, OrbitHomSpace, OrbitMorphism, WitnessChain};
pub use stable::{is_isomorphic, stable_hom, IsoVerdict, StableHomSpace};
pub use syzygy::{mapping_cone, omega, omega_inverse, omega_on_morphism, projective_cover, strip_projective_summands};
