//! Closed-form calculus for the dg-stable category of the Brauer-star algebra `A_{n,d}`.

pub mod ar;
pub mod cone;
pub mod dg;
pub mod grstab;
pub mod params;
pub mod symbols;

pub use ar::{ar_quiver, ArArrow, ArQuiver, ArrowKind, Shape};
pub use cone::{cone, TriangleSym};
pub use dg::{compose_dg, dgstab_hom, normalize, DgMorphism, MorphismKind};
pub use grstab::{arc_contains, canonical_map_symbol, compose_canonical, grstab_hom_dim, omega_power};
pub use params::StarParams;
pub use symbols::{CanonicalMapSymbol, CanonicalObject, StarModuleSymbol};
