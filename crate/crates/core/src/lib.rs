//! Exact computations with modules over finite-dimensional quiver algebras
//! over `F_p`: Ext groups, n-cotorsion pairs, recollements of triangular
//! matrix algebras and gluing of tilting modules.

pub mod builtin;
pub mod cotor;
pub mod error;
pub mod example;
pub mod ffld;
pub mod homap;
pub mod io;
pub mod limits;
pub mod modrep;
pub mod quivalg;
pub mod recol;
pub mod report;
pub mod scenario;
pub mod tilt;

pub use error::{Error, Result};
pub use ffld::{Field, Mat};
pub use limits::Limits;
pub use modrep::{Morphism, Representation};
pub use quivalg::Algebra;
pub use report::{CheckReport, Verdict, Witness};
