//! Homological invariants of quiver algebras: string modules, syzygies,
//! characteristic phantoms and finitistic dimensions.

pub mod linalg;
pub mod presentation;
pub mod strings;
pub mod oracle;
pub mod homology;
pub mod phantom;
pub mod criteria;
pub mod serial;
pub mod io;
pub mod sample;
