//! Orbit atlases for secant varieties of cominuscule varieties and for the isotropic
//! Grassmannians `IG(k, 2N)`.

pub mod comatlas;
pub mod error;
pub mod exactla;
pub mod io;
pub mod isolab;
pub mod poset;
pub mod rootsys;
pub mod verify;
pub mod weylcomb;

pub use error::{Error, Result};
