pub mod builtins;
pub mod error;
pub mod exactalg;
pub mod implicitize;
pub mod surfcalc;
pub mod tfsurface;
pub mod verify;

pub use error::{Error, Result};
