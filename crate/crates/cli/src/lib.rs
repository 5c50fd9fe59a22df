//! Point evaluation, figure sweeps and the validation battery behind the
//! `qtele` binary.

pub mod battery;
pub mod error;
pub mod quantity;
pub mod sweep;

pub use error::{CliError, Result};
pub use quantity::{Param, Point, Quantity};
pub use sweep::{Axis, FigurePreset, SweepRow, SweepSpec};
