//! Library side of the `brunnian` command: table reproduction, per-instance
//! reports, the density count and group certification, plus rendering.

pub mod density;
pub mod error;
pub mod fixture;
pub mod group;
pub mod render;
pub mod table;
pub mod verify;

pub use density::{run_density, DensityCount};
pub use error::CliError;
pub use group::{run_group_check, GroupCheck};
pub use render::Format;
pub use table::{run_table, DegreeRange, Source, TableRow};
pub use verify::{run_verify, verify_exit_code};
