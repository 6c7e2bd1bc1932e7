//! Command-line front end: expression parsing, polygon drawings, and JSON,
//! CSV and text reports.

pub mod app;
pub mod parse;
pub mod render;
pub mod report;
pub mod scan;

pub use app::{run, Cli, CliError, EXIT_INCONSISTENT, EXIT_INVALID, EXIT_OK};
pub use parse::{parse_poly, parse_poly_with_limit, ParseError, PolyExpr};
pub use render::render_polygon;
