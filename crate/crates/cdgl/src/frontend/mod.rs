//! Expression parser, canonical formatter, JSON serialization, and the
//! command-line interface.

pub mod cli;
pub mod format;
pub mod parse;
pub mod serialize;

pub use cli::cli_main;
pub use format::{format_element, Style};
pub use parse::{parse_expression, parse_text, CallName, Expr};
pub use serialize::{
    deserialize_algebra, deserialize_element, deserialize_element_in, serialize_algebra,
    serialize_element,
};
