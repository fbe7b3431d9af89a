pub mod codes;
pub mod construct;
pub mod error;
pub mod format;
pub mod frequency;
pub mod graphview;
pub mod maximality;
pub mod search;
pub mod square;
pub mod validate;
pub mod verify;

pub use error::{Error, Result};
pub use square::{Cell, EntryTuple, KPartialSquare, Symbol};
