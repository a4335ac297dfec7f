//! Iwasawa lambda invariants at 2, cyclotomic Z_2-tower splitting data, genus
//! fields and class-number parity for multi-quadratic number fields.

pub mod arith;
pub mod enumerate;
pub mod error;
pub mod field;
pub mod lambda;
pub mod oracle;
pub mod parity;
pub mod report;
pub mod tower;

pub use error::{Error, ErrorKind, Result};
pub use field::{MultiQuadField, Presentation, SquareClass};
pub use lambda::{LambdaPlus, LambdaResult};
pub use parity::{ParityCase, ParityVerdict, Verdict};
