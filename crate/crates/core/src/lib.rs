pub mod char_sums;
pub mod code;
pub mod error;
pub mod field;
pub mod linalg;
pub mod planar;
mod poly;
pub mod prime;
pub mod sss;
pub mod theory;

pub use error::{Error, ErrorKind, Result};
pub use field::{FieldCtx, FieldElement, FieldSpec, Limits};
pub use prime::PrimeElement;
