//! Arithmetic and analysis over the four commutative four-dimensional
//! hypercomplex algebras: circular, hyperbolic, planar and polar.
//!
//! ```
//! use quadfield::{Kind, Quad};
//!
//! let a = Quad::alpha(Kind::Circular);
//! assert_eq!(a * a, Quad::real(Kind::Circular, -1.0));
//! ```

pub mod algebra;
pub mod calculus;
pub mod canonical;
pub mod elementary;
pub mod error;
pub mod matrix_rep;
pub mod parallel;
pub mod polynomial;

pub use algebra::{Kind, Quad, DEFAULT_TOL};
pub use error::{QuadError, Result};
pub use parallel::Exec;
