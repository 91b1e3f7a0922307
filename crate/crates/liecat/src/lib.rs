//! Exact computation in finitely generated free Lie algebras over Q or a
//! quadratic extension Q(sqrt d): a Lyndon-word Hall basis with normalized
//! brackets, polynomial arithmetic with an independent associative-envelope
//! oracle, the endomorphism semigroup with its distinguished families and
//! semilinear maps, a bounded duality module for morphisms into a fixed
//! algebra, and seeded verification suites binding the algebraic laws to
//! executable checks.
//!
//! # Example
//!
//! ```
//! use liecat::{BasisTable, Endo, Field, LiePoly, Scalar};
//!
//! let table = BasisTable::generate(2, 4, Field::Rational, None)?;
//! let p = liecat::text::parse_poly("[x,[x,y]] + 2*y", &table)?;
//! assert_eq!(p.degree(), 3);
//!
//! // conjugating by the scalar map x -> 3x rescales the degree-i
//! // component of each generator image by 3^(i-1)
//! let x = LiePoly::generator(table.clone(), 0)?;
//! let y = LiePoly::generator(table.clone(), 1)?;
//! let phi = Endo::new(table.clone(), vec![x.bracket(&y)?, y.clone()])?;
//! let conjugated = phi.conjugate_by_scalar(&Scalar::from_integer(3, Field::Rational))?;
//! assert_eq!(conjugated.image(0).canonical_text(), "3*[x,y]");
//! # Ok::<(), liecat::Error>(())
//! ```

pub mod category;
pub mod endo;
pub mod envelope;
pub mod error;
pub mod hall;
pub mod matrix;
pub mod poly;
pub mod scalar;
pub mod text;
pub mod verify;

pub use endo::{AutVerdict, Endo, SemiMorphism};
pub use error::{Error, Result};
pub use hall::{witt_dimension, BasisTable, HallWord};
pub use matrix::Matrix;
pub use poly::{LiePoly, Measures};
pub use scalar::{Field, FieldAut, Scalar};
