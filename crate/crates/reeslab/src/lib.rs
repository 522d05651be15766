//! reeslab: exact commutative algebra for Rees algebras of modules.
//!
//! The toolkit builds symmetric and Rees algebras of finitely presented
//! graded modules, constructs generic Bourbaki ideals, computes the
//! invariants controlling Cohen-Macaulayness of the Rees algebra (depth of
//! powers, analytic spread, reduction numbers, G_s, sliding depth), and
//! certifies sufficiency theorems by checking their hypotheses alongside
//! an independent direct verification of the conclusions.

pub mod bourbaki;
pub mod checker;
pub mod config;
pub mod error;
pub mod field;
pub mod groebner;
pub mod input;
pub mod matrix;
pub mod modgb;
pub mod modlib;
pub mod rees;
pub mod report;
pub mod order;
pub mod parse;
pub mod poly;
pub mod ring;

pub use config::{Budget, Config};
pub use error::{Error, Result};
pub use field::{FieldSpec, Scalar};
pub use groebner::{GroebnerBasis, Ideal};
pub use order::MonomialOrder;
pub use poly::Polynomial;
pub use ring::PolyRing;
