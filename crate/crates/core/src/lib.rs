//! Hochschild cohomology of finite-rank algebras over ℤ, ℚ and 𝔽_p.

pub mod algebra;
pub mod bar;
pub mod bimodule;
pub mod catalog;
pub mod error;
pub mod extensions;
pub mod hochschild;
pub mod koszul;
pub mod linalg;
pub mod matrix;
pub mod projectivity;
pub mod ring;
pub mod tensor;

pub use algebra::FiniteAlgebra;
pub use bimodule::{hom_bimodule, Bimodule, LeftModule};
pub use error::{Error, Result};
pub use linalg::KModuleInvariants;
pub use matrix::Matrix;
pub use ring::{Integers, PrimeField, Rationals, Ring, ScalarRing};

pub type ZMatrix = Matrix<Integers>;
pub type QMatrix = Matrix<Rationals>;
pub type FpMatrix = Matrix<PrimeField>;
pub type ZAlgebra = FiniteAlgebra<Integers>;
pub type QAlgebra = FiniteAlgebra<Rationals>;
pub type FpAlgebra = FiniteAlgebra<PrimeField>;
