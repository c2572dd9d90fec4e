//! Explicit generators for the defining ideals of Moh's space curves
//! `x = t^{nm} + t^{nm+λ}, y = t^{(n+1)m}, z = t^{(n+2)m}` with `n` odd and
//! `m = (n+1)/2`, together with exact machinery to check them.

pub mod document;
pub mod exact;
pub mod forge;
pub mod groebner;
pub mod params;
pub mod poly;
pub mod rho;
pub mod verify;

pub use exact::{Rational, RationalMatrix};
pub use forge::{build_generators, CoefficientTables, ForgeError, GeneratorSet, Table};
pub use groebner::{BuchbergerOptions, GroebnerError, OrderedBasis};
pub use params::{validate_and_derive, MohParams, ParamError};
pub use poly::{Monomial, Polynomial, SigmaGrading};
pub use rho::UniPolynomial;
pub use verify::{run_suite, Suite, VerificationReport, VerifyError};
