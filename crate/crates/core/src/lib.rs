pub mod character;
pub mod cli;
pub mod error;
pub mod kostant;
pub mod reps;
pub mod root_datum;
pub mod scalar;
pub mod translation;
pub mod trianguline;
pub mod weight;

pub use character::{PadicCharacter, TCharacter};
pub use error::{Error, Result};
pub use root_datum::{DatumSpec, RootDatum, WeylElement, WeylSpec};
pub use scalar::{Rational, Scalar};
pub use translation::{FormalModule, PrincipalSeriesDual, VermaObject};
pub use trianguline::{Classification, DualSequence, LInvariant, Stratum, TriangulinePoint};
pub use reps::WeightMultiset;
pub use weight::{ConditionReport, Weight};
