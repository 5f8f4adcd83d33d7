//! Dynamics of `θ(x) = x + 1/x` on the projective line over `F_{p^n}`.
//!
//! The crate builds the functional graph of θ by brute force ([`dynamo`]),
//! predicts its shape from arithmetic in the Gaussian integers ([`predictor`],
//! built on [`gaussian`] and the curve `y² = x³ + x` in [`curve`]), and
//! compares the two ([`verify`]). [`dot`] renders the graph as Graphviz text.
//!
//! ```
//! use thetagraph_core::{predictor, Side};
//!
//! let a = predictor::predict_cycles(3, Side::A).unwrap();
//! assert_eq!(a.count_of(9), 2);
//! ```

pub mod curve;
pub mod dot;
pub mod dynamo;
mod error;
pub mod ffield;
pub mod gaussian;
pub mod intfactor;
pub mod predictor;
pub mod verify;

pub use curve::{Curve, EcPoint};
pub use dynamo::{census, ComponentSummary, FunctionalGraph, GraphSummary, SuccessorTable, TreeProfile};
pub use error::{Error, Result};
pub use ffield::{FieldElement, FieldSpec, P1Element, PartitionClass};
pub use gaussian::{GaussFactorization, GaussInt, PrimeClass, RhoDigits};
pub use predictor::{
    ComponentShape, CycleSpectrum, EpsilonRule, PartitionSizes, PredictedCensus, Side, TreeShape,
};
