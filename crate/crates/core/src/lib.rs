//! Exact arithmetic on hyperelliptic curves `y^2 = h(x)` over Q: function fields,
//! divisors and tame symbols, Mumford/Cantor arithmetic on the Jacobian, and
//! higher Chow precycles built from translates of the curve inside `Pic^d`.

pub mod configurations;
pub mod curve;
pub mod cycles;
pub mod divisor;
pub mod error;
pub mod function;
pub mod jacobian;
pub mod local;
pub mod mobius;
pub mod poly;
pub mod rational;
pub mod residue;

pub use configurations::{
    basic_cycle, family_section, four_configuration, genus2_decomposition_check, hyperelliptic_configuration,
    specialize, specialize_and_compare, translate_cycle, ConfigurationReport, FamilyDescriptor, FamilyKind,
    Genus2Report, Specialization,
};
pub use curve::{ClosedPoint, CurvePoint, HyperellipticCurve, InfinitySheet, Place};
pub use cycles::{AffineForm, EmbeddedCurve, Embedding, Intersection, PreCycle, ZeroCycleOnJ};
pub use divisor::Divisor;
pub use error::{AlgebraError, CycleError, JacobianError};
pub use function::FunctionFieldElement;
pub use jacobian::{Jacobian, JacobianClass, PicPoint, Principality};
pub use local::{PlaceValue, Value};
pub use mobius::{MobiusMap, MobiusTransport};
pub use poly::Polynomial;
pub use rational::Rational;
pub use residue::Residue;
