use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("relation is not reflexive at {0}")]
    NotReflexive(String),
    #[error("relation is not antisymmetric: {0} <= {1} and {1} <= {0}")]
    NotAntisymmetric(String, String),
    #[error("relation is not transitive: {0} <= {1} <= {2} but not {0} <= {2}")]
    NotTransitive(String, String, String),
    #[error("duplicate element label {0:?}")]
    DuplicateLabel(String),
    #[error("element index {index} out of range for a carrier of size {size}")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("not a lattice: {0} and {1} have no unique {2}")]
    NotALattice(String, String, &'static str),
    #[error("not distributive: {0} ∧ ({1} ∨ {2}) differs from ({0} ∧ {1}) ∨ ({0} ∧ {2})")]
    NotDistributive(String, String, String),
    #[error("size limit exceeded for {what}: {size} > cap {cap}")]
    SizeLimitExceeded { what: &'static str, size: usize, cap: usize },
    #[error("not a frame homomorphism: fails to preserve {op} at ({a}, {b})")]
    NotAHom { op: &'static str, a: String, b: String },
    #[error("frame mismatch: {0}")]
    FrameMismatch(&'static str),
    #[error("map is not constant on congruence blocks: {0} and {1} are related but separated")]
    NotConstantOnBlocks(String, String),
    #[error("partition is not a congruence: {0} ~ {1} but compatibility with {2} fails")]
    NotACongruence(String, String, String),
    #[error("square does not commute at {0}")]
    SquareDoesNotCommute(String),
    #[error("component {component} is not a subframe: {witness}")]
    NotSubframe { component: usize, witness: String },
    #[error("components do not generate the ambient frame: {0} is missing")]
    NotSubbasis(String),
    #[error("structure map of the biframe is not onto")]
    QLNotOnto,
    #[error("component {component} is not preserved: {witness} is sent outside it")]
    ComponentNotPreserved { component: usize, witness: String },
    #[error("internal route mismatch: {0}")]
    RouteMismatch(String),
    #[error("map is not skeletal: f(a**) ≰ f(a)** at a = {0}")]
    NotSkeletal(String),
}
