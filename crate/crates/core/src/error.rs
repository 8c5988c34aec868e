use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    // ---- input ----
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("schema error in `{field}`: {message}")]
    Schema { field: String, message: String },
    #[error("duplicate id `{0}`")]
    DuplicateId(String),
    #[error("unknown id `{0}`")]
    UnknownId(String),
    #[error("i/o error: {0}")]
    Io(String),
    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),
    #[error("unknown property `{0}`")]
    UnknownProperty(String),

    // ---- validation ----
    #[error("order is not reflexive at `{0}`")]
    NotReflexive(String),
    #[error("order is not antisymmetric: `{0}` and `{1}`")]
    NotAntisymmetric(String, String),
    #[error("order is not transitive: `{0}` <= `{1}` <= `{2}`")]
    NotTransitive(String, String, String),
    #[error("declared zero `{0}` is not below `{1}`")]
    NoMinimum(String, String),
    #[error("carrier of size {size} exceeds the cap of {cap}")]
    CarrierTooLarge { size: usize, cap: usize },
    #[error("not associative: ({0} {1}) {2}")]
    NotAssociative(String, String, String),
    #[error("not an inverse semigroup: {0}")]
    NotInverse(String),
    #[error("no zero: {0}")]
    NoZero(String),
    #[error("not a groupoid: {0}")]
    NotAGroupoid(String),
    #[error("not a basis: {0}")]
    NotABasis(String),
    #[error("not an étale basis: {0}")]
    NotEtaleBasis(String),
    #[error("domain of the partial map is not open")]
    DomainNotOpen,
    #[error("partial map is not continuous: preimage of `{0}` is not open")]
    NotContinuous(String),

    // ---- preconditions ----
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("not a filter: {0}")]
    NotAFilter(String),
    #[error("element `{0}` is not in the filter")]
    ElementNotInFilter(String),
    #[error("not a proper filter: {0}")]
    NotAProperFilter(String),
    #[error("not a ∪-basis: {0}")]
    NotAUnionBasis(String),
    #[error("poset is not basic")]
    NotBasic,
    #[error("semigroup is not basic")]
    NotBasicSemigroup,
    #[error("relation is not a basic morphism: {0}")]
    NotBasicMorphism(String),

    // ---- verification ----
    #[error("assertion `{check}` failed: {detail}")]
    Invariant { check: String, detail: String },
    #[error("internal inconsistency in `{check}`: {detail}")]
    InternalConsistency { check: String, detail: String },
    #[error("lemma violated: {0}")]
    LemmaViolated(String),
}

impl Error {
    pub fn invariant(check: &str, detail: impl Into<String>) -> Error {
        Error::Invariant {
            check: check.to_string(),
            detail: detail.into(),
        }
    }

    pub fn schema(field: &str, message: impl Into<String>) -> Error {
        Error::Schema {
            field: field.to_string(),
            message: message.into(),
        }
    }

    /// True for failures of a verified statement, as opposed to bad input.
    pub fn is_assertion_failure(&self) -> bool {
        matches!(
            self,
            Error::Invariant { .. } | Error::InternalConsistency { .. } | Error::LemmaViolated(_)
        )
    }

    /// Process exit code used by the CLI.
    pub fn exit_code(&self) -> i32 {
        if self.is_assertion_failure() {
            1
        } else {
            2
        }
    }
}

/// Returns `Err(Invariant)` unless `cond` holds.
pub(crate) fn ensure(cond: bool, check: &str, detail: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::invariant(check, detail()))
    }
}
