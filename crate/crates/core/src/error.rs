use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Everything that can go wrong while validating or computing with finite
/// ordered structures. Witnesses are reported with element names.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not a partial order: {a} and {b} violate antisymmetry or reflexivity")]
    NotAPartialOrder { a: String, b: String },
    #[error("missing join: {a} and {b} have no least upper bound")]
    MissingJoin { a: String, b: String },
    #[error("no bottom element")]
    NoBottom,
    #[error("join table inconsistent at ({a}, {b}): table says {given}, order says {expected}")]
    InconsistentJoin {
        a: String,
        b: String,
        given: String,
        expected: String,
    },
    #[error("duplicate element name {0:?}")]
    DuplicateName(String),
    #[error("unknown element {name:?} in {context}")]
    UnknownElement { name: String, context: String },
    #[error("table incomplete: {0}")]
    IncompleteTable(String),

    #[error("multiplication not associative at ({a}, {b}, {c})")]
    NotAssociative { a: String, b: String, c: String },
    #[error("{unit} is not a two-sided unit (fails at {witness})")]
    NotUnital { unit: String, witness: String },
    #[error("multiplication does not distribute over joins at ({a}, {b}, {c})")]
    NotJoinDistributive { a: String, b: String, c: String },
    #[error("invalid monoid: {0}")]
    MonoidInvalid(String),

    #[error("action not associative at ({a}, {b}, {u})")]
    NotAssociativeAction { a: String, b: String, u: String },
    #[error("unit does not act trivially on {u}")]
    NotUnitalAction { u: String },
    #[error("action does not distribute over joins at ({a}, {u}, {v})")]
    NotJoinDistributiveAction { a: String, u: String, v: String },
    #[error("left and right actions are not compatible at ({a}, {u}, {b})")]
    IncompatibleActions { a: String, u: String, b: String },

    #[error("{what} would have {size} elements, above the cap of {cap}")]
    SizeCapExceeded {
        what: String,
        size: usize,
        cap: usize,
    },
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("missing structure: {0}")]
    MissingAction(String),
    #[error("map is not a homomorphism: {0}")]
    NotAHom(String),
    #[error("module does not come from a free module construction")]
    NotFree,
    #[error("module is not a progenerator: {0}")]
    NotProgenerator(String),
    #[error("law violated: {0}")]
    LawViolation(String),
    #[error("certificate rejected: {law} ({witness})")]
    CertificateRejected { law: String, witness: String },

    #[error("unknown catalog entry {0:?}")]
    UnknownName(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

impl Error {
    /// True for errors caused by an input structure failing its axioms.
    pub fn is_validation(&self) -> bool {
        !matches!(
            self,
            Error::SizeCapExceeded { .. } | Error::UnknownName(_) | Error::Parse { .. }
        )
    }

    pub(crate) fn law(msg: impl Into<String>) -> Self {
        Error::LawViolation(msg.into())
    }
}

/// Global limits on materialized structures.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of elements of any lattice that gets built.
    pub max_elements: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_elements: 16 }
    }
}

impl Limits {
    pub fn with_cap(max_elements: usize) -> Self {
        Limits { max_elements }
    }

    pub fn check(&self, what: &str, size: usize) -> Result<()> {
        if size > self.max_elements {
            Err(Error::SizeCapExceeded {
                what: what.to_string(),
                size,
                cap: self.max_elements,
            })
        } else {
            Ok(())
        }
    }

    /// Derived structures (hom-sets, tensor carriers and the pair sets they
    /// are built from) are bounded by the square of the cap.
    pub fn check_derived(&self, what: &str, size: usize) -> Result<()> {
        let cap = self.max_elements.saturating_mul(self.max_elements);
        if size > cap {
            Err(Error::SizeCapExceeded {
                what: what.to_string(),
                size,
                cap,
            })
        } else {
            Ok(())
        }
    }
}
