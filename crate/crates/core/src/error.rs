use thiserror::Error;

use crate::category::{Morphism, Object};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("object {0} does not belong to category {1}")]
    ForeignObject(Object, String),

    #[error("morphism {0} is not a valid arrow of category {1}")]
    ForeignMorphism(Morphism, String),

    #[error("cannot compose: codomain {codomain} of the first arrow differs from domain {domain} of the second")]
    DomainMismatch { codomain: Object, domain: Object },

    #[error("morphism {0} is not in the degeneracy class A-")]
    NotMinus(Morphism),

    #[error("degree {degree} exceeds the degree bound {bound}")]
    BoundExceeded { degree: u32, bound: u32 },

    #[error("output needs degree bound {required} but only {available} was given")]
    InsufficientBound { required: u32, available: u32 },

    #[error("category instances differ: {0} vs {1}")]
    InstanceMismatch(String, String),

    #[error("unsupported base category: {0}")]
    UnsupportedBase(String),

    #[error("element does not belong to the complex: {0}")]
    NotAnElement(String),

    #[error("map is not natural: {0}")]
    NotNatural(String),

    #[error("square does not commute: {0}")]
    NotCommuting(String),

    #[error("invalid complex: {0}")]
    InvalidComplex(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
