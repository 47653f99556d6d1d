use thiserror::Error;

use crate::poset::Elem;
use crate::symfun::Composition;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("relations contain a cycle through element {0}")]
    Cycle(Elem),
    #[error("element {0} is outside 1..={1}")]
    BadElement(usize, usize),
    #[error("poset carries no natural unit interval order")]
    NotNuio,
    #[error("total order is not a natural unit interval order: {0}")]
    BadOrder(String),
    #[error("poset is not (3+1)-free")]
    NotThreeOneFree,
    #[error("not symmetric: coefficients of {0:?} and {1:?} differ")]
    NotSymmetric(Composition, Composition),
    #[error("element is not homogeneous in word length")]
    MixedDegree,
    #[error("vertex set is not closed: edge {0:?} -- {1:?} leaves it")]
    NotClosed(Vec<Elem>, Vec<Elem>),
    #[error("word {0:?} does not have the content of this space")]
    ContentMismatch(Vec<Elem>),
    #[error("coefficient of {0:?} depends on t")]
    TCoefficient(Vec<Elem>),
    #[error("shape error: {0}")]
    Shape(String),
    #[error("parameter error: {0}")]
    Param(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Short stable tag for machine-readable reports.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Cycle(_) => "cycle",
            Error::BadElement(..) => "bad_element",
            Error::NotNuio => "not_nuio",
            Error::BadOrder(_) => "bad_order",
            Error::NotThreeOneFree => "not_31_free",
            Error::NotSymmetric(..) => "not_symmetric",
            Error::MixedDegree => "mixed_degree",
            Error::NotClosed(..) => "not_closed",
            Error::ContentMismatch(_) => "content_mismatch",
            Error::TCoefficient(_) => "t_coefficient",
            Error::Shape(_) => "shape",
            Error::Param(_) => "param",
            Error::Parse(_) => "parse",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
