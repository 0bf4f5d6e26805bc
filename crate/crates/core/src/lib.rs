pub mod algebra;
pub mod germ;
pub mod ideal;
pub mod double_point;
pub mod presentation;
pub mod equisingularity;
pub mod sampling;

use thiserror::Error;

/// Any error raised by the library, with a module-qualified [`Error::code`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Algebra(#[from] algebra::AlgebraError),
    #[error(transparent)]
    Ideal(#[from] ideal::IdealError),
    #[error(transparent)]
    Germ(#[from] germ::GermError),
    #[error(transparent)]
    Catalog(#[from] germ::CatalogError),
    #[error(transparent)]
    DoublePoint(#[from] double_point::DoublePointError),
    #[error(transparent)]
    Presentation(#[from] presentation::PresentationError),
    #[error(transparent)]
    Equisingularity(#[from] equisingularity::EquisingularityError),
}

impl Error {
    /// `module::Code`, e.g. `double_point::NotFinite`.
    pub fn code(&self) -> String {
        let (module, code) = match self {
            Error::Algebra(e) => ("algebra", e.code()),
            Error::Ideal(e) => ("ideal", e.code()),
            Error::Germ(e) => ("germ", e.code()),
            Error::Catalog(e) => ("catalog", e.code()),
            Error::DoublePoint(e) => ("double_point", e.code()),
            Error::Presentation(e) => ("presentation", e.code()),
            Error::Equisingularity(e) => ("equisingularity", e.code()),
        };
        format!("{module}::{code}")
    }
}
