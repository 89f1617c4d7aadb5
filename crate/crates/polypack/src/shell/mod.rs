//! Command line, JSON documents and SVG output.

use thiserror::Error;

use crate::apollonian::ApollonianError;
use crate::descartes::DescartesError;
use crate::lorentz::LorentzError;
use crate::numeric::NumericError;
use crate::packing::PackingError;
use crate::polytope::PolytopeError;

/// Runs `$body` with `$S` bound to the scalar type of a [`Field`](crate::numeric::Field).
macro_rules! with_field {
    ($field:expr, $S:ident => $body:expr) => {
        match $field {
            $crate::numeric::Field::Float => {
                type $S = f64;
                $body
            }
            $crate::numeric::Field::Quadratic(2) => {
                type $S = $crate::numeric::Q2;
                $body
            }
            $crate::numeric::Field::Quadratic(3) => {
                type $S = $crate::numeric::Q3;
                $body
            }
            $crate::numeric::Field::Quadratic(5) => {
                type $S = $crate::numeric::Q5;
                $body
            }
            $crate::numeric::Field::Quadratic(6) => {
                type $S = $crate::numeric::Q6;
                $body
            }
            $crate::numeric::Field::Quadratic(m) => {
                Err($crate::shell::ShellError::Input(format!("no exact field for √{m}")))
            }
        }
    };
}

mod cli;
pub mod document;
pub mod render;

pub use cli::run;
pub use document::{EntryDoc, HalfSpaceDoc, Num, PackingDocument, SeedDoc};
pub use render::{render_svg, RenderSpec};

#[derive(Debug, Error)]
pub enum ShellError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Numeric(#[from] NumericError),
    #[error(transparent)]
    Lorentz(#[from] LorentzError),
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
    #[error(transparent)]
    Packing(#[from] PackingError),
    #[error(transparent)]
    Apollonian(#[from] ApollonianError),
    #[error(transparent)]
    Descartes(#[from] DescartesError),
}
