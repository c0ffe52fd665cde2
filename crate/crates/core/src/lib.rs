//! Exact Calabi criteria for local Kähler immersions into complex space forms.

pub mod bell;
pub mod cert;
pub mod diastasis;
pub mod domains;
pub mod einstein;
pub mod error;
pub mod immersion;
pub mod models;
pub mod multi_index;
pub mod resolvability;
pub mod scalar;
pub mod series;

pub use error::{Error, Result};
pub use multi_index::{GradedOrder, MultiIndex};
pub use scalar::{CScalar, Rational};
pub use series::{BiSeries, HolSeries};
