//! Normal-ordered differential operators over the super-polynomial algebra, the
//! named invariant operators, the mixing operator `Im` and the harmonic series.

pub mod im;
pub mod named;
pub mod operator;
pub mod series;

pub use im::{im_operator, ImParams};
pub use named::{eta, laplacian, named_operator, OperatorName};
pub use operator::{apply, compose, parse_operator, super_commutator, DiffOperator};
pub use series::{t_series, xu_solve, xu_vector, Integration, PolyMap, SeriesApplicator, SeriesKind};
