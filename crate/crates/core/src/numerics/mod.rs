//! Precision-aware numerical substrate: summation with tail budgets, series
//! acceleration, quadrature, Euler–Maclaurin ladders and root finding.

pub mod alternating;
pub mod bernoulli;
pub mod euler_maclaurin;
pub mod expkernel;
pub mod grid;
pub mod logpoly;
pub mod quadrature;
pub mod richardson;
pub mod roots;
pub mod sawtooth;
pub mod series;

pub use alternating::{accelerated_alternating_sum, accelerated_alternating_sums};
pub use euler_maclaurin::{
    em_correction_terms, euler_maclaurin_tail, euler_maclaurin_tail_auto, NoDerivatives,
    ShiftedPower, SmoothTail,
};
pub use grid::GridSpec;
pub use logpoly::LogPoly;
pub use quadrature::{adaptive_quadrature, adaptive_quadrature_opts, QuadOptions};
pub use richardson::richardson_limit;
pub use roots::brent_root;
pub use series::sum_with_tail;
