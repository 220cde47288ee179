//! Exact truncated power series, the grammars of classes H and D, their
//! closed forms and polynomial system, and the statistics and asymptotics
//! derived from them.

pub mod asymptotic;
pub mod closed;
mod fps;
pub mod grammar;
mod jet;
pub mod modular;
mod poly;
pub mod polysystem;
pub mod precise;
mod ring;
pub mod stats;
pub mod system;

pub use asymptotic::{asymptotic_estimate, asymptotic_estimate_with, AsymptoticModel, Surd};
pub use closed::{
    closed_form_d, closed_form_d_left, closed_form_d_left_with, closed_form_d_top,
    closed_form_d_top_with, closed_form_d_with, closed_form_h, closed_form_h_with, SqrtMethod,
};
pub use fps::{poly_series, Series};
pub use grammar::{class_counts, grammar_d, grammar_d_with, grammar_h, grammar_h_with, Trivariate};
pub use jet::Jet;
pub use poly::Poly;
pub use polysystem::{polysystem_d, polysystem_d_with, PolySystemSolution};
pub use ring::Ring;
pub use stats::{moments, normal_cdf, Distribution, MarkerDerivatives, Moments, Statistic};
pub use system::{solve_tree, System};
