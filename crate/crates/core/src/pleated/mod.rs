//! Pleated rectangles with finitely many leaves, the fans and prism
//! decompositions built on them, and the grouped edge terms of their
//! volume derivative.

mod decay;
mod prism;
mod rectangle;
mod scenario;
mod terms;
mod theta;

pub use prism::{fan_build, prism_decompose, PleatedFan, PrismDecomposition, Side, APEX_FLOOR, PIECE_TOL, PYRAMID_FACES};
pub use rectangle::{segment_point, Leaf, PleatedRectangle, CHART_TOL};
pub use terms::{
    fan_identity_check, grouped_term_sums, ComponentTerms, FanIdentityReport, GroupedTerms, GROUP_NAMES, RATE_TOL,
};
pub use scenario::{poly, random_pleat_scenario, LeafPath, PleatScenario};
pub use theta::{theta_direct, theta_sum, ThetaBounds};
pub use decay::{decay_diagnostics, fit_exponential, DecayConfig, DecayReport};
