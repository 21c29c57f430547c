//! Explicit characterizations, computed without the generic congruence
//! engine so the two can be tested against each other.

mod band;
mod zero_simple;

pub use band::{classify_act_rect_band, two_zero_bound_check, BoundReport, CaseTag, RectBandClassification, Verdict};
pub use zero_simple::{
    monocyclic_closed_form, predict_completely_0_simple, predict_completely_simple, MonocyclicDescriptor,
    PredictionSource, SimplePrediction, ZeroSimplePrediction,
};
