//! Weighted train tracks as finite stand-ins for measured laminations.

mod cocycle;
mod track;

pub use cocycle::{
    cocycle_eval, cocycle_length, scc_cocycle, validate_track, MeasuredLamination, Ring, Step, TrackFile, TrackReport,
    TransverseCocycle, SWITCH_TOL,
};
pub use track::{
    radius_histogram, translation_length, Branch, BranchEnd, End, RectangleComponent, Switch, TrainTrack,
};
