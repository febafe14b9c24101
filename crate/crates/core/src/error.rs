use thiserror::Error;

use crate::labeling::{Condition, Label};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("a labeling needs at least one polygon")]
    NoPolygons,

    #[error("polygon {0} is empty")]
    EmptyPolygon(usize),

    #[error("label {label} at polygon {polygon}, position {position} is outside 1..={max}")]
    LabelOutOfRange {
        polygon: usize,
        position: usize,
        label: Label,
        max: Label,
    },

    #[error("labeling is not proper: condition {0} fails")]
    NotProper(Condition),

    #[error("site does not match the labeling: {0}")]
    StaleSite(String),

    #[error("the glued surface is already orientable")]
    AlreadyOrientable,

    #[error("the orientation cover has no proper labeling: {0}")]
    CoverNotRepresentable(String),

    #[error("labeling is not regular (polygon sizes differ)")]
    NotRegular,

    #[error("vertex classes of the glued surface differ from the label classes")]
    ClassMismatch,

    #[error("glued surface is disconnected")]
    Disconnected,

    #[error("k = {0} is outside the hyperbolic range k >= 7")]
    KTooSmall(u32),

    #[error("construction incomplete for k = {k}: {reason}")]
    ConstructionIncomplete { k: u32, reason: String },

    #[error("search incomplete: {0}")]
    SearchIncomplete(String),

    #[error("inconsistent surface data: {0}")]
    Inconsistent(String),

    #[error("Euler characteristic {0} is not negative; surface is not hyperbolic")]
    NotHyperbolic(i64),

    #[error("angle {0} is outside (0, pi/3)")]
    AngleOutOfRange(f64),

    #[error("graph: {0}")]
    Graph(String),

    #[error("walk: {0}")]
    Walk(String),

    #[error("{0}")]
    Precondition(String),

    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}
