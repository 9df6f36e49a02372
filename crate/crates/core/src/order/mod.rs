//! Positive-cone search on finite balls of a group.
//!
//! A bi-order (resp. left order) restricts to a sign assignment on any
//! finite ball that is closed under those products and conjugations that
//! stay inside the ball. When no such assignment exists the group admits no
//! order of that kind; when one exists, nothing follows for the group.

mod ball;
mod cone;

pub use ball::{enumerate_ball, enumerate_ball_with_budget, Ball, DEFAULT_BALL_BUDGET};
pub use cone::{
    check_cone, replay_refutation, search_cone, Axiom, ConeVerdict, Mode, Step, StepJson, VerdictJson,
    NO_OBSTRUCTION_NOTE, REFUTED_NOTE,
};
