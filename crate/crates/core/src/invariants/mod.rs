//! Gornik classes, Morse actions, s_n and the report record.

pub mod gornik;
pub mod morse;
pub mod rasmussen;
pub mod report;

pub use gornik::{constant_state, gornik_class, gornik_classes, gornik_dimension_check, link_states, state_bits_for, GornikCheck, GornikClass, LinkState};
pub use morse::{circle_laws, compatible_states, morse_action, morse_pattern, predicted_states, movie_state_support, CircleLaws, MorseAction, MovieSupport};
pub use rasmussen::{dominance, s_n, s_n_of, slice_bound_report, SliceBound};
pub use report::{Check, Report};
