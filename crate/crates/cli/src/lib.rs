//! Library side of the `brauer` command: the 2-form grammar, sampling
//! campaigns and the built-in reproductions.

pub mod campaign;
pub mod form;
pub mod verify;
