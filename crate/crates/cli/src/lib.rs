//! Std-side companion to `smallcover`: text fixture formats, threaded
//! brute-force counting, the `verify` oracle suite and the command-line front
//! end.

pub mod cli;
pub mod formats;
pub mod parallel;
pub mod verify;
