pub mod arith;
pub mod gfpoly;
pub mod index;
pub mod newton;
pub mod verify;
pub mod cli;
