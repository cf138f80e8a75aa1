pub mod constructions;
pub mod element;
pub mod document;
pub mod error;
pub mod linalg;
pub mod operators;
pub mod rational;
pub mod verify;
