pub mod catalog;
pub mod classifier;
pub mod cli;
pub mod lie_algebra;
pub mod rational;
pub mod tensor_engine;
pub mod verification;
