pub mod algebra;
pub mod classify;
pub mod cli;
pub mod modmat;
pub mod multiplicity;
pub mod staircase;
