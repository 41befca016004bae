//! Exact Klein sails and palindromic symmetries of algebraic continued fractions
//! in dimensions 2 to 4.

pub mod exact;
pub mod numfield;
pub mod cf;
pub mod palindromy;
pub mod sail;
pub mod io;
