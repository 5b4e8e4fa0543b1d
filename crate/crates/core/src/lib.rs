pub mod bitset;
pub mod census;
pub mod cli;
pub mod complex;
pub mod cycles;
pub mod dense;
pub mod error;
pub mod gluing;
pub mod random_model;
pub mod rng;
