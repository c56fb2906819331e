pub mod battery;
pub mod cache;
pub mod cli;
pub mod combinatorics;
pub mod conventions;
pub mod cut_join;
pub mod enumeration;
pub mod error;
pub mod forest;
pub mod hurwitz;
pub mod permutation;
pub mod poly;
pub mod reconstruction;
