pub mod dist;
pub mod exec;
pub mod expr;
pub mod lab;
pub mod lincomb;
pub mod lp;
pub mod profile;
pub mod prover;
pub mod rational;
pub mod shannon;
pub mod varset;
