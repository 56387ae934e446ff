pub mod chartable;
pub mod corpus;
pub mod gutkin;
pub mod info;
pub mod local;
pub mod orbits;
