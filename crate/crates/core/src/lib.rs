pub mod cli;
pub mod dsl;
pub mod linalg;
pub mod measure;
pub mod network;
pub mod numfmt;
pub mod paths;
