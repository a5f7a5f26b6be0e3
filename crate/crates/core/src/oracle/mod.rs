pub mod enumerate;
pub mod generation;
pub mod suites;
