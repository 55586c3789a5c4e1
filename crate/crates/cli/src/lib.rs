//! Text and JSON front end for `weyl-core`, plus the seeded self-test suites
//! run by the `weyl` binary.

pub mod expr;
pub mod json;
pub mod selftest;
