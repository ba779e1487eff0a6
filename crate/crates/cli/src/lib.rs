//! Reporting, parallel sweeps and bundled verification suites for the
//! exact-arithmetic core. The `maxvar` binary is a thin dispatcher over
//! these modules.

pub mod emit;
pub mod flags;
pub mod runner;
pub mod suite;
