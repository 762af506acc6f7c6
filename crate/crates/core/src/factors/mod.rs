//! The factor tower `X → Y → Z` of a constant-length substitution subshift: block parsing,
//! odometer addresses, fiber censuses over addresses, and word frequencies.

mod address;
mod census;
pub(crate) mod desub;
mod frequencies;

pub use address::{address, Odometer, OdometerAddress};
pub use census::{fiber_census, sample_addresses, FiberCensus, SAMPLER};
pub use desub::{desubstitute, valid_phases, Desubstitution, MAX_RECOGNIZABILITY};
pub use frequencies::{pushforward_frequencies, word_frequencies, FrequencyTable};
