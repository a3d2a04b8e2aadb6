//! Verification workbench for completely regular binary codes.

pub mod bits;
pub mod certificate;
pub mod classify;
pub mod code;
pub mod designs;
pub mod error;
pub mod hadamard;
pub mod rational;
pub mod regularity;
pub mod replay;
pub mod spectral;
pub mod symmetry;
pub mod vertex;

pub use certificate::{Certificate, Verdict};
pub use code::{Code, DistanceDistribution, DistancePartition};
pub use error::{Error, Result};
pub use vertex::{dist, sphere, Vertex, MAX_LEN};
