//! Construction and analysis of the Petersen weave family `G_n`: `n` copies
//! of the Petersen graph wired along an `n`-cycle by a fixed acyclic
//! orientation of its edges.

pub mod classify;
pub mod codec;
pub mod graph;
pub mod spectral;
pub mod survey;
pub mod symmetry;
pub mod weave;
