//! pcnkit — protein contact network construction and analysis.
//!
//! - **Ingest** — fetch PDB entries with a local cache and extract Cα traces
//!   ([`pdb`])
//! - **Networks** — contact networks at a spatial threshold, SE/LE link
//!   partition, reference lattices, text persistence ([`network`])
//! - **Statics** — degree/clustering/assortativity/path/betweenness/hierarchy
//!   statistics with canonical reference values ([`metrics`])
//! - **Null models** — degree-preserving randomization of all/SE/LE links
//!   ([`rewire`])
//! - **Dynamics** — ordered long-range link addition with per-step statistics
//!   and transition detection ([`dynamics`])
//! - **Model** — lattice backbone plus banded random long-range links
//!   ([`genmodel`])
//! - **Distributions** — link sequence-distance spectra and density scaling
//!   ([`distributions`])
//! - **Batch** — dataset manifests, per-protein pipeline, summary tables
//!   ([`report`])

pub mod distributions;
pub mod dynamics;
pub mod error;
pub mod genmodel;
pub mod metrics;
pub mod network;
pub mod pdb;
pub mod report;
pub mod rewire;
pub mod util;

pub use error::{Error, Result};
pub use network::{
    build_contact_network, load_network, make_lattice, partition_links, save_network, subnetwork,
    ContactNetwork, Edge, LatticeSpec, LinkClass, LinkPartition, Topology, DEFAULT_LE_TH,
    DEFAULT_TH,
};
pub use pdb::{fetch_pdb, parse_calpha_trace, validate_trace, CalphaTrace, ResidueRecord};
