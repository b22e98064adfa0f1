//! Simulation and optimization toolkit for SVD-based coherent integrated
//! photonic neural networks (SC-IPNNs).
//!
//! An SC-IPNN realizes each linear layer as W = U·Σ·V†, where the two
//! unitaries run on rectangular MZI meshes and Σ is a diagonal gain stage.
//! The crate provides:
//!
//! - [`mesh`]: single-MZI transfer matrices, full-mesh evaluation, and the
//!   rectangular decomposition of arbitrary unitaries into MZI phases;
//! - [`svd`]: the SVD layer (two meshes plus a gain vector) and the
//!   phase-shifter census;
//! - [`network`]: stacked SVD layers with modReLU activations, phase-domain
//!   analytic gradients, and masked SGD training;
//! - [`pruning`]: magnitude pruning of phase angles with per-mesh thresholds,
//!   one-shot and iterative schedules, and the hybrid pipeline;
//! - [`uncertainty`]: Monte Carlo accuracy analysis under Gaussian phase
//!   noise, with power-gated vs. removed treatment of pruned shifters;
//! - [`data`]: MNIST IDX ingestion, FFT feature extraction, synthetic
//!   datasets, and the sparse-matrix-to-phase-sparsity experiment.
//!
//! All operations are deterministic given their seeds; parallel paths reduce
//! in index order so worker count never changes results.

pub mod data;
pub mod error;
pub mod linalg;
pub mod mesh;
pub mod network;
pub mod pruning;
pub mod svd;
pub mod uncertainty;

pub use error::{Error, Result};
pub use linalg::{CMatrix, CVector};
