//! Holographic reduced representations and their capacity limits.
//!
//! * [`algebra`]: random and unitary vectors, binding by circular
//!   convolution, superposition, convolutive powers, involution, similarity.
//! * [`spatial`]: `X^x ⊗ Y^y` point encoding, labeled scenes, class queries,
//!   similarity heatmaps and peak decoding.
//! * [`lab`]: the superposition and spatial capacity experiments, class-size
//!   pooling and box-plot summaries.
//! * [`io`]: CSV formats for scenes, heatmaps, records and summaries.

pub mod algebra;
pub mod error;
pub mod io;
pub mod lab;
pub mod partition;
pub mod reference;
pub mod rng;
pub mod spatial;
pub mod stats;

pub use algebra::{superpose, thresholds, HrrVector, SimilarityThresholds, Spectrum};
pub use error::{HdcError, Result};
pub use lab::{
    group_by_class_size, run_spatial, run_superposition, summarize, CapacityRecord, ClassSizeGroup, Experiment,
    Grouping, Role, SpatialConfig, SummaryRow, SuperpositionConfig,
};
pub use partition::{partitions, Partition};
pub use rng::SeedTree;
pub use spatial::{
    decode_peaks, heatmap, query_class, GridProbe, GridSpec, LabeledObject, LabeledScene, Peak, Readout,
    SimilarityHeatmap, SpatialAxes,
};
pub use stats::BoxStats;
