//! Joint distribution of Hertzsprung-pattern occurrences in involutions.
//!
//! The pipeline enumerates T-clusters (or takes their closed forms for the
//! known families), turns them into cluster generating functions, feeds
//! those into the continued fraction for involutions, and reads off the
//! distribution of fixed points and pattern occurrences. The [`oracle`]
//! module recomputes the same distributions by brute force.

pub mod error;
pub mod perm;
pub mod pattern;
pub mod series;
pub mod cluster;
pub mod closed_form;
pub mod theorem;
pub mod oracle;
pub mod specialize;
pub mod wilf;

pub use error::{Error, Result};
pub use pattern::{
    inflate, sibling, HPattern, MarkedPermutation, Occurrence, PatternCounts, PatternSet, Role,
    SibCounts, StatisticsVector,
};
pub use perm::{InvolutionStats, Permutation};
pub use series::{MultiSeries, RationalExpr, VarSet, EXACT};
pub use cluster::{Cluster, InvolutoryCluster, Layout};
pub use closed_form::{ClosedForms, Family};
pub use specialize::{Preset, Specialization};
pub use theorem::{CfDepth, DistributionTable, Source};
pub use wilf::WilfReport;
