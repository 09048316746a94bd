//! Computing with matroids presented by biased graphs.
//!
//! The crate has three layers:
//!
//! * an explicit small-matroid engine ([`matroid`]) with minors, duality,
//!   circuit-hyperplane relaxation and free-basis tightening;
//! * biased graphs built from group-labelled multigraphs ([`graph`],
//!   [`label`], [`bias`]), their frame and lift matroids
//!   ([`bias_matroid`]), and the matching exact linear representations
//!   ([`linrep`]);
//! * generators and validators for two parametric families of such matroids
//!   ([`families`]) and certified exhaustive deciders for frame/lift
//!   representability on small instances ([`decide`]).

pub mod bias;
pub mod bias_matroid;
pub mod decide;
pub mod enumerate;
pub mod error;
pub mod families;
pub mod graph;
pub mod label;
pub mod label_io;
pub mod linrep;
pub mod matroid;
pub mod matroid_io;
pub mod oracle;
pub mod subset;

pub use bias::BiasedGraph;
pub use error::{Error, Result};
pub use graph::{Cycle, Multigraph};
pub use label::{GroupKind, GroupValue, LabelledGraph};
pub use matroid::ExplicitMatroid;
pub use subset::Subset;
