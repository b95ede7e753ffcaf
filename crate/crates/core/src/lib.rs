//! Connectivity carcass for Steiner minimum cuts.
//!
//! Given an undirected multigraph `G` and a Steiner set `S`, the carcass
//! consists of
//!
//! * the **flesh** `ℱ`: the quotient of `G` by all S-mincuts, whose vertices
//!   are called *units*;
//! * the **skeleton** `ℋ`: a t-cactus whose minimal cuts are exactly the
//!   bipartitions of `S` realised by S-mincuts (the *valid cuts*);
//! * the **projection** `π`: a map from units to skeleton nodes or to proper
//!   paths of the skeleton.
//!
//! From these three pieces [`queries`] answers, without further max-flow
//! calls, questions such as "what does the strip of this minimal cut look
//! like" or "report an S-mincut separating these two vertices".
//!
//! ```
//! use carcass::{fixtures, graph::load_graph, carcass::Carcass};
//!
//! let c = Carcass::build(load_graph(fixtures::P3).unwrap(), Default::default()).unwrap();
//! assert_eq!(c.lambda(), 1);
//! assert_eq!(c.flesh.unit_count(), 3);
//! ```

pub mod carcass;
pub mod dot;
pub mod error;
pub mod fixtures;
pub mod graph;
pub mod maxflow;
pub mod oracle;
pub mod queries;
pub mod skeleton;
pub mod strip;
pub mod validcuts;

pub use error::{Error, ErrorClass, Result};
