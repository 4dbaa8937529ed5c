//! Stable Auslander-Reiten quivers of Dynkin tree class, their mesh-category
//! Hom dimensions, Calabi-Yau dimensions and the cluster-tilting checks
//! needed to identify them with higher cluster categories.

pub mod calabi_yau;
pub mod cli;
pub mod cluster_tilting;
pub mod dot;
pub mod dynkin;
pub mod error;
pub mod mesh_hom;
pub mod parallel;
pub mod stable_quiver;
pub mod theorem_suite;
pub mod zquiver;

pub use dynkin::{CoxeterData, DynkinType, Family, Sign, TreeNode};
pub use error::{Result, StabError};
pub use parallel::Execution;
pub use stable_quiver::{AdmissibleGroup, AlgebraLabel, StableQuiver};
pub use zquiver::{ChartA, ChartD, QuiverAutomorphism, ZVertex};
