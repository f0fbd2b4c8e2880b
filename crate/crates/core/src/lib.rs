//! Chow rings of Bergman fans over exact rationals, with checks of Poincaré
//! duality, Hard Lefschetz and Hodge–Riemann for strictly convex classes.
//!
//! The usual path is [`Matroid`] → [`bergman::bergman_fan`] →
//! [`chow::ChowSpace`] → [`weights::standard_degree`] → [`hodge::hr_check`].
//! [`theorem::verify_main_theorem`] runs the whole pipeline, optionally
//! through the deletion tower of [`tower::DeletionTower`].

pub mod bergman;
pub mod check;
pub mod cli;
pub mod chow;
pub mod convexity;
pub mod error;
pub mod fan;
pub mod feasibility;
pub mod hodge;
pub mod linalg;
pub mod maps;
pub mod matroid;
pub mod rational;
pub mod theorem;
pub mod tower;
pub mod weights;

pub use error::{Axiom, Error, Result};
pub use matroid::{ElementSet, Matroid};
