//! Exact topology and index theory for SO(3) vortex moduli spaces over
//! orbifold Riemann surfaces, and the monopole classification on Seifert
//! fibered 3-manifolds built on top of it.
//!
//! All quantities are exact rationals; quantities proportional to π are
//! stored as their rational coefficient of π.

pub mod cli;
pub mod error;
pub mod index;
pub mod orbifold;
pub mod rational;
pub mod report;
pub mod seifert;
pub mod vortex;

pub use error::{Error, Result};
pub use index::{
    chi_line, chi_u2, h1_vanishes, serre_dual, serre_dual_isotropy, zeta_weight_sum_closed, zeta_weight_sum_numeric,
    ZetaSumResult,
};
pub use orbifold::{DivisorClass, DivisorPoint, LineBundleData, OrbifoldLineBundle, OrbifoldSurface};
pub use rational::Rational;
pub use report::{classification_report, ModuliReport, ReportRow, StratumRow};
pub use seifert::{
    s1_times_sigma_report, seifert_monopole_report, u2_critical_parameters, CriticalParameters, SeifertManifold,
    SeifertMonopoleReport,
};
pub use vortex::{
    degree_condition, enumerate_u2_bundles, AbelianStratum, FlatStatus, IsotropyPair, LineReduction, OrbifoldU2Bundle,
};
